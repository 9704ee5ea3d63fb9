#include "sumlogic/sat.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "sumlogic/fragment.hpp"
#include "sumlogic/grounding.hpp"
#include "sumlogic/semantics.hpp"
#include "sumlogic/solver.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

Poly term_poly(const TermP& t, const IvSet& iv, const std::vector<StateDesc>& support) {
  switch (t->kind) {
    case Term::Kind::Prob: {
      if (t->cond->kind != Event::Kind::Top)
        throw SemanticsError("conditional probability reached the reduction; run the elimination first");
      Poly p;
      size_t hits = 0;
      for (size_t i = 0; i < support.size(); ++i)
        if (desc_entails(iv, support[i], t->ev)) {
          p = p + Poly::var((int)i);
          ++hits;
        }
      // A sum over the whole support is pinned to one by normalization.
      // Folding it keeps numeral-cleared comparisons linear, which is what
      // lets the elimination step refute them for every denominator bound.
      if (hits == support.size())
        return Poly::constant(Rational(1));
      return p;
    }
    case Term::Kind::Add:
      return term_poly(t->a, iv, support) + term_poly(t->b, iv, support);
    case Term::Kind::Mul:
      return term_poly(t->a, iv, support) * term_poly(t->b, iv, support);
    case Term::Kind::Neg:
      return -term_poly(t->a, iv, support);
    case Term::Kind::Sum:
      throw SemanticsError("sum reached the reduction; unfold first");
    case Term::Kind::Coef:
      throw SemanticsError("coefficient reached the reduction; unfold first");
  }
  throw SemanticsError("unreachable term kind");
}

BTree formula_tree(const FormulaP& f, const IvSet& iv, const std::vector<StateDesc>& support) {
  switch (f->kind) {
    case Formula::Kind::Geq:
      return BTree::atom(term_poly(f->t1, iv, support) - term_poly(f->t2, iv, support),
                         Rel::GE);
    case Formula::Kind::SymEq: {
      // Identity interpretation: a constant denotes its index, so constants
      // of one variable are pairwise distinct and the partition casing of
      // the general construction collapses to direct resolution
      // (partitions_rgs keeps the general partition structure for the proof
      // rules).
      if (!f->d1.is_const || !f->d2.is_const)
        throw SemanticsError("free range variable in a symbol equality; close the formula first");
      return f->d1.idx == f->d2.idx ? BTree::make_true() : BTree::make_false();
    }
    case Formula::Kind::Not:
      return BTree::negate(formula_tree(f->a, iv, support));
    case Formula::Kind::And: {
      std::vector<BTree> kids;
      kids.push_back(formula_tree(f->a, iv, support));
      kids.push_back(formula_tree(f->b, iv, support));
      return BTree::conj(std::move(kids));
    }
  }
  throw SemanticsError("unreachable formula kind");
}

bool covers_observational(const IvSet& iv, const std::vector<StateDesc>& support) {
  int obs = iv.index_of({});
  std::set<std::vector<int>> rows;
  for (const auto& d : support)
    rows.insert(d.rows[(size_t)obs]);
  size_t want = 1;
  for (size_t j = 0; j < iv.vars.size(); ++j)
    want *= (size_t)iv.n;
  return rows.size() == want;
}

std::string plural(size_t n, const char* what) {
  return std::to_string(n) + " " + what + (n == 1 ? "" : "s");
}

}  // namespace

ConstraintSystem reduce_to_constraints(const FormulaP& f, const IvSet& iv,
                                       const std::vector<StateDesc>& support,
                                       bool positive) {
  ConstraintSystem cs;
  cs.n = (int)support.size();
  cs.domain = ConstraintSystem::Domain::Simplex;
  cs.strict_positive = positive;
  cs.root = formula_tree(f, iv, support);
  // Normalization, stated explicitly so the analytic passes can use it (the
  // grid generates only normalized points anyway).
  Poly norm;
  for (int i = 0; i < cs.n; ++i)
    norm = norm + Poly::var(i);
  cs.side.push_back(BTree::atom(norm - Poly::constant(Rational(1)), Rel::EQ));
  if (positive) {
    // Positivity of the observational distribution: every complete
    // assignment carries positive mass. A support whose observational rows
    // miss an assignment yields a zero polynomial here, i.e. an
    // unsatisfiable side condition.
    int obs = iv.index_of({});
    size_t k = iv.vars.size();
    std::vector<int> w(k, 1);
    for (;;) {
      Poly cov;
      for (size_t i = 0; i < support.size(); ++i)
        if (support[i].rows[(size_t)obs] == w)
          cov = cov + Poly::var((int)i);
      cs.side.push_back(BTree::atom(cov, Rel::GT));
      size_t j = k;
      bool done = true;
      while (j > 0) {
        --j;
        if (w[j] < iv.n) {
          ++w[j];
          done = false;
          break;
        }
        w[j] = 1;
      }
      if (done || k == 0)
        break;
    }
  }
  return cs;
}

Scm scm_from_support(const Signature& sig, const IvSet& iv,
                     const std::vector<StateDesc>& support,
                     const std::vector<Rational>& pmf, const std::vector<int>& order) {
  if (support.empty() || support.size() != pmf.size())
    throw SemanticsError("support and pmf sizes disagree");
  Scm m;
  m.sig = sig;
  m.sig.set_bound(iv.n);
  int nv = sig.size();
  m.vars.resize((size_t)nv);
  for (VarId v = 0; v < nv; ++v) {
    auto& var = m.vars[(size_t)v];
    var.name = sig.name(v);
    for (int i = 1; i <= iv.n; ++i) {
      var.range.push_back(i);
      var.const_val.push_back(i);
    }
  }
  // Scoped variables in support order, the unscoped ones (constant
  // mechanisms) after them.
  std::set<VarId> scoped(iv.vars.begin(), iv.vars.end());
  for (int p : order)
    m.order.push_back(iv.vars[(size_t)p]);
  for (VarId v = 0; v < nv; ++v)
    if (!scoped.count(v))
      m.order.push_back(v);
  for (size_t u = 0; u < support.size(); ++u)
    m.exo_labels.push_back("d" + std::to_string(u + 1));
  m.exo_pmf = pmf;

  m.fn.resize((size_t)nv);
  for (VarId v = 0; v < nv; ++v) {
    m.fn[(size_t)v].assign(m.fn_size(v), 1);
    auto it = std::find(iv.vars.begin(), iv.vars.end(), v);
    if (it == iv.vars.end())
      continue;  // unscoped: constant 1
    size_t jpos = (size_t)(it - iv.vars.begin());
    std::vector<VarId> others;
    for (VarId w = 0; w < nv; ++w)
      if (w != v)
        others.push_back(w);
    std::vector<int> vals(others.size(), 1);
    std::vector<int> full((size_t)nv, 1);  // indexed by VarId, as fn_index reads it
    for (;;) {
      Intervention a;
      for (size_t i = 0; i < others.size(); ++i) {
        full[(size_t)others[i]] = vals[i];
        if (scoped.count(others[i]))
          a[others[i]] = vals[i];
      }
      int row = iv.index_of(a);
      for (size_t u = 0; u < support.size(); ++u)
        m.fn[(size_t)v][m.fn_index(v, full, (int)u)] =
            support[u].rows[(size_t)row][jpos];
      size_t i = others.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (vals[i] < iv.n) {
          ++vals[i];
          done = false;
          break;
        }
        vals[i] = 1;
      }
      if (done)
        break;
    }
  }
  return m;
}

namespace {

struct SearchFlags {
  bool truncated = false;
  bool solver_gave_up = false;
  bool reverify_noted = false;
  std::vector<std::string> notes;
};

SatVerdict run_sat(const Signature& sig, const FormulaP& closed,
                   const std::function<bool(const Scm&)>& verify,
                   const SatOptions& opt) {
  if (!opt.unchecked) {
    if (opt.n < 1 || opt.n > 3 || opt.max_denom < 1 || opt.max_denom > 16 ||
        opt.max_support < 1 || opt.max_support > 64)
      throw SemanticsError(
          "scale caps: n <= 3, denominator <= 16, support <= 64 (set unchecked to override)");
  }
  if (sig.size() == 0)
    throw SemanticsError("signature declares no variables");
  if (!opt.causal && classify_fragment(closed).causal)
    throw SemanticsError("intervention boxes require causal mode");

  GroundCtx ctx{opt.n};
  FormulaP prepped;
  try {
    prepped = unfold_sums(eliminate_conditionals(closed), ctx);
  } catch (const SyntaxError&) {
    // A conditional whose condition mentions the enclosing sum's bound
    // variable is only reducible once the sum is unfolded; the two orders
    // agree whenever both apply.
    prepped = eliminate_conditionals(unfold_sums(closed, ctx));
  }

  auto vset = vars_of(prepped);
  std::vector<VarId> vars(vset.begin(), vset.end());
  IvSet iv = make_ivset(vars, opt.n);
  SearchFlags flags;

  // Analytic screen over the full consistent description set: any model
  // induces a normalized assignment on it, so infeasibility here is sound
  // for every denominator bound.
  std::vector<StateDesc> full;
  bool have_full = true;
  try {
    full = enumerate_state_descs(iv, opt.max_descs);
  } catch (const SemanticsError& e) {
    have_full = false;
    flags.notes.push_back(std::string("analytic screen skipped: ") + e.what());
  }
  if (have_full) {
    ConstraintSystem cs = reduce_to_constraints(prepped, iv, full, opt.positive);
    bool infeasible = prune(cs) == Tri::False;
    std::string how = "range pruning";
    if (!infeasible) {
      if (auto lf = linear_feasible(cs); lf.has_value() && !*lf) {
        infeasible = true;
        how = "linear elimination";
      }
    }
    if (infeasible) {
      SatVerdict v;
      v.kind = SatVerdict::Kind::UnsatAtScale;
      v.analytic = true;
      v.detail = "analytically infeasible (" + how +
                 " over all " + plural(full.size(), "description") + ")";
      return v;
    }
  }

  size_t k = iv.vars.size();
  long profile_slots = 0;
  {
    long p = 1;
    for (size_t q = 0; q < k; ++q) {
      profile_slots += p;
      p *= iv.n;
    }
  }
  size_t tried = 0, solved = 0;
  if (profile_slots > 12) {
    flags.truncated = true;
    flags.notes.push_back("deterministic profile set too large at this scale");
  } else {
    std::vector<int> base_order((size_t)k);
    for (size_t i = 0; i < k; ++i)
      base_order[i] = (int)i;
    std::vector<std::vector<int>> orders;
    std::vector<int> perm = base_order;
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::set<std::vector<StateDesc>> seen;
    for (int s = 1; s <= opt.max_support && !flags.truncated; ++s) {
      for (const auto& ord : orders) {
        auto dets = deterministic_descs(iv, ord);
        std::sort(dets.begin(), dets.end());
        if ((int)dets.size() < s)
          continue;
        std::vector<int> comb((size_t)s);
        for (int i = 0; i < s; ++i)
          comb[(size_t)i] = i;
        for (;;) {
          std::vector<StateDesc> support;
          support.reserve((size_t)s);
          for (int ci : comb)
            support.push_back(dets[(size_t)ci]);
          if (seen.insert(support).second) {
            if (++tried > opt.max_candidates) {
              flags.truncated = true;
              flags.notes.push_back("support budget exhausted");
              break;
            }
            if (check_support_compatibility(iv, support, ord) &&
                (!opt.positive || covers_observational(iv, support))) {
              ConstraintSystem cs = reduce_to_constraints(prepped, iv, support, opt.positive);
              try {
                ++solved;
                // Semantic re-verification runs inside the grid scan: a point
                // satisfying only the transformed system (say via a condition
                // of mass zero) is skipped and the scan goes on.
                std::optional<Scm> found;
                auto accept = [&](const std::vector<Rational>& x) {
                  Scm m = scm_from_support(sig, iv, support, x, ord);
                  if (validate(m).ok && verify(m) &&
                      (!opt.positive || check_positivity(m).positive)) {
                    found = std::move(m);
                    return true;
                  }
                  if (!flags.reverify_noted) {
                    flags.reverify_noted = true;
                    flags.notes.push_back(
                        "a grid witness failed semantic re-verification; continuing");
                  }
                  return false;
                };
                SolveOutcome res = solve_constraints_small(cs, opt.max_denom, accept);
                if (res.kind == SolveOutcome::Kind::Witness) {
                  SatVerdict v;
                  v.kind = SatVerdict::Kind::Sat;
                  v.witness = std::move(*found);
                  v.detail = "support size " + std::to_string(s) + ", " +
                             plural(tried, "candidate") + " tried";
                  return v;
                }
              } catch (const SolveError& e) {
                if (!flags.solver_gave_up)
                  flags.notes.push_back(std::string("solver: ") + e.what());
                flags.solver_gave_up = true;
              }
            }
          }
          // next combination
          int i = s - 1;
          while (i >= 0 && comb[(size_t)i] == (int)dets.size() - s + i)
            --i;
          if (i < 0)
            break;
          ++comb[(size_t)i];
          for (int j = i + 1; j < s; ++j)
            comb[(size_t)j] = comb[(size_t)j - 1] + 1;
        }
        if (flags.truncated)
          break;
      }
    }
  }

  SatVerdict v;
  std::string progress = plural(tried, "support") + " tried, " +
                         plural(solved, "grid") + " searched";
  if (flags.truncated || flags.solver_gave_up) {
    v.kind = SatVerdict::Kind::Unknown;
    v.detail = "inconclusive: " + progress;
  } else {
    v.kind = SatVerdict::Kind::UnsatAtScale;
    v.detail = "exhausted " + progress + " at n=" + std::to_string(opt.n) +
               ", denominators <= " + std::to_string(opt.max_denom) +
               ", supports <= " + std::to_string(opt.max_support);
  }
  for (const auto& note : flags.notes) {
    v.detail += "; ";
    v.detail += note;
  }
  return v;
}

FormulaP closed_sequent_body(const Sequent& s, const GroundCtx& ctx, bool negated) {
  // conj(closed premises) and not(closed conclusion): satisfied by exactly
  // the models that do not satisfy the sequent. `negated` wraps the whole
  // thing, giving the models that do.
  FormulaP body = fm_not(universal_closure(s.conclusion, ctx));
  for (auto it = s.premises.rbegin(); it != s.premises.rend(); ++it)
    body = fm_and(universal_closure(*it, ctx), body);
  return negated ? fm_not(body) : body;
}

}  // namespace

SatVerdict sat_bounded(const Signature& sig, const Sequent& s, const SatOptions& opt) {
  GroundCtx ctx{opt.n};
  FormulaP goal = closed_sequent_body(s, ctx, true);
  return run_sat(sig, goal,
                 [&](const Scm& m) { return satisfies_sequent(m, s).satisfied; }, opt);
}

SatVerdict sat_formula_bounded(const Signature& sig, const FormulaP& f,
                               const SatOptions& opt) {
  GroundCtx ctx{opt.n};
  FormulaP goal = universal_closure(f, ctx);
  return run_sat(sig, goal, [&](const Scm& m) { return valid_in_model(m, f).valid; },
                 opt);
}

SatVerdict find_countermodel_bounded(const Signature& sig, const Sequent& s,
                                     const SatOptions& opt) {
  GroundCtx ctx{opt.n};
  FormulaP goal = closed_sequent_body(s, ctx, false);
  return run_sat(sig, goal,
                 [&](const Scm& m) {
                   auto rep = satisfies_sequent(m, s);
                   return !rep.satisfied;
                 },
                 opt);
}

BruteVerdict brute_force_sat(const Signature& sig, const Sequent& s,
                             const SatOptions& opt) {
  auto vset = vars_of(s);
  std::vector<VarId> vars(vset.begin(), vset.end());
  size_t k = vars.size();
  if (k > 2 || opt.n > 2 || opt.n < 1)
    throw SemanticsError("brute force caps: at most 2 variables and n <= 2");
  const int max_outcomes = 4;
  int nv = sig.size();
  if (nv == 0)
    throw SemanticsError("signature declares no variables");

  // Response-function profiles per variable order: the variable at rank p is
  // a total function of the values at ranks 0..p-1.
  std::vector<size_t> tbl_off(k + 1, 0);
  {
    size_t sz = 1;
    for (size_t p = 0; p < k; ++p) {
      tbl_off[p + 1] = tbl_off[p] + sz;
      sz *= (size_t)opt.n;
    }
  }
  size_t slots = tbl_off[k];
  std::vector<std::vector<int>> profiles;
  {
    std::vector<int> cur(slots, 1);
    for (;;) {
      profiles.push_back(cur);
      size_t i = slots;
      bool done = true;
      while (i > 0) {
        --i;
        if (cur[i] < opt.n) {
          ++cur[i];
          done = false;
          break;
        }
        cur[i] = 1;
      }
      if (done || slots == 0)
        break;
    }
  }

  std::vector<int> base_order((size_t)k);
  for (size_t i = 0; i < k; ++i)
    base_order[i] = (int)i;
  std::vector<std::vector<int>> orders;
  {
    std::vector<int> perm = base_order;
    do {
      orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::set<VarId> scoped(vars.begin(), vars.end());

  auto build = [&](const std::vector<int>& ord, const std::vector<size_t>& chosen,
                   const std::vector<Rational>& pmf) {
    Scm m;
    m.sig = sig;
    m.sig.set_bound(opt.n);
    m.vars.resize((size_t)nv);
    for (VarId v = 0; v < nv; ++v) {
      auto& var = m.vars[(size_t)v];
      var.name = sig.name(v);
      for (int i = 1; i <= opt.n; ++i) {
        var.range.push_back(i);
        var.const_val.push_back(i);
      }
    }
    for (int p : ord)
      m.order.push_back(vars[(size_t)p]);
    for (VarId v = 0; v < nv; ++v)
      if (!scoped.count(v))
        m.order.push_back(v);
    for (size_t u = 0; u < chosen.size(); ++u)
      m.exo_labels.push_back("u" + std::to_string(u + 1));
    m.exo_pmf = pmf;
    m.fn.resize((size_t)nv);
    for (VarId v = 0; v < nv; ++v) {
      m.fn[(size_t)v].assign(m.fn_size(v), 1);
      int rank = -1;
      for (size_t p = 0; p < k; ++p)
        if (vars[(size_t)ord[p]] == v)
          rank = (int)p;
      if (rank < 0)
        continue;
      std::vector<VarId> others;
      for (VarId w = 0; w < nv; ++w)
        if (w != v)
          others.push_back(w);
      std::vector<int> vals(others.size(), 1);
      std::vector<int> full((size_t)nv, 1);  // indexed by VarId, as fn_index reads it
      for (;;) {
        for (size_t i = 0; i < others.size(); ++i)
          full[(size_t)others[i]] = vals[i];
        for (size_t u = 0; u < chosen.size(); ++u) {
          // Flat index over the values of the rank-predecessors, read off
          // this mechanism's arguments.
          size_t flat = 0;
          for (int q = 0; q < rank; ++q) {
            VarId wv = vars[(size_t)ord[(size_t)q]];
            int val = 0;
            for (size_t i = 0; i < others.size(); ++i)
              if (others[i] == wv)
                val = vals[i];
            flat = flat * (size_t)opt.n + (size_t)(val - 1);
          }
          m.fn[(size_t)v][m.fn_index(v, full, (int)u)] =
              profiles[chosen[u]][tbl_off[(size_t)rank] + flat];
        }
        size_t i = others.size();
        bool done = true;
        while (i > 0) {
          --i;
          if (vals[i] < opt.n) {
            ++vals[i];
            done = false;
            break;
          }
          vals[i] = 1;
        }
        if (done)
          break;
      }
    }
    return m;
  };

  // Positive pmfs with a common denominator <= max_denom, coarser first.
  auto pmfs_of_size = [&](size_t m) {
    std::vector<std::vector<Rational>> out;
    for (int d = 1; d <= opt.max_denom; ++d) {
      std::vector<long> a(m, 1);
      std::function<void(size_t, long)> gen = [&](size_t i, long rest) {
        if (i == m - 1) {
          if (rest < 1)
            return;
          a[i] = rest;
          std::vector<Rational> p;
          p.reserve(m);
          for (long ai : a)
            p.push_back(Rational(ai, d));
          out.push_back(std::move(p));
          return;
        }
        for (long v = 1; v + (long)(m - 1 - i) <= rest; ++v) {
          a[i] = v;
          gen(i + 1, rest - v);
        }
      };
      if ((long)m <= d)
        gen(0, d);
    }
    return out;
  };

  for (const auto& ord : orders) {
    size_t np = profiles.size();
    for (size_t sz = 1; sz <= std::min((size_t)max_outcomes, np); ++sz) {
      std::vector<size_t> comb(sz);
      for (size_t i = 0; i < sz; ++i)
        comb[i] = i;
      auto pmfs = pmfs_of_size(sz);
      for (;;) {
        for (const auto& pmf : pmfs) {
          Scm m = build(ord, comb, pmf);
          if (validate(m).ok && satisfies_sequent(m, s).satisfied)
            return {true, std::move(m)};
        }
        size_t i = sz;
        bool advanced = false;
        while (i > 0) {
          --i;
          if (comb[i] != np - sz + i) {
            ++comb[i];
            for (size_t j = i + 1; j < sz; ++j)
              comb[j] = comb[j - 1] + 1;
            advanced = true;
            break;
          }
        }
        if (!advanced)
          break;
      }
    }
  }
  return {false, std::nullopt};
}

}  // namespace sumlogic
