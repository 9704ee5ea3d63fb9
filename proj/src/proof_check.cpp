#include <algorithm>

#include "sumlogic/fragment.hpp"
#include "sumlogic/parallel.hpp"
#include "sumlogic/parser.hpp"
#include "sumlogic/proofs.hpp"
#include "sumlogic/shapes.hpp"
#include "sumlogic/state_desc.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

// ---- conclusion shapes of the infinitary rules

struct ConvShape {
  FormulaP phi;
  TermP t;
};

std::optional<ConvShape> match_conv(const FormulaP& f) {
  auto imp = match_imp(f);
  if (!imp) return {};
  const FormulaP& c = imp->b;
  if (c->kind != Formula::Kind::Geq || !is_zero_numeral(c->t1)) return {};
  return ConvShape{imp->a, c->t2};
}

// phi -> t <= 1/n, cleared to n * t <= 1 with the n = 1 factor elided.
FormulaP conv_premise(const ConvShape& s, long n) {
  return fm_imp(s.phi, fm_geq(tm_num(1), mul_elide(tm_num(n), s.t)));
}

struct FinShape {
  FormulaP phi;
  TermP sum;
};

std::optional<FinShape> match_fin(const FormulaP& f) {
  auto imp = match_imp(f);
  if (!imp) return {};
  auto gt = match_gt(imp->b);  // sum < 0 is the same tree as 0 > sum
  if (!gt || !is_zero_numeral(gt->first)) return {};
  const TermP& sum = gt->second;
  if (sum->kind != Term::Kind::Sum) return {};
  if (!equal(sum->a, tm_prob(ev_top()))) return {};
  return FinShape{imp->a, sum};
}

FormulaP fin_premise(const FinShape& s, long n) {
  return fm_imp(s.phi, fm_geq(s.sum, tm_num(n)));
}

struct UnityShape {
  FormulaP phi;
  std::vector<VarId> vars;
  long a = 1, b = 1;  // threshold a/b, cleared when b > 1
};

std::optional<UnityShape> match_unity(const FormulaP& f) {
  auto imp = match_imp(f);
  if (!imp) return {};
  auto gt = match_gt(imp->b);
  if (!gt) return {};
  UnityShape s;
  s.phi = imp->a;
  auto a = as_numeral(gt->second);
  if (!a || *a < 1) return {};
  s.a = *a;
  TermP body = gt->first;
  if (body->kind == Term::Kind::Mul) {
    auto b = as_numeral(body->a);
    if (!b || *b < 2) return {};
    s.b = *b;
    body = body->b;
  }
  if (body->kind != Term::Kind::Add || !is_one_numeral(body->a)) return {};
  if (body->b->kind != Term::Kind::Neg) return {};
  const TermP& p = body->b->a;
  if (p->kind != Term::Kind::Prob || p->cond->kind != Event::Kind::Top)
    return {};
  std::vector<EventP> parts;
  flatten_and_event(p->ev, parts);
  for (const EventP& e : parts) {
    auto orp = match_or_event(e);
    if (!orp) return {};
    const EventP& l = orp->first;
    const EventP& r = orp->second;
    if (l->kind != Event::Kind::Atom || !l->val.is_const || l->val.idx != 1)
      return {};
    if (r->kind != Event::Kind::Not || !equal(r->a, l)) return {};
    if (!s.vars.empty() && l->var <= s.vars.back()) return {};
    s.vars.push_back(l->var);
  }
  if (s.vars.empty()) return {};
  return s;
}

FormulaP unity_premise(const UnityShape& s, long n) {
  EventP ev;
  for (VarId x : s.vars) {
    EventP dis;
    for (long i = 1; i <= n; ++i) {
      EventP at = ev_atom(x, const_sym(x, (int)i));
      dis = dis ? ev_or(dis, at) : at;
    }
    ev = ev ? ev_and(ev, dis) : dis;
  }
  TermP body = tm_add(tm_num(1), tm_neg(tm_prob(ev)));
  if (s.b > 1) body = tm_mul(tm_num(s.b), body);
  return fm_imp(s.phi, fm_gt(body, tm_num(s.a)));
}

struct SumUpperShape {
  FormulaP phi;
  TermP tp;  // upper bound t'
  DSym x;
  TermP t;
};

std::optional<SumUpperShape> match_sum_upper(const FormulaP& f) {
  auto imp = match_imp(f);
  if (!imp) return {};
  const FormulaP& c = imp->b;
  if (c->kind != Formula::Kind::Geq || c->t2->kind != Term::Kind::Sum)
    return {};
  return SumUpperShape{imp->a, c->t1, c->t2->bound, c->t2->a};
}

// One premise per partition of c_1..c_m: the equality casing guards the
// block-sum comparison. Pair literals run in lexicographic (i, j) order;
// blocks in first-appearance order; members ascending.
FormulaP sum_upper_premise(const SumUpperShape& s, long m,
                           const std::vector<int>& part) {
  std::vector<FormulaP> lits;
  for (int i = 0; i < (int)m; ++i)
    for (int j = i + 1; j < (int)m; ++j) {
      FormulaP eq =
          fm_symeq(const_sym(s.x.var, i + 1), const_sym(s.x.var, j + 1));
      lits.push_back(part[i] == part[j] ? eq : fm_not(eq));
    }
  int nblocks = *std::max_element(part.begin(), part.end()) + 1;
  EventP pat = ev_atom(s.x.var, s.x);
  TermP sum;
  for (int b = 0; b < nblocks; ++b) {
    EventP block;
    for (int i = 0; i < (int)m; ++i) {
      if (part[i] != b) continue;
      EventP at = ev_atom(s.x.var, const_sym(s.x.var, i + 1));
      block = block ? ev_or(block, at) : at;
    }
    TermP piece = substitute_event(s.t, pat, block);
    if (has_free(piece, s.x))
      throw ProofError(
          "the sum body uses its bound variable outside replaceable atoms");
    sum = sum ? tm_add(sum, piece) : piece;
  }
  FormulaP inner = fm_geq(s.tp, sum);
  if (lits.empty()) return fm_imp(s.phi, inner);
  return fm_imp(s.phi, fm_imp(fm_and_all(lits), inner));
}

long cap_m(const System& sys, long n) {
  if (system_bounded(sys.id) && sys.n >= 1) return std::min<long>(n, sys.n);
  return n;
}

constexpr int kMaxPartitionBase = 12;

}  // namespace

std::optional<FormulaP> rule_premise(RuleId rule, const FormulaP& f, long k,
                                     const System& sys,
                                     std::optional<DSym> var) {
  if (k < 1) return {};
  switch (rule) {
    case RuleId::Conv: {
      auto s = match_conv(f);
      if (!s) throw ProofError("conclusion does not match the Conv shape");
      return conv_premise(*s, k);
    }
    case RuleId::Fin: {
      auto s = match_fin(f);
      if (!s) throw ProofError("conclusion does not match the Fin shape");
      return fin_premise(*s, k);
    }
    case RuleId::Unity: {
      auto s = match_unity(f);
      if (!s) throw ProofError("conclusion does not match the Unity shape");
      if (system_bounded(sys.id) && k > sys.n) return {};
      return unity_premise(*s, cap_m(sys, k));
    }
    case RuleId::SumUpper: {
      auto s = match_sum_upper(f);
      if (!s) throw ProofError("conclusion does not match the SumUpper shape");
      long n = 1, left = k;
      while (true) {
        if (system_bounded(sys.id) && n > sys.n) return {};
        long m = cap_m(sys, n);
        if (m > kMaxPartitionBase)
          throw ProofError("premise family too large to enumerate");
        auto parts = partitions_rgs((int)m);
        if (left <= (long)parts.size())
          return sum_upper_premise(*s, m, parts[left - 1]);
        left -= (long)parts.size();
        ++n;
      }
    }
    case RuleId::FreeIntro: {
      auto fv = free_range_vars(f);
      DSym v;
      if (var) {
        v = *var;
      } else if (!fv.empty()) {
        v = *fv.begin();
      }
      if (fv.empty() || !fv.count(v))
        return k == 1 ? std::optional<FormulaP>(f) : std::nullopt;
      if (system_bounded(sys.id) && k > sys.n) return {};
      return substitute_range_var(f, v, const_sym(v.var, (int)k));
    }
    case RuleId::MP:
    case RuleId::FreeElim:
      throw ProofError(rule_name(rule) +
                       " premises are not determined by the conclusion");
  }
  return {};
}

std::optional<long> rule_family_size(RuleId rule, const FormulaP& f,
                                     const System& sys,
                                     std::optional<DSym> var) {
  bool bd = system_bounded(sys.id) && sys.n >= 1;
  switch (rule) {
    case RuleId::Conv:
    case RuleId::Fin:
      return {};
    case RuleId::Unity:
      if (!match_unity(f))
        throw ProofError("conclusion does not match the Unity shape");
      if (!bd) return {};
      return (long)sys.n;
    case RuleId::SumUpper: {
      if (!match_sum_upper(f))
        throw ProofError("conclusion does not match the SumUpper shape");
      if (!bd) return {};
      long total = 0;
      for (int n = 1; n <= sys.n; ++n)
        total += (long)partitions_rgs(n).size();
      return total;
    }
    case RuleId::FreeIntro: {
      auto fv = free_range_vars(f);
      if (fv.empty() || (var && !fv.count(*var))) return 1;
      return bd ? std::optional<long>((long)sys.n) : std::nullopt;
    }
    default:
      throw ProofError("not an infinitary rule");
  }
}

namespace {

struct NodeOutcome {
  bool ok = true;
  std::string reason;
  std::set<RuleId> trunc;
};

NodeOutcome fail_node(std::string r) { return {false, std::move(r), {}}; }

bool axiom_available(const SchemaId& schema, const System& sys,
                     std::string* why) {
  switch (schema.id) {
    case AxiomId::FinN:
      if (sys.id != SystemId::AxNClosed && sys.id != SystemId::AxN) {
        *why = "axiom Fin_N is not part of this system";
        return false;
      }
      return true;
    case AxiomId::DistinctN:
    case AxiomId::SumEqualsN: {
      bool on = schema.id == AxiomId::DistinctN ? sys.extra_distinct
                                                : sys.extra_sumeq;
      if (!on) {
        *why = "axiom " + axiom_name(schema.id) +
               " is not a declared extra of this system";
        return false;
      }
      if (sys.n < 1) {
        *why = "axiom " + axiom_name(schema.id) + " needs a bound n >= 1";
        return false;
      }
      return true;
    }
    default:
      return true;
  }
}

bool rule_available(RuleId r, const System& sys, std::string* why) {
  switch (r) {
    case RuleId::Fin:
      if (sys.id != SystemId::AxFinClosed && sys.id != SystemId::AxFin) {
        *why = "rule Fin requires a _fin system";
        return false;
      }
      return true;
    case RuleId::FreeElim:
    case RuleId::FreeIntro:
      if (!system_open(sys.id)) {
        *why = "rule " + rule_name(r) + " requires an open system";
        return false;
      }
      return true;
    default:
      return true;
  }
}

NodeOutcome check_family(const Proof& p, int idx, const System& sys,
                         const std::vector<FormulaP>& hyps,
                         const CheckOptions& opt, std::optional<DSym> var) {
  const ProofNode& node = p.nodes[idx];
  RuleId rule = node.rule;
  const FormulaP& f = node.conclusion;
  NodeOutcome out;
  try {
    std::optional<long> fam = rule_family_size(rule, f, sys, var);
    long limit = fam ? *fam : opt.n_max;
    if (node.generated) {
      if (!node.premises.empty())
        return fail_node("generated nodes take no explicit premises");
      if (!opt.gen) return fail_node("no premise generator supplied");
      for (long k = 1; k <= limit; ++k) {
        auto need = rule_premise(rule, f, k, sys, var);
        if (!need) break;
        auto sub = opt.gen(idx, k);
        if (!sub)
          return fail_node("the generator returned no proof for premise " +
                           std::to_string(k));
        if (sub->nodes.empty() ||
            !equal(sub->nodes.back().conclusion, *need))
          return fail_node(
              "generator sub-proof proves the wrong formula for premise " +
              std::to_string(k));
        ProofVerdict sv = check_proof(*sub, sys, hyps, opt);
        if (!sv.ok())
          return fail_node("generator sub-proof for premise " +
                           std::to_string(k) + " rejected: " + sv.reason);
        out.trunc.insert(sv.truncated.begin(), sv.truncated.end());
      }
      if (!fam) out.trunc.insert(rule);
      return out;
    }
    // explicit premises: each family formula up to the limit must be covered
    // and every premise must belong to the family
    std::vector<FormulaP> required;
    std::vector<long> req_k;
    for (long k = 1; k <= limit; ++k) {
      auto need = rule_premise(rule, f, k, sys, var);
      if (!need) break;
      bool dup = false;
      for (const FormulaP& r : required)
        if (equal(r, *need)) {
          dup = true;
          break;
        }
      if (!dup) {
        required.push_back(*need);
        req_k.push_back(k);
      }
    }
    for (size_t r = 0; r < required.size(); ++r) {
      bool found = false;
      for (int j : node.premises)
        if (equal(p.nodes[j].conclusion, required[r])) {
          found = true;
          break;
        }
      if (!found)
        return fail_node("missing the premise for index " +
                         std::to_string(req_k[r]));
    }
    for (int j : node.premises) {
      bool member = false;
      for (const FormulaP& r : required)
        if (equal(p.nodes[j].conclusion, r)) {
          member = true;
          break;
        }
      if (!member)
        return fail_node(
            "a premise does not belong to the rule's premise family");
    }
    if (!fam) out.trunc.insert(rule);
    return out;
  } catch (const ProofError& e) {
    return fail_node(e.what());
  }
}

NodeOutcome check_node(const Proof& p, int i, const System& sys,
                       const std::vector<FormulaP>& hyps,
                       const CheckOptions& opt) {
  const ProofNode& node = p.nodes[i];
  if (!node.conclusion) return fail_node("node has no conclusion");
  switch (node.kind) {
    case ProofNode::Kind::Hyp:
      if (node.hyp < 0 || node.hyp >= (int)hyps.size())
        return fail_node("hypothesis index out of range");
      if (!equal(node.conclusion, hyps[node.hyp]))
        return fail_node("conclusion differs from the hypothesis");
      return {};
    case ProofNode::Kind::Axiom: {
      std::string why;
      if (!axiom_available(node.axiom, sys, &why)) return fail_node(why);
      std::optional<int> bound;
      if (sys.n >= 1) bound = sys.n;
      AxiomCheck ac =
          check_axiom_instance_bounded(node.conclusion, node.axiom, bound);
      if (!ac.accepted) {
        std::string name = axiom_name(node.axiom.id);
        if (node.axiom.id == AxiomId::PolyBase)
          name += " " + poly_tag_name(node.axiom.tag);
        return fail_node("axiom " + name + ": " + ac.reason);
      }
      return {};
    }
    case ProofNode::Kind::Rule: {
      std::string why;
      if (!rule_available(node.rule, sys, &why)) return fail_node(why);
      switch (node.rule) {
        case RuleId::MP: {
          if (node.generated)
            return fail_node("finitary rules take explicit premises");
          if (node.premises.size() != 2)
            return fail_node("MP takes exactly two premises");
          const FormulaP& a = p.nodes[node.premises[0]].conclusion;
          const FormulaP& b = p.nodes[node.premises[1]].conclusion;
          if (equal(a, fm_imp(b, node.conclusion)) ||
              equal(b, fm_imp(a, node.conclusion)))
            return {};
          return fail_node("modus ponens premises do not match the conclusion");
        }
        case RuleId::FreeElim: {
          if (node.generated)
            return fail_node("finitary rules take explicit premises");
          if (node.premises.size() != 1)
            return fail_node("FreeElim takes exactly one premise");
          const FormulaP& prem = p.nodes[node.premises[0]].conclusion;
          if (equal(prem, node.conclusion)) return {};
          for (const DSym& v : free_range_vars(prem))
            for (const DSym& c : consts_in(node.conclusion))
              if (c.var == v.var &&
                  equal(substitute_range_var(prem, v, c), node.conclusion))
                return {};
          return fail_node("not a constant instance of the premise");
        }
        case RuleId::FreeIntro: {
          auto fv = free_range_vars(node.conclusion);
          if (fv.empty() || node.generated) {
            std::optional<DSym> v;
            if (!fv.empty()) v = *fv.begin();
            return check_family(p, i, sys, hyps, opt, v);
          }
          NodeOutcome last;
          for (const DSym& v : fv) {
            last = check_family(p, i, sys, hyps, opt, v);
            if (last.ok) return last;
          }
          return last;
        }
        default:
          return check_family(p, i, sys, hyps, opt, std::nullopt);
      }
    }
  }
  return fail_node("unknown node kind");
}

}  // namespace

ProofVerdict check_proof(const Proof& p, const System& sys,
                         const std::vector<FormulaP>& hyps,
                         const CheckOptions& opt) {
  ProofVerdict v;
  if (p.nodes.empty()) {
    v.reason = "empty proof";
    return v;
  }
  for (int i = 0; i < (int)p.nodes.size(); ++i)
    for (int j : p.nodes[i].premises) {
      if (j < 0 || j >= (int)p.nodes.size()) {
        v.node = i;
        v.reason = "premise index out of range";
        return v;
      }
      if (j >= i) {
        v.node = i;
        v.reason = "premises must precede their node";
        return v;
      }
    }
  if (system_bounded(sys.id)) {
    if (sys.n < 1) {
      v.reason = "bounded system without a bound";
      return v;
    }
    for (int i = 0; i < (int)p.nodes.size(); ++i)
      if (p.nodes[i].conclusion &&
          classify_fragment(p.nodes[i].conclusion).max_const_index > sys.n) {
        v.node = i;
        v.reason = "constant index exceeds the signature bound";
        return v;
      }
  }
  size_t n = p.nodes.size();
  std::vector<NodeOutcome> out(n);
  bool has_gen = false;
  for (const auto& nd : p.nodes) has_gen |= nd.generated;
  auto run = [&](size_t i) { out[i] = check_node(p, (int)i, sys, hyps, opt); };
  if (opt.jobs > 1 && !has_gen) {
    parallel_for(n, opt.jobs, run);
  } else {
    for (size_t i = 0; i < n; ++i) run(i);
  }
  for (size_t i = 0; i < n; ++i)
    if (!out[i].ok) {
      v.node = (int)i;
      v.reason = out[i].reason;
      return v;
    }
  for (const auto& o : out)
    v.truncated.insert(o.trunc.begin(), o.trunc.end());
  v.status = v.truncated.empty() ? ProofStatus::Verified
                                 : ProofStatus::VerifiedBounded;
  v.node = -1;
  return v;
}

}  // namespace sumlogic
