#include "sumlogic/constraints.hpp"

#include <algorithm>

namespace sumlogic {

BTree BTree::atom(Poly p, Rel r) {
  BTree b;
  b.kind = Kind::Atom;
  b.poly = std::move(p);
  b.rel = r;
  return b;
}

BTree BTree::negate(BTree b) {
  if (b.kind == Kind::True)
    return make_false();
  if (b.kind == Kind::False)
    return make_true();
  if (b.kind == Kind::Not)
    return std::move(b.kids[0]);
  BTree n;
  n.kind = Kind::Not;
  n.kids.push_back(std::move(b));
  return n;
}

BTree BTree::conj(std::vector<BTree> kids) {
  std::vector<BTree> keep;
  for (auto& k : kids) {
    if (k.kind == Kind::False)
      return make_false();
    if (k.kind != Kind::True)
      keep.push_back(std::move(k));
  }
  if (keep.empty())
    return make_true();
  if (keep.size() == 1)
    return std::move(keep[0]);
  BTree b;
  b.kind = Kind::And;
  b.kids = std::move(keep);
  return b;
}

BTree BTree::disj(std::vector<BTree> kids) {
  std::vector<BTree> keep;
  for (auto& k : kids) {
    if (k.kind == Kind::True)
      return make_true();
    if (k.kind != Kind::False)
      keep.push_back(std::move(k));
  }
  if (keep.empty())
    return make_false();
  if (keep.size() == 1)
    return std::move(keep[0]);
  BTree b;
  b.kind = Kind::Or;
  b.kids = std::move(keep);
  return b;
}

namespace {

bool atom_holds(const Rational& v, Rel rel) {
  switch (rel) {
    case Rel::GE:
      return v.sign() >= 0;
    case Rel::GT:
      return v.sign() > 0;
    case Rel::EQ:
      return v.is_zero();
  }
  return false;
}

bool tree_holds(const BTree& b, const std::vector<Rational>& x) {
  switch (b.kind) {
    case BTree::Kind::True:
      return true;
    case BTree::Kind::False:
      return false;
    case BTree::Kind::Atom:
      return atom_holds(b.poly.eval(x), b.rel);
    case BTree::Kind::Not:
      return !tree_holds(b.kids[0], x);
    case BTree::Kind::And:
      for (const auto& k : b.kids)
        if (!tree_holds(k, x))
          return false;
      return true;
    case BTree::Kind::Or:
      for (const auto& k : b.kids)
        if (tree_holds(k, x))
          return true;
      return false;
  }
  return false;
}

Tri tri_not(Tri t) {
  if (t == Tri::True)
    return Tri::False;
  if (t == Tri::False)
    return Tri::True;
  return Tri::Unknown;
}

Tri tri_atom(const Interval& r, Rel rel) {
  switch (rel) {
    case Rel::GE:
      if (r.lo.sign() >= 0)
        return Tri::True;
      if (r.hi.sign() < 0)
        return Tri::False;
      return Tri::Unknown;
    case Rel::GT:
      if (r.lo.sign() > 0)
        return Tri::True;
      if (r.hi.sign() <= 0)
        return Tri::False;
      return Tri::Unknown;
    case Rel::EQ:
      if (r.lo.is_zero() && r.hi.is_zero())
        return Tri::True;
      if (r.lo.sign() > 0 || r.hi.sign() < 0)
        return Tri::False;
      return Tri::Unknown;
  }
  return Tri::Unknown;
}

Tri tri_tree(const BTree& b, const ConstraintSystem& cs) {
  switch (b.kind) {
    case BTree::Kind::True:
      return Tri::True;
    case BTree::Kind::False:
      return Tri::False;
    case BTree::Kind::Atom: {
      Interval r;
      if (cs.domain == ConstraintSystem::Domain::Simplex) {
        r = b.poly.bound_simplex(cs.n);
      } else {
        std::vector<Interval> box(static_cast<size_t>(cs.n),
                                  Interval{cs.box_lo, cs.box_hi});
        r = b.poly.bound_box(box);
      }
      return tri_atom(r, b.rel);
    }
    case BTree::Kind::Not:
      return tri_not(tri_tree(b.kids[0], cs));
    case BTree::Kind::And: {
      Tri acc = Tri::True;
      for (const auto& k : b.kids) {
        Tri t = tri_tree(k, cs);
        if (t == Tri::False)
          return Tri::False;
        if (t == Tri::Unknown)
          acc = Tri::Unknown;
      }
      return acc;
    }
    case BTree::Kind::Or: {
      Tri acc = Tri::False;
      for (const auto& k : b.kids) {
        Tri t = tri_tree(k, cs);
        if (t == Tri::True)
          return Tri::True;
        if (t == Tri::Unknown)
          acc = Tri::Unknown;
      }
      return acc;
    }
  }
  return Tri::Unknown;
}

// --- Fourier-Motzkin -------------------------------------------------------

// c . x + c0  rel  0, dense coefficients.
struct LinAtom {
  std::vector<Rational> c;
  Rational c0;
  Rel rel;
};

constexpr size_t kFmMaxAtoms = 4096;
constexpr int kFmMaxVars = 64;

// A branch is a conjunction of linear atoms; a tree expands to a disjunction
// of branches.
using Branch = std::vector<LinAtom>;

constexpr size_t kFmMaxBranches = 64;

std::optional<LinAtom> lin_atom(const Poly& p, Rel rel, int n, bool flip) {
  if (!p.is_linear())
    return std::nullopt;
  LinAtom a;
  a.c.assign(static_cast<size_t>(n), Rational(0));
  for (int i = 0; i < n; ++i)
    a.c[static_cast<size_t>(i)] = p.coef_of(i);
  a.c0 = p.constant_term();
  if (flip) {
    // not(p >= 0) is -p > 0; not(p > 0) is -p >= 0.
    for (auto& ci : a.c)
      ci = -ci;
    a.c0 = -a.c0;
    a.rel = rel == Rel::GE ? Rel::GT : Rel::GE;
  } else {
    a.rel = rel;
  }
  return a;
}

bool cross_branches(std::vector<Branch>* acc, const std::vector<Branch>& more) {
  std::vector<Branch> next;
  for (const auto& a : *acc)
    for (const auto& b : more) {
      if (next.size() >= kFmMaxBranches)
        return false;
      Branch merged = a;
      merged.insert(merged.end(), b.begin(), b.end());
      next.push_back(std::move(merged));
    }
  *acc = std::move(next);
  return true;
}

// Expands b under the polarity into a capped disjunctive normal form over
// linear atoms. Returns false when a nonlinear atom appears or the branch
// budget is exceeded; an empty branch list is the constant False.
bool dnf_branches(const BTree& b, bool pos, int n, std::vector<Branch>* out) {
  switch (b.kind) {
    case BTree::Kind::True:
      if (pos)
        out->push_back({});
      return true;
    case BTree::Kind::False:
      if (!pos)
        out->push_back({});
      return true;
    case BTree::Kind::Atom: {
      if (pos || b.rel != Rel::EQ) {
        auto a = lin_atom(b.poly, b.rel, n, !pos);
        if (!a)
          return false;
        out->push_back({std::move(*a)});
        return true;
      }
      // not(p = 0) splits into p > 0 or -p > 0.
      auto hi = lin_atom(b.poly, Rel::GT, n, false);
      auto lo = lin_atom(-b.poly, Rel::GT, n, false);
      if (!hi || !lo)
        return false;
      out->push_back({std::move(*hi)});
      out->push_back({std::move(*lo)});
      return true;
    }
    case BTree::Kind::Not:
      return dnf_branches(b.kids[0], !pos, n, out);
    case BTree::Kind::And:
    case BTree::Kind::Or: {
      bool conjunctive = (b.kind == BTree::Kind::And) == pos;
      if (conjunctive) {
        std::vector<Branch> acc = {{}};
        for (const auto& k : b.kids) {
          std::vector<Branch> kb;
          if (!dnf_branches(k, pos, n, &kb))
            return false;
          if (!cross_branches(&acc, kb))
            return false;
        }
        out->insert(out->end(), acc.begin(), acc.end());
      } else {
        for (const auto& k : b.kids)
          if (!dnf_branches(k, pos, n, out))
            return false;
      }
      return out->size() <= kFmMaxBranches;
    }
  }
  return false;
}

// Exact feasibility of a conjunction of linear atoms over Q^n.
std::optional<bool> fm_solve(std::vector<LinAtom> atoms, int n) {
  if (n > kFmMaxVars)
    return std::nullopt;
  for (int j = 0; j < n; ++j) {
    // Prefer substitution through an equation mentioning x_j.
    int eq = -1;
    for (size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].rel == Rel::EQ && !atoms[i].c[static_cast<size_t>(j)].is_zero()) {
        eq = static_cast<int>(i);
        break;
      }
    }
    std::vector<LinAtom> next;
    if (eq >= 0) {
      LinAtom pivot = atoms[static_cast<size_t>(eq)];
      Rational pj = pivot.c[static_cast<size_t>(j)];
      for (size_t i = 0; i < atoms.size(); ++i) {
        if (static_cast<int>(i) == eq)
          continue;
        LinAtom a = atoms[i];
        Rational aj = a.c[static_cast<size_t>(j)];
        if (!aj.is_zero()) {
          // a - (aj/pj) * pivot zeroes the x_j coefficient exactly.
          Rational f = aj / pj;
          for (size_t k = 0; k < a.c.size(); ++k)
            a.c[k] -= f * pivot.c[k];
          a.c0 -= f * pivot.c0;
        }
        next.push_back(std::move(a));
      }
    } else {
      std::vector<const LinAtom*> lower, upper, rest;
      for (const auto& a : atoms) {
        Rational aj = a.c[static_cast<size_t>(j)];
        if (aj.is_zero())
          rest.push_back(&a);
        else if (aj.sign() > 0)
          lower.push_back(&a);  // x_j bounded below
        else
          upper.push_back(&a);
      }
      for (const auto* a : rest)
        next.push_back(*a);
      for (const auto* lo : lower) {
        for (const auto* up : upper) {
          Rational lj = lo->c[static_cast<size_t>(j)];
          Rational uj = up->c[static_cast<size_t>(j)];
          LinAtom a;
          a.c.assign(static_cast<size_t>(n), Rational(0));
          // (-uj) * lo + lj * up has zero x_j coefficient; both scalars > 0.
          for (size_t k = 0; k < a.c.size(); ++k)
            a.c[k] = (-uj) * lo->c[k] + lj * up->c[k];
          a.c0 = (-uj) * lo->c0 + lj * up->c0;
          a.rel = (lo->rel == Rel::GT || up->rel == Rel::GT) ? Rel::GT : Rel::GE;
          next.push_back(std::move(a));
        }
      }
      if (next.size() > kFmMaxAtoms)
        return std::nullopt;
    }
    atoms = std::move(next);
  }
  for (const auto& a : atoms) {
    if (!atom_holds(a.c0, a.rel))
      return false;
  }
  return true;
}

}  // namespace

bool ConstraintSystem::holds_at(const std::vector<Rational>& x) const {
  for (const auto& s : side)
    if (!tree_holds(s, x))
      return false;
  return tree_holds(root, x);
}

bool ConstraintSystem::in_domain(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != n)
    return false;
  if (domain == Domain::Simplex) {
    Rational sum(0);
    for (const auto& xi : x) {
      if (strict_positive ? xi.sign() <= 0 : xi.sign() < 0)
        return false;
      sum += xi;
    }
    return sum == Rational(1);
  }
  for (const auto& xi : x)
    if (xi < box_lo || xi > box_hi)
      return false;
  return true;
}

Tri prune(const ConstraintSystem& cs) {
  Tri acc = tri_tree(cs.root, cs);
  for (const auto& s : cs.side) {
    if (acc == Tri::False)
      return Tri::False;
    Tri t = tri_tree(s, cs);
    if (t == Tri::False)
      return Tri::False;
    if (t == Tri::Unknown)
      acc = Tri::Unknown;
  }
  return acc;
}

std::optional<bool> linear_feasible(const ConstraintSystem& cs) {
  std::vector<Branch> branches;
  if (!dnf_branches(cs.root, true, cs.n, &branches))
    return std::nullopt;
  for (const auto& s : cs.side) {
    std::vector<Branch> sb;
    if (!dnf_branches(s, true, cs.n, &sb))
      return std::nullopt;
    if (!cross_branches(&branches, sb))
      return std::nullopt;
  }

  // Domain constraints, shared by every branch.
  std::vector<LinAtom> atoms;
  if (cs.domain == ConstraintSystem::Domain::Simplex) {
    for (int i = 0; i < cs.n; ++i) {
      LinAtom a;
      a.c.assign(static_cast<size_t>(cs.n), Rational(0));
      a.c[static_cast<size_t>(i)] = Rational(1);
      a.c0 = Rational(0);
      a.rel = cs.strict_positive ? Rel::GT : Rel::GE;
      atoms.push_back(std::move(a));
    }
    LinAtom norm;
    norm.c.assign(static_cast<size_t>(cs.n), Rational(1));
    norm.c0 = Rational(-1);
    norm.rel = Rel::EQ;
    atoms.push_back(std::move(norm));
  } else {
    for (int i = 0; i < cs.n; ++i) {
      LinAtom lo, hi;
      lo.c.assign(static_cast<size_t>(cs.n), Rational(0));
      lo.c[static_cast<size_t>(i)] = Rational(1);
      lo.c0 = -cs.box_lo;
      lo.rel = Rel::GE;
      hi.c.assign(static_cast<size_t>(cs.n), Rational(0));
      hi.c[static_cast<size_t>(i)] = Rational(-1);
      hi.c0 = cs.box_hi;
      hi.rel = Rel::GE;
      atoms.push_back(std::move(lo));
      atoms.push_back(std::move(hi));
    }
  }

  // Feasible the moment one branch is; infeasible only when every branch is
  // refuted outright.
  bool unknown = false;
  for (const auto& br : branches) {
    std::vector<LinAtom> sys = br;
    sys.insert(sys.end(), atoms.begin(), atoms.end());
    if (sys.size() > kFmMaxAtoms) {
      unknown = true;
      continue;
    }
    auto fea = fm_solve(std::move(sys), cs.n);
    if (!fea)
      unknown = true;
    else if (*fea)
      return true;
  }
  if (unknown)
    return std::nullopt;
  return false;
}

}  // namespace sumlogic
