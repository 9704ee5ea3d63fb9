#include "sumlogic/proofs.hpp"

#include <map>
#include <set>

#include "sumlogic/fragment.hpp"
#include "sumlogic/shapes.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

const char* kAxiomNames[] = {"PolyBase", "EqReflex",   "EqReplace",
                             "EqDist",   "Cond",       "SumLower",
                             "Pos",      "Fin_N",      "Distinct_N",
                             "SumEquals_N"};

const char* kTagNames[] = {"Taut",         "Refl",       "AddComm",
                           "AddAssoc",     "AddZero",    "MulComm",
                           "MulAssoc",     "MulZero",    "Distrib",
                           "AddCong",      "AddCongR",   "MulCong",
                           "OrderRefl",    "OrderTrans", "OrderAddMono",
                           "OrderMulMono", "OrderTotal", "NumOrder"};

const char* kRuleNames[] = {"MP",  "Conv",     "Unity",    "SumUpper",
                            "Fin", "FreeElim", "FreeIntro"};

}  // namespace

std::string axiom_name(AxiomId id) { return kAxiomNames[(int)id]; }
std::string poly_tag_name(PolyTag tag) { return kTagNames[(int)tag]; }
std::string rule_name(RuleId id) { return kRuleNames[(int)id]; }

std::optional<AxiomId> axiom_by_name(const std::string& s) {
  for (int i = 0; i < 10; ++i)
    if (s == kAxiomNames[i]) return (AxiomId)i;
  return {};
}

std::optional<PolyTag> poly_tag_by_name(const std::string& s) {
  for (int i = 0; i < 18; ++i)
    if (s == kTagNames[i]) return (PolyTag)i;
  return {};
}

std::optional<RuleId> rule_by_name(const std::string& s) {
  for (int i = 0; i < 7; ++i)
    if (s == kRuleNames[i]) return (RuleId)i;
  return {};
}

bool system_open(SystemId id) {
  return id == SystemId::Ax || id == SystemId::AxN || id == SystemId::AxFin;
}

bool system_bounded(SystemId id) {
  return id == SystemId::AxNClosed || id == SystemId::AxN;
}

std::string system_name(const System& sys) {
  std::string s;
  switch (sys.id) {
    case SystemId::AxClosed: s = "AX_closed"; break;
    case SystemId::AxNClosed:
      s = sys.n > 0 ? "AX_" + std::to_string(sys.n) + "_closed" : "AX_N_closed";
      break;
    case SystemId::AxFinClosed: s = "AX_fin_closed"; break;
    case SystemId::Ax: s = "AX"; break;
    case SystemId::AxN: s = sys.n > 0 ? "AX_" + std::to_string(sys.n) : "AX_N"; break;
    case SystemId::AxFin: s = "AX_fin"; break;
  }
  if (sys.extra_distinct) s += " + Distinct_N";
  if (sys.extra_sumeq) s += " + SumEquals_N";
  return s;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::optional<System> parse_system(const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t plus = text.find('+', start);
    parts.push_back(trim(text.substr(start, plus - start)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  System sys;
  const std::string& name = parts[0];
  if (name == "AX_closed") {
    sys.id = SystemId::AxClosed;
  } else if (name == "AX") {
    sys.id = SystemId::Ax;
  } else if (name == "AX_fin_closed") {
    sys.id = SystemId::AxFinClosed;
  } else if (name == "AX_fin") {
    sys.id = SystemId::AxFin;
  } else if (name.rfind("AX_", 0) == 0) {
    std::string rest = name.substr(3);
    bool closed = false;
    const std::string kSuffix = "_closed";
    if (rest.size() > kSuffix.size() &&
        rest.compare(rest.size() - kSuffix.size(), kSuffix.size(), kSuffix) == 0) {
      closed = true;
      rest = rest.substr(0, rest.size() - kSuffix.size());
    }
    if (rest == "N") {
      sys.n = 0;
    } else if (!rest.empty() &&
               rest.find_first_not_of("0123456789") == std::string::npos) {
      sys.n = std::stoi(rest);
      if (sys.n < 1) return {};
    } else {
      return {};
    }
    sys.id = closed ? SystemId::AxNClosed : SystemId::AxN;
  } else {
    return {};
  }
  for (size_t i = 1; i < parts.size(); ++i) {
    if (parts[i] == "Distinct_N") sys.extra_distinct = true;
    else if (parts[i] == "SumEquals_N") sys.extra_sumeq = true;
    else return {};
  }
  return sys;
}

namespace {

AxiomCheck accept() { return {true, ""}; }
AxiomCheck reject(const std::string& why) { return {false, why}; }

// --- EqReplace: B must be A with some occurrences of c replaced by c'.

bool repl_sym(const DSym& a, const DSym& b, const DSym& c, const DSym& cp) {
  return a == b || (a == c && b == cp);
}

bool repl_event(const EventP& a, const EventP& b, const DSym& c, const DSym& cp);
bool repl_term(const TermP& a, const TermP& b, const DSym& c, const DSym& cp);

bool repl_event(const EventP& a, const EventP& b, const DSym& c, const DSym& cp) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Event::Kind::Top: return true;
    case Event::Kind::Atom:
      return a->var == b->var && repl_sym(a->val, b->val, c, cp);
    case Event::Kind::Not: return repl_event(a->a, b->a, c, cp);
    case Event::Kind::And:
      return repl_event(a->a, b->a, c, cp) && repl_event(a->b, b->b, c, cp);
    case Event::Kind::Box:
      return repl_event(a->a, b->a, c, cp) && repl_event(a->b, b->b, c, cp);
  }
  return false;
}

bool repl_term(const TermP& a, const TermP& b, const DSym& c, const DSym& cp) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Term::Kind::Prob:
      return repl_event(a->ev, b->ev, c, cp) && repl_event(a->cond, b->cond, c, cp);
    case Term::Kind::Sum:
      return a->bound == b->bound && repl_term(a->a, b->a, c, cp);
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return repl_term(a->a, b->a, c, cp) && repl_term(a->b, b->b, c, cp);
    case Term::Kind::Neg: return repl_term(a->a, b->a, c, cp);
    case Term::Kind::Coef: return repl_sym(a->sym, b->sym, c, cp);
  }
  return false;
}

bool repl_formula(const FormulaP& a, const FormulaP& b, const DSym& c,
                  const DSym& cp) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::Geq:
      return repl_term(a->t1, b->t1, c, cp) && repl_term(a->t2, b->t2, c, cp);
    case Formula::Kind::SymEq:
      return repl_sym(a->d1, b->d1, c, cp) && repl_sym(a->d2, b->d2, c, cp);
    case Formula::Kind::Not: return repl_formula(a->a, b->a, c, cp);
    case Formula::Kind::And:
      return repl_formula(a->a, b->a, c, cp) && repl_formula(a->b, b->b, c, cp);
  }
  return false;
}

// --- propositional tautology over Geq / SymEq atoms

constexpr int kMaxTautAtoms = 16;

bool collect_atoms(const FormulaP& f, std::vector<FormulaP>& atoms,
                   std::map<const Formula*, int>& pos) {
  switch (f->kind) {
    case Formula::Kind::Geq:
    case Formula::Kind::SymEq: {
      int idx = -1;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (equal(atoms[i], f)) { idx = (int)i; break; }
      if (idx < 0) {
        if ((int)atoms.size() >= kMaxTautAtoms) return false;
        idx = (int)atoms.size();
        atoms.push_back(f);
      }
      pos[f.get()] = idx;
      return true;
    }
    case Formula::Kind::Not: return collect_atoms(f->a, atoms, pos);
    case Formula::Kind::And:
      return collect_atoms(f->a, atoms, pos) && collect_atoms(f->b, atoms, pos);
  }
  return false;
}

bool eval_bits(const FormulaP& f, unsigned bits,
               const std::map<const Formula*, int>& pos) {
  switch (f->kind) {
    case Formula::Kind::Geq:
    case Formula::Kind::SymEq: return (bits >> pos.at(f.get())) & 1u;
    case Formula::Kind::Not: return !eval_bits(f->a, bits, pos);
    case Formula::Kind::And:
      return eval_bits(f->a, bits, pos) && eval_bits(f->b, bits, pos);
  }
  return false;
}

AxiomCheck tag_taut(const FormulaP& f) {
  std::vector<FormulaP> atoms;
  std::map<const Formula*, int> pos;
  if (!collect_atoms(f, atoms, pos))
    return reject("more than " + std::to_string(kMaxTautAtoms) +
                  " distinct atoms");
  for (unsigned bits = 0; bits < (1u << atoms.size()); ++bits)
    if (!eval_bits(f, bits, pos))
      return reject("not a propositional tautology");
  return accept();
}

AxiomCheck tag_num_order(const FormulaP& f) {
  FormulaP g = f;
  bool negated = false;
  if (g->kind == Formula::Kind::Not) {
    negated = true;
    g = g->a;
  }
  if (g->kind != Formula::Kind::Geq) return reject("not a comparison");
  auto n = as_numeral(g->t1), m = as_numeral(g->t2);
  if (!n || !m) return reject("sides are not canonical numerals");
  if (negated ? *n >= *m : *n < *m)
    return reject("the numeral comparison is false");
  return accept();
}

AxiomCheck check_poly(const FormulaP& f, PolyTag tag) {
  auto need_eq = [&](const FormulaP& g) { return match_eq(g); };
  switch (tag) {
    case PolyTag::Taut: return tag_taut(f);
    case PolyTag::NumOrder: return tag_num_order(f);
    case PolyTag::Refl: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      if (!equal(e->first, e->second)) return reject("sides differ");
      return accept();
    }
    case PolyTag::AddComm:
    case PolyTag::MulComm: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      auto kind = tag == PolyTag::AddComm ? Term::Kind::Add : Term::Kind::Mul;
      const TermP& x = e->first;
      const TermP& y = e->second;
      if (x->kind != kind || y->kind != kind) return reject("operator mismatch");
      if (!equal(x->a, y->b) || !equal(x->b, y->a))
        return reject("operands are not swapped");
      return accept();
    }
    case PolyTag::AddAssoc:
    case PolyTag::MulAssoc: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      auto kind = tag == PolyTag::AddAssoc ? Term::Kind::Add : Term::Kind::Mul;
      const TermP& x = e->first;
      const TermP& y = e->second;
      if (x->kind != kind || x->a->kind != kind || y->kind != kind ||
          y->b->kind != kind)
        return reject("not a reassociation");
      if (!equal(x->a->a, y->a) || !equal(x->a->b, y->b->a) ||
          !equal(x->b, y->b->b))
        return reject("operands differ across the reassociation");
      return accept();
    }
    case PolyTag::AddZero: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      const TermP& x = e->first;
      if (x->kind != Term::Kind::Add || !is_zero_numeral(x->b))
        return reject("left side is not t + 0");
      if (!equal(x->a, e->second)) return reject("sides differ");
      return accept();
    }
    case PolyTag::MulZero: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      const TermP& x = e->first;
      if (x->kind != Term::Kind::Mul || !is_zero_numeral(x->b))
        return reject("left side is not t * 0");
      if (!is_zero_numeral(e->second)) return reject("right side is not 0");
      return accept();
    }
    case PolyTag::Distrib: {
      auto e = need_eq(f);
      if (!e) return reject("not an equality");
      const TermP& x = e->first;
      const TermP& y = e->second;
      if (x->kind != Term::Kind::Mul || x->b->kind != Term::Kind::Add ||
          y->kind != Term::Kind::Add || y->a->kind != Term::Kind::Mul ||
          y->b->kind != Term::Kind::Mul)
        return reject("not in t * (t' + t'') ~ t*t' + t*t'' shape");
      if (!equal(x->a, y->a->a) || !equal(x->a, y->b->a) ||
          !equal(x->b->a, y->a->b) || !equal(x->b->b, y->b->b))
        return reject("operands differ across the distribution");
      return accept();
    }
    case PolyTag::AddCong:
    case PolyTag::AddCongR:
    case PolyTag::MulCong: {
      auto imp = match_imp(f);
      if (!imp) return reject("not an implication");
      auto p = need_eq(imp->a);
      auto q = need_eq(imp->b);
      if (!p || !q) return reject("sides are not equalities");
      auto kind = tag == PolyTag::MulCong ? Term::Kind::Mul : Term::Kind::Add;
      const TermP& x = q->first;
      const TermP& y = q->second;
      if (x->kind != kind || y->kind != kind) return reject("operator mismatch");
      if (tag == PolyTag::AddCongR) {
        if (!equal(x->a, y->a)) return reject("left contexts differ");
        if (!equal(x->b, p->first) || !equal(y->b, p->second))
          return reject("rewritten operands do not match the antecedent");
      } else {
        if (!equal(x->b, y->b)) return reject("right contexts differ");
        if (!equal(x->a, p->first) || !equal(y->a, p->second))
          return reject("rewritten operands do not match the antecedent");
      }
      return accept();
    }
    case PolyTag::OrderRefl: {
      if (f->kind != Formula::Kind::Geq) return reject("not a comparison");
      if (!equal(f->t1, f->t2)) return reject("sides differ");
      return accept();
    }
    case PolyTag::OrderTrans: {
      auto imp = match_imp(f);
      if (!imp) return reject("not an implication");
      if (imp->a->kind != Formula::Kind::And) return reject("antecedent is not a conjunction");
      const FormulaP& g1 = imp->a->a;
      const FormulaP& g2 = imp->a->b;
      const FormulaP& g3 = imp->b;
      if (g1->kind != Formula::Kind::Geq || g2->kind != Formula::Kind::Geq ||
          g3->kind != Formula::Kind::Geq)
        return reject("parts are not comparisons");
      if (!equal(g1->t2, g2->t1)) return reject("middle terms differ");
      if (!equal(g3->t1, g1->t1) || !equal(g3->t2, g2->t2))
        return reject("conclusion endpoints differ");
      return accept();
    }
    case PolyTag::OrderAddMono: {
      auto imp = match_imp(f);
      if (!imp) return reject("not an implication");
      const FormulaP& p = imp->a;
      const FormulaP& q = imp->b;
      if (p->kind != Formula::Kind::Geq || q->kind != Formula::Kind::Geq)
        return reject("sides are not comparisons");
      if (q->t1->kind != Term::Kind::Add || q->t2->kind != Term::Kind::Add)
        return reject("conclusion sides are not additions");
      if (!equal(q->t1->a, p->t1) || !equal(q->t2->a, p->t2) ||
          !equal(q->t1->b, q->t2->b))
        return reject("added context differs");
      return accept();
    }
    case PolyTag::OrderMulMono: {
      auto imp = match_imp(f);
      if (!imp) return reject("not an implication");
      if (imp->a->kind != Formula::Kind::And)
        return reject("antecedent is not a conjunction");
      const FormulaP& p = imp->a->a;
      const FormulaP& nn = imp->a->b;
      const FormulaP& q = imp->b;
      if (p->kind != Formula::Kind::Geq || nn->kind != Formula::Kind::Geq ||
          q->kind != Formula::Kind::Geq)
        return reject("parts are not comparisons");
      if (!is_zero_numeral(nn->t2)) return reject("the multiplier is not bounded below by 0");
      if (q->t1->kind != Term::Kind::Mul || q->t2->kind != Term::Kind::Mul)
        return reject("conclusion sides are not products");
      if (!equal(q->t1->a, p->t1) || !equal(q->t2->a, p->t2) ||
          !equal(q->t1->b, nn->t1) || !equal(q->t2->b, nn->t1))
        return reject("multiplied context differs");
      return accept();
    }
    case PolyTag::OrderTotal: {
      if (f->kind != Formula::Kind::Not) return reject("not a disjunction");
      const FormulaP& g = f->a;
      if (g->kind != Formula::Kind::And || g->a->kind != Formula::Kind::Not ||
          g->b->kind != Formula::Kind::Not)
        return reject("not a disjunction");
      const FormulaP& l = g->a->a;
      const FormulaP& r = g->b->a;
      if (l->kind != Formula::Kind::Geq || r->kind != Formula::Kind::Geq)
        return reject("disjuncts are not comparisons");
      if (!equal(l->t1, r->t2) || !equal(l->t2, r->t1))
        return reject("disjuncts are not the two orientations");
      return accept();
    }
  }
  return reject("unknown tag");
}

// --- the quantitative schemas

AxiomCheck ax_eq_reflex(const FormulaP& f) {
  if (f->kind != Formula::Kind::SymEq) return reject("not a symbol equality");
  if (!(f->d1 == f->d2)) return reject("sides differ");
  if (!f->d1.is_const) return reject("not a constant");
  return accept();
}

AxiomCheck ax_eq_replace(const FormulaP& f) {
  auto outer = match_imp(f);
  if (!outer) return reject("not an implication");
  const FormulaP& eq = outer->a;
  if (eq->kind != Formula::Kind::SymEq)
    return reject("antecedent is not a symbol equality");
  if (!eq->d1.is_const || !eq->d2.is_const)
    return reject("antecedent mentions a range variable");
  if (eq->d1.var != eq->d2.var)
    return reject("constants name different variables");
  auto inner = match_imp(outer->b);
  if (!inner) return reject("consequent is not an implication");
  if (!repl_formula(inner->a, inner->b, eq->d1, eq->d2))
    return reject("consequent sides do not differ by replacing c with c'");
  return accept();
}

AxiomCheck ax_eq_dist(const FormulaP& f) {
  auto imp = match_imp(f);
  if (!imp) return reject("not an implication");
  const FormulaP& neg = imp->a;
  if (neg->kind != Formula::Kind::Not ||
      neg->a->kind != Formula::Kind::SymEq)
    return reject("antecedent is not a negated symbol equality");
  DSym c = neg->a->d1, cp = neg->a->d2;
  if (!c.is_const || !cp.is_const) return reject("antecedent mentions a range variable");
  if (c.var != cp.var) return reject("constants name different variables");
  FormulaP expect = fm_eq(
      tm_prob(ev_and(ev_atom(c.var, c), ev_atom(cp.var, cp))), tm_num(0));
  if (!equal(imp->b, expect))
    return reject("consequent is not P(V=c & V=c') ~ 0");
  return accept();
}

AxiomCheck ax_cond(const FormulaP& f) {
  auto iff = match_iff(f);
  if (!iff) return reject("not a biconditional");
  const FormulaP& l = iff->first;
  if (l->kind != Formula::Kind::Geq || l->t1->kind != Term::Kind::Prob)
    return reject("left side is not a conditional comparison");
  EventP d = l->t1->ev, dp = l->t1->cond;
  TermP t = l->t2;
  if (!is_cond_formula(dp)) return reject("condition not in the guarded class");
  FormulaP expect = fm_iff(
      fm_geq(tm_prob(d, dp), t),
      fm_geq(tm_prob(ev_and(d, dp)), tm_mul(t, tm_prob(dp))));
  if (!equal(f, expect)) return reject("unconditional side has the wrong shape");
  return accept();
}

// The guarded-class diagnostic distinguishes a repeated variable from a
// structurally foreign condition.
std::string cond_class_reason(const EventP& e) {
  std::vector<EventP> lits;
  std::vector<EventP> stack{e};
  bool shape_ok = true;
  while (!stack.empty()) {
    EventP x = stack.back();
    stack.pop_back();
    if (x->kind == Event::Kind::And) {
      stack.push_back(x->a);
      stack.push_back(x->b);
    } else if (x->kind == Event::Kind::Atom ||
               (x->kind == Event::Kind::Not && x->a->kind == Event::Kind::Atom)) {
      lits.push_back(x);
    } else {
      shape_ok = false;
    }
  }
  if (!shape_ok) return "condition is not a conjunction of literals";
  return "a variable repeats in the condition";
}

AxiomCheck ax_pos(const FormulaP& f) {
  auto gt = match_gt(f);
  if (!gt) return reject("not a strict comparison");
  if (!is_zero_numeral(gt->second)) return reject("right side is not 0");
  const TermP& p = gt->first;
  if (p->kind != Term::Kind::Prob || p->cond->kind != Event::Kind::Top)
    return reject("left side is not an unconditional probability");
  if (!is_cond_formula(p->ev)) return reject(cond_class_reason(p->ev));
  return accept();
}

AxiomCheck ax_sum_lower(const FormulaP& f) {
  FormulaP ante;
  FormulaP core = f;
  if (auto imp = match_imp(f)) {
    ante = imp->a;
    core = imp->b;
  }
  if (core->kind != Formula::Kind::Geq)
    return reject("conclusion is not a comparison");
  const TermP& sum = core->t1;
  if (sum->kind != Term::Kind::Sum) return reject("left side is not a sum");
  DSym v = sum->bound;
  const TermP& t = sum->a;

  // antecedent literals
  std::vector<std::pair<DSym, DSym>> lits;
  if (ante) {
    std::vector<FormulaP> parts;
    flatten_and(ante, parts);
    for (const FormulaP& l : parts) {
      if (l->kind != Formula::Kind::Not || l->a->kind != Formula::Kind::SymEq)
        return reject("antecedent conjunct is not a negated symbol equality");
      DSym a = l->a->d1, b = l->a->d2;
      if (!a.is_const || !b.is_const || a.var != v.var || b.var != v.var)
        return reject("antecedent mentions a foreign symbol");
      if (a == b) return reject("antecedent compares a constant with itself");
      lits.emplace_back(a, b);
    }
  }

  std::vector<DSym> csts;
  std::vector<TermP> insts;
  std::set<DSym> pool;
  for (const DSym& c : consts_in(f))
    if (c.var == v.var) pool.insert(c);
  pool.insert(const_sym(v.var, 1));
  EventP pat = ev_atom(v.var, v);
  for (const DSym& c : pool) {
    TermP e = substitute_event(t, pat, ev_atom(v.var, c));
    if (has_free(e, v))
      return reject("the bound variable occurs outside replaceable atoms");
    csts.push_back(c);
    insts.push_back(e);
  }

  // The right side must read as a left-nested sum of body instances over a
  // distinct support set covered by the antecedent. The body may itself be a
  // sum, so the addend boundaries are found by search.
  std::set<DSym> used;
  auto validate = [&]() {
    if ((used.size() == 1) != !ante) return false;
    for (const auto& [a, b] : lits)
      if (!used.count(a) || !used.count(b)) return false;
    for (auto it = used.begin(); it != used.end(); ++it)
      for (auto jt = std::next(it); jt != used.end(); ++jt) {
        bool covered = false;
        for (const auto& [a, b] : lits)
          if ((a == *it && b == *jt) || (a == *jt && b == *it)) covered = true;
        if (!covered) return false;
      }
    return true;
  };
  std::function<bool(const TermP&)> split = [&](const TermP& node) -> bool {
    for (size_t i = 0; i < insts.size(); ++i) {
      if (used.count(csts[i]) || !equal(node, insts[i])) continue;
      used.insert(csts[i]);
      if (validate()) return true;
      used.erase(csts[i]);
    }
    if (node->kind != Term::Kind::Add) return false;
    for (size_t i = 0; i < insts.size(); ++i) {
      if (used.count(csts[i]) || !equal(node->b, insts[i])) continue;
      used.insert(csts[i]);
      if (split(node->a)) return true;
      used.erase(csts[i]);
    }
    return false;
  };
  if (!split(core->t2))
    return reject("right side is not a sum of instances over a distinct "
                  "antecedent-covered support set");
  return accept();
}

AxiomCheck ax_fin_n(const FormulaP& f, std::optional<int> bound) {
  if (!bound) return reject("requires a bounded signature");
  auto e = match_eq(f);
  if (!e) return reject("not an equality");
  const TermP& sum = e->first;
  if (sum->kind != Term::Kind::Sum) return reject("left side is not a sum");
  FormulaP expect = fm_eq(tm_sum(sum->bound, tm_prob(ev_top())), tm_num(*bound));
  if (!equal(f, expect)) return reject("not sum_v P(T) ~ N for the signature bound");
  return accept();
}

AxiomCheck ax_distinct_n(const FormulaP& f, std::optional<int> bound) {
  if (!bound) return reject("requires a bounded signature");
  int n = *bound;
  std::vector<FormulaP> parts;
  flatten_and(f, parts);
  VarId var = -1;
  std::set<std::pair<int, int>> pairs;
  for (const FormulaP& l : parts) {
    if (l->kind != Formula::Kind::Not || l->a->kind != Formula::Kind::SymEq)
      return reject("conjunct is not a negated symbol equality");
    DSym a = l->a->d1, b = l->a->d2;
    if (!a.is_const || !b.is_const) return reject("conjunct mentions a range variable");
    if (a.var != b.var) return reject("constants name different variables");
    if (var == -1) var = a.var;
    if (a.var != var) return reject("conjuncts range over several variables");
    if (a.idx == b.idx) return reject("a constant is compared with itself");
    if (a.idx < 1 || a.idx > n || b.idx < 1 || b.idx > n)
      return reject("constant index exceeds the signature bound");
    pairs.insert({std::min(a.idx, b.idx), std::max(a.idx, b.idx)});
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!pairs.count({i, j}))
        return reject("missing the pair c" + std::to_string(i) + ", c" +
                      std::to_string(j));
  return accept();
}

AxiomCheck ax_sum_equals_n(const FormulaP& f, std::optional<int> bound) {
  if (!bound) return reject("requires a bounded signature");
  int n = *bound;
  auto e = match_eq(f);
  if (!e) return reject("not an equality");
  const TermP& sum = e->first;
  if (sum->kind != Term::Kind::Sum) return reject("left side is not a sum");
  DSym x = sum->bound;
  const TermP& t = sum->a;
  EventP pat = ev_atom(x.var, x);
  TermP rhs;
  for (int i = 1; i <= n; ++i) {
    TermP inst = substitute_event(t, pat, ev_atom(x.var, const_sym(x.var, i)));
    if (has_free(inst, x))
      return reject("the bound variable occurs outside replaceable atoms");
    rhs = rhs ? tm_add(rhs, inst) : inst;
  }
  FormulaP expect = fm_eq(tm_sum(x, t), rhs);
  if (!equal(f, expect))
    return reject("right side is not the instance sum c_1..c_N in order");
  return accept();
}

}  // namespace

AxiomCheck check_axiom_instance_bounded(const FormulaP& f, const SchemaId& schema,
                                        std::optional<int> bound) {
  switch (schema.id) {
    case AxiomId::PolyBase: return check_poly(f, schema.tag);
    case AxiomId::EqReflex: return ax_eq_reflex(f);
    case AxiomId::EqReplace: return ax_eq_replace(f);
    case AxiomId::EqDist: return ax_eq_dist(f);
    case AxiomId::Cond: return ax_cond(f);
    case AxiomId::SumLower: return ax_sum_lower(f);
    case AxiomId::Pos: return ax_pos(f);
    case AxiomId::FinN: return ax_fin_n(f, bound);
    case AxiomId::DistinctN: return ax_distinct_n(f, bound);
    case AxiomId::SumEqualsN: return ax_sum_equals_n(f, bound);
  }
  return reject("unknown schema");
}

AxiomCheck check_axiom_instance(const FormulaP& f, const SchemaId& schema,
                                const Signature& sig) {
  return check_axiom_instance_bounded(f, schema, sig.bound());
}

}  // namespace sumlogic
