#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

void frv_ev(const EventP& e, const std::set<DSym>& bound, std::set<DSym>& out) {
  switch (e->kind) {
    case Event::Kind::Top: return;
    case Event::Kind::Atom:
      if (!e->val.is_const && !bound.count(e->val))
        out.insert(e->val);
      return;
    case Event::Kind::Not: frv_ev(e->a, bound, out); return;
    case Event::Kind::And:
    case Event::Kind::Box:
      frv_ev(e->a, bound, out);
      frv_ev(e->b, bound, out);
      return;
  }
}

void frv_tm(const TermP& t, std::set<DSym> bound, std::set<DSym>& out) {
  switch (t->kind) {
    case Term::Kind::Prob:
      frv_ev(t->ev, bound, out);
      frv_ev(t->cond, bound, out);
      return;
    case Term::Kind::Sum: {
      bound.insert(t->bound);
      frv_tm(t->a, bound, out);
      return;
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
      frv_tm(t->a, bound, out);
      frv_tm(t->b, bound, out);
      return;
    case Term::Kind::Neg: frv_tm(t->a, bound, out); return;
    case Term::Kind::Coef:
      if (!t->sym.is_const && !bound.count(t->sym))
        out.insert(t->sym);
      return;
  }
}

void frv_fm(const FormulaP& f, std::set<DSym>& out) {
  switch (f->kind) {
    case Formula::Kind::Geq:
      frv_tm(f->t1, {}, out);
      frv_tm(f->t2, {}, out);
      return;
    case Formula::Kind::SymEq:
      if (!f->d1.is_const)
        out.insert(f->d1);
      if (!f->d2.is_const)
        out.insert(f->d2);
      return;
    case Formula::Kind::Not: frv_fm(f->a, out); return;
    case Formula::Kind::And:
      frv_fm(f->a, out);
      frv_fm(f->b, out);
      return;
  }
}

DSym sub_d(const DSym& cur, const DSym& v, const DSym& d) {
  return cur == v ? d : cur;
}

EventP sub_ev(const EventP& e, const DSym& v, const DSym& d) {
  switch (e->kind) {
    case Event::Kind::Top: return e;
    case Event::Kind::Atom:
      if (e->val == v) {
        if (e->var != d.var)
          throw SyntaxError("substitution target belongs to a different variable");
        return ev_atom(e->var, d);
      }
      return e;
    case Event::Kind::Not: {
      EventP a = sub_ev(e->a, v, d);
      return a == e->a ? e : ev_not(a);
    }
    case Event::Kind::And: {
      EventP a = sub_ev(e->a, v, d), b = sub_ev(e->b, v, d);
      return a == e->a && b == e->b ? e : ev_and(a, b);
    }
    case Event::Kind::Box: {
      EventP a = sub_ev(e->a, v, d), b = sub_ev(e->b, v, d);
      return a == e->a && b == e->b ? e : ev_box(a, b);
    }
  }
  return e;
}

TermP sub_tm(const TermP& t, const DSym& v, const DSym& d) {
  switch (t->kind) {
    case Term::Kind::Prob: {
      EventP ev = sub_ev(t->ev, v, d), cond = sub_ev(t->cond, v, d);
      return ev == t->ev && cond == t->cond ? t : tm_prob(ev, cond);
    }
    case Term::Kind::Sum: {
      if (t->bound == v)
        return t;  // v is shadowed
      if (!d.is_const && t->bound == d && has_free(t->a, v))
        throw SyntaxError("substitution would capture a bound range variable");
      TermP a = sub_tm(t->a, v, d);
      return a == t->a ? t : tm_sum(t->bound, a);
    }
    case Term::Kind::Add: {
      TermP a = sub_tm(t->a, v, d), b = sub_tm(t->b, v, d);
      return a == t->a && b == t->b ? t : tm_add(a, b);
    }
    case Term::Kind::Mul: {
      TermP a = sub_tm(t->a, v, d), b = sub_tm(t->b, v, d);
      return a == t->a && b == t->b ? t : tm_mul(a, b);
    }
    case Term::Kind::Neg: {
      TermP a = sub_tm(t->a, v, d);
      return a == t->a ? t : tm_neg(a);
    }
    case Term::Kind::Coef:
      return t->sym == v ? tm_coef(d) : t;
  }
  return t;
}

}  // namespace

std::set<DSym> free_range_vars(const EventP& e) {
  std::set<DSym> out;
  frv_ev(e, {}, out);
  return out;
}
std::set<DSym> free_range_vars(const TermP& t) {
  std::set<DSym> out;
  frv_tm(t, {}, out);
  return out;
}
std::set<DSym> free_range_vars(const FormulaP& f) {
  std::set<DSym> out;
  frv_fm(f, out);
  return out;
}

bool has_free(const TermP& t, const DSym& v) { return free_range_vars(t).count(v) > 0; }
bool has_free(const FormulaP& f, const DSym& v) { return free_range_vars(f).count(v) > 0; }

EventP substitute_range_var(const EventP& e, const DSym& v, const DSym& d) {
  return sub_ev(e, v, d);
}
TermP substitute_range_var(const TermP& t, const DSym& v, const DSym& d) {
  return sub_tm(t, v, d);
}
FormulaP substitute_range_var(const FormulaP& f, const DSym& v, const DSym& d) {
  switch (f->kind) {
    case Formula::Kind::Geq: {
      TermP a = sub_tm(f->t1, v, d), b = sub_tm(f->t2, v, d);
      return a == f->t1 && b == f->t2 ? f : fm_geq(a, b);
    }
    case Formula::Kind::SymEq: {
      DSym a = sub_d(f->d1, v, d), b = sub_d(f->d2, v, d);
      return a == f->d1 && b == f->d2 ? f : fm_symeq(a, b);
    }
    case Formula::Kind::Not: {
      FormulaP a = substitute_range_var(f->a, v, d);
      return a == f->a ? f : fm_not(a);
    }
    case Formula::Kind::And: {
      FormulaP a = substitute_range_var(f->a, v, d);
      FormulaP b = substitute_range_var(f->b, v, d);
      return a == f->a && b == f->b ? f : fm_and(a, b);
    }
  }
  return f;
}

EventP substitute_event(const EventP& e, const EventP& pat, const EventP& repl) {
  if (equal(e, pat))
    return repl;
  switch (e->kind) {
    case Event::Kind::Top:
    case Event::Kind::Atom: return e;
    case Event::Kind::Not: {
      EventP a = substitute_event(e->a, pat, repl);
      return a == e->a ? e : ev_not(a);
    }
    case Event::Kind::And: {
      EventP a = substitute_event(e->a, pat, repl);
      EventP b = substitute_event(e->b, pat, repl);
      return a == e->a && b == e->b ? e : ev_and(a, b);
    }
    case Event::Kind::Box: {
      EventP a = substitute_event(e->a, pat, repl);
      EventP b = substitute_event(e->b, pat, repl);
      return a == e->a && b == e->b ? e : ev_box(a, b);
    }
  }
  return e;
}

TermP substitute_event(const TermP& t, const EventP& pat, const EventP& repl) {
  switch (t->kind) {
    case Term::Kind::Prob: {
      EventP ev = substitute_event(t->ev, pat, repl);
      EventP cond = substitute_event(t->cond, pat, repl);
      return ev == t->ev && cond == t->cond ? t : tm_prob(ev, cond);
    }
    case Term::Kind::Sum: {
      TermP a = substitute_event(t->a, pat, repl);
      return a == t->a ? t : tm_sum(t->bound, a);
    }
    case Term::Kind::Add: {
      TermP a = substitute_event(t->a, pat, repl);
      TermP b = substitute_event(t->b, pat, repl);
      return a == t->a && b == t->b ? t : tm_add(a, b);
    }
    case Term::Kind::Mul: {
      TermP a = substitute_event(t->a, pat, repl);
      TermP b = substitute_event(t->b, pat, repl);
      return a == t->a && b == t->b ? t : tm_mul(a, b);
    }
    case Term::Kind::Neg: {
      TermP a = substitute_event(t->a, pat, repl);
      return a == t->a ? t : tm_neg(a);
    }
    case Term::Kind::Coef: return t;
  }
  return t;
}

FormulaP substitute_event(const FormulaP& f, const EventP& pat, const EventP& repl) {
  switch (f->kind) {
    case Formula::Kind::Geq: {
      TermP a = substitute_event(f->t1, pat, repl);
      TermP b = substitute_event(f->t2, pat, repl);
      return a == f->t1 && b == f->t2 ? f : fm_geq(a, b);
    }
    case Formula::Kind::SymEq: return f;
    case Formula::Kind::Not: {
      FormulaP a = substitute_event(f->a, pat, repl);
      return a == f->a ? f : fm_not(a);
    }
    case Formula::Kind::And: {
      FormulaP a = substitute_event(f->a, pat, repl);
      FormulaP b = substitute_event(f->b, pat, repl);
      return a == f->a && b == f->b ? f : fm_and(a, b);
    }
  }
  return f;
}

namespace {
void vars_ev(const EventP& e, std::set<VarId>& out) {
  switch (e->kind) {
    case Event::Kind::Top: return;
    case Event::Kind::Atom:
      out.insert(e->var);
      return;
    case Event::Kind::Not: vars_ev(e->a, out); return;
    case Event::Kind::And:
    case Event::Kind::Box:
      vars_ev(e->a, out);
      vars_ev(e->b, out);
      return;
  }
}
void vars_tm(const TermP& t, std::set<VarId>& out) {
  switch (t->kind) {
    case Term::Kind::Prob:
      vars_ev(t->ev, out);
      vars_ev(t->cond, out);
      return;
    case Term::Kind::Sum:
      out.insert(t->bound.var);
      vars_tm(t->a, out);
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      vars_tm(t->a, out);
      vars_tm(t->b, out);
      return;
    case Term::Kind::Neg: vars_tm(t->a, out); return;
    case Term::Kind::Coef: out.insert(t->sym.var); return;
  }
}
}  // namespace

std::set<VarId> vars_of(const FormulaP& f) {
  std::set<VarId> out;
  switch (f->kind) {
    case Formula::Kind::Geq:
      vars_tm(f->t1, out);
      vars_tm(f->t2, out);
      break;
    case Formula::Kind::SymEq:
      out.insert(f->d1.var);
      out.insert(f->d2.var);
      break;
    case Formula::Kind::Not: return vars_of(f->a);
    case Formula::Kind::And: {
      out = vars_of(f->a);
      for (VarId v : vars_of(f->b))
        out.insert(v);
      break;
    }
  }
  return out;
}

std::set<VarId> vars_of(const Sequent& s) {
  std::set<VarId> out = vars_of(s.conclusion);
  for (const auto& p : s.premises)
    for (VarId v : vars_of(p))
      out.insert(v);
  return out;
}

}  // namespace sumlogic
