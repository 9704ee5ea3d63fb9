#include "sumlogic/shapes.hpp"

namespace sumlogic {

std::optional<ImpParts> match_imp(const FormulaP& f) {
  if (f->kind != Formula::Kind::Not) return {};
  const FormulaP& g = f->a;
  if (g->kind != Formula::Kind::And) return {};
  if (g->b->kind != Formula::Kind::Not) return {};
  return ImpParts{g->a, g->b->a};
}

std::optional<std::pair<TermP, TermP>> match_eq(const FormulaP& f) {
  if (f->kind != Formula::Kind::And) return {};
  const FormulaP& l = f->a;
  const FormulaP& r = f->b;
  if (l->kind != Formula::Kind::Geq || r->kind != Formula::Kind::Geq) return {};
  if (!equal(l->t1, r->t2) || !equal(l->t2, r->t1)) return {};
  return std::make_pair(l->t1, l->t2);
}

std::optional<std::pair<TermP, TermP>> match_gt(const FormulaP& f) {
  if (f->kind != Formula::Kind::And) return {};
  const FormulaP& l = f->a;
  const FormulaP& r = f->b;
  if (l->kind != Formula::Kind::Geq || r->kind != Formula::Kind::Not) return {};
  const FormulaP& rg = r->a;
  if (rg->kind != Formula::Kind::Geq) return {};
  if (!equal(l->t1, rg->t2) || !equal(l->t2, rg->t1)) return {};
  return std::make_pair(l->t1, l->t2);
}

std::optional<std::pair<FormulaP, FormulaP>> match_iff(const FormulaP& f) {
  if (f->kind != Formula::Kind::And) return {};
  auto i1 = match_imp(f->a);
  auto i2 = match_imp(f->b);
  if (!i1 || !i2) return {};
  if (!equal(i1->a, i2->b) || !equal(i1->b, i2->a)) return {};
  return std::make_pair(i1->a, i1->b);
}

std::optional<std::pair<FormulaP, FormulaP>> match_or(const FormulaP& f) {
  if (f->kind != Formula::Kind::Not) return {};
  const FormulaP& g = f->a;
  if (g->kind != Formula::Kind::And) return {};
  if (g->a->kind != Formula::Kind::Not || g->b->kind != Formula::Kind::Not)
    return {};
  return std::make_pair(g->a->a, g->b->a);
}

std::optional<std::pair<EventP, EventP>> match_or_event(const EventP& e) {
  if (e->kind != Event::Kind::Not) return {};
  const EventP& g = e->a;
  if (g->kind != Event::Kind::And) return {};
  if (g->a->kind != Event::Kind::Not || g->b->kind != Event::Kind::Not)
    return {};
  return std::make_pair(g->a->a, g->b->a);
}

void flatten_add(const TermP& t, std::vector<TermP>& out) {
  if (t->kind == Term::Kind::Add) {
    flatten_add(t->a, out);
    out.push_back(t->b);
  } else {
    out.push_back(t);
  }
}

void flatten_and(const FormulaP& f, std::vector<FormulaP>& out) {
  if (f->kind == Formula::Kind::And) {
    flatten_and(f->a, out);
    out.push_back(f->b);
  } else {
    out.push_back(f);
  }
}

void flatten_and_event(const EventP& e, std::vector<EventP>& out) {
  if (e->kind == Event::Kind::And) {
    flatten_and_event(e->a, out);
    out.push_back(e->b);
  } else {
    out.push_back(e);
  }
}

namespace {

void consts_ev(const EventP& e, std::set<DSym>& out) {
  switch (e->kind) {
    case Event::Kind::Top: return;
    case Event::Kind::Atom:
      if (e->val.is_const) out.insert(e->val);
      return;
    case Event::Kind::Not: consts_ev(e->a, out); return;
    case Event::Kind::And:
    case Event::Kind::Box:
      consts_ev(e->a, out);
      consts_ev(e->b, out);
      return;
  }
}

void consts_tm(const TermP& t, std::set<DSym>& out) {
  switch (t->kind) {
    case Term::Kind::Prob:
      consts_ev(t->ev, out);
      consts_ev(t->cond, out);
      return;
    case Term::Kind::Sum:
    case Term::Kind::Neg:
      consts_tm(t->a, out);
      return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      consts_tm(t->a, out);
      consts_tm(t->b, out);
      return;
    case Term::Kind::Coef:
      if (t->sym.is_const) out.insert(t->sym);
      return;
  }
}

void consts_fm(const FormulaP& f, std::set<DSym>& out) {
  switch (f->kind) {
    case Formula::Kind::Geq:
      consts_tm(f->t1, out);
      consts_tm(f->t2, out);
      return;
    case Formula::Kind::SymEq:
      if (f->d1.is_const) out.insert(f->d1);
      if (f->d2.is_const) out.insert(f->d2);
      return;
    case Formula::Kind::Not: consts_fm(f->a, out); return;
    case Formula::Kind::And:
      consts_fm(f->a, out);
      consts_fm(f->b, out);
      return;
  }
}

}  // namespace

std::set<DSym> consts_in(const FormulaP& f) {
  std::set<DSym> out;
  consts_fm(f, out);
  return out;
}

bool is_zero_numeral(const TermP& t) {
  auto n = as_numeral(t);
  return n && *n == 0;
}

}  // namespace sumlogic
