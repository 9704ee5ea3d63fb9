#include "sumlogic/fragment.hpp"

#include <map>

#include "sumlogic/subst.hpp"

namespace sumlogic {

bool is_int_formula(const EventP& e) {
  switch (e->kind) {
    case Event::Kind::Top:
    case Event::Kind::Atom: return true;
    case Event::Kind::And: return is_int_formula(e->a) && is_int_formula(e->b);
    default: return false;
  }
}

bool has_box(const EventP& e) {
  switch (e->kind) {
    case Event::Kind::Top:
    case Event::Kind::Atom: return false;
    case Event::Kind::Not: return has_box(e->a);
    case Event::Kind::And: return has_box(e->a) || has_box(e->b);
    case Event::Kind::Box: return true;
  }
  return false;
}

namespace {

bool collect_literals(const EventP& e, std::map<VarId, int>& counts) {
  switch (e->kind) {
    case Event::Kind::Atom:
      counts[e->var]++;
      return true;
    case Event::Kind::Not:
      if (e->a->kind != Event::Kind::Atom)
        return false;
      counts[e->a->var]++;
      return true;
    case Event::Kind::And:
      return collect_literals(e->a, counts) && collect_literals(e->b, counts);
    default:
      return false;
  }
}

}  // namespace

bool is_cond_formula(const EventP& e) {
  if (e->kind == Event::Kind::Top)
    return true;
  std::map<VarId, int> counts;
  if (!collect_literals(e, counts))
    return false;
  for (const auto& [v, n] : counts)
    if (n > 1)
      return false;
  return true;
}

namespace {

void scan_ev(const EventP& e, FragmentInfo& info) {
  switch (e->kind) {
    case Event::Kind::Top: return;
    case Event::Kind::Atom:
      if (e->val.is_const)
        info.max_const_index = std::max(info.max_const_index, e->val.idx);
      return;
    case Event::Kind::Not: scan_ev(e->a, info); return;
    case Event::Kind::And:
      scan_ev(e->a, info);
      scan_ev(e->b, info);
      return;
    case Event::Kind::Box:
      info.causal = true;
      scan_ev(e->a, info);
      scan_ev(e->b, info);
      return;
  }
}

void scan_tm(const TermP& t, FragmentInfo& info) {
  switch (t->kind) {
    case Term::Kind::Prob:
      scan_ev(t->ev, info);
      scan_ev(t->cond, info);
      if (!is_cond_formula(t->cond))
        info.cond_guarded = false;
      return;
    case Term::Kind::Sum: scan_tm(t->a, info); return;
    case Term::Kind::Add:
    case Term::Kind::Mul:
      scan_tm(t->a, info);
      scan_tm(t->b, info);
      return;
    case Term::Kind::Neg:
      info.circle = false;
      scan_tm(t->a, info);
      return;
    case Term::Kind::Coef:
      info.circle = false;
      if (t->sym.is_const)
        info.max_const_index = std::max(info.max_const_index, t->sym.idx);
      return;
  }
}

void scan_fm(const FormulaP& f, FragmentInfo& info) {
  switch (f->kind) {
    case Formula::Kind::Geq:
      scan_tm(f->t1, info);
      scan_tm(f->t2, info);
      return;
    case Formula::Kind::SymEq:
      for (const DSym* d : {&f->d1, &f->d2})
        if (d->is_const)
          info.max_const_index = std::max(info.max_const_index, d->idx);
      return;
    case Formula::Kind::Not: scan_fm(f->a, info); return;
    case Formula::Kind::And:
      scan_fm(f->a, info);
      scan_fm(f->b, info);
      return;
  }
}

}  // namespace

FragmentInfo classify_fragment(const FormulaP& f) {
  FragmentInfo info;
  scan_fm(f, info);
  info.closed = free_range_vars(f).empty();
  return info;
}

}  // namespace sumlogic
