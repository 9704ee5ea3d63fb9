#include "sumlogic/grounding.hpp"

#include <algorithm>

#include "sumlogic/parser.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

void check_index(int idx, const GroundCtx& ctx) {
  if (idx > ctx.n)
    throw SyntaxError("constant index " + std::to_string(idx) +
                      " outside the bounded signature (N=" +
                      std::to_string(ctx.n) + ")");
}

void check_event(const EventP& e, const GroundCtx& ctx) {
  switch (e->kind) {
    case Event::Kind::Top: return;
    case Event::Kind::Atom:
      if (e->val.is_const)
        check_index(e->val.idx, ctx);
      return;
    case Event::Kind::Not: check_event(e->a, ctx); return;
    case Event::Kind::And:
    case Event::Kind::Box:
      check_event(e->a, ctx);
      check_event(e->b, ctx);
      return;
  }
}

TermP unfold_tm(const TermP& t, const GroundCtx& ctx) {
  switch (t->kind) {
    case Term::Kind::Prob:
      check_event(t->ev, ctx);
      check_event(t->cond, ctx);
      return t;
    case Term::Kind::Sum: {
      TermP out;
      for (int k = 1; k <= ctx.n; ++k) {
        TermP inst = unfold_tm(
            substitute_range_var(t->a, t->bound, const_sym(t->bound.var, k)),
            ctx);
        out = out ? tm_add(out, inst) : inst;
      }
      return out;
    }
    case Term::Kind::Add: {
      TermP a = unfold_tm(t->a, ctx), b = unfold_tm(t->b, ctx);
      return a == t->a && b == t->b ? t : tm_add(a, b);
    }
    case Term::Kind::Mul: {
      TermP a = unfold_tm(t->a, ctx), b = unfold_tm(t->b, ctx);
      // a coefficient of value 1 unfolds to the literal P(T), which the
      // canonical form keeps out of products
      if (is_trivial_den(a) || is_trivial_den(b))
        return mul_elide(a, b);
      return a == t->a && b == t->b ? t : tm_mul(a, b);
    }
    case Term::Kind::Neg: {
      TermP a = unfold_tm(t->a, ctx);
      return a == t->a ? t : tm_neg(a);
    }
    case Term::Kind::Coef:
      if (!t->sym.is_const)
        throw SyntaxError("free range variable coefficient " +
                          std::string("#") + std::to_string(t->sym.idx) +
                          " cannot be unfolded; close the formula first");
      check_index(t->sym.idx, ctx);
      return tm_num(t->sym.idx);
  }
  return t;
}

}  // namespace

TermP unfold_sums(const TermP& t, const GroundCtx& ctx) {
  if (ctx.n < 1)
    throw SyntaxError("bounded signature needs N >= 1");
  return unfold_tm(t, ctx);
}

FormulaP unfold_sums(const FormulaP& f, const GroundCtx& ctx) {
  switch (f->kind) {
    case Formula::Kind::Geq: {
      TermP a = unfold_sums(f->t1, ctx), b = unfold_sums(f->t2, ctx);
      return a == f->t1 && b == f->t2 ? f : fm_geq(a, b);
    }
    case Formula::Kind::SymEq:
      if (f->d1.is_const)
        check_index(f->d1.idx, ctx);
      if (f->d2.is_const)
        check_index(f->d2.idx, ctx);
      return f;
    case Formula::Kind::Not: {
      FormulaP a = unfold_sums(f->a, ctx);
      return a == f->a ? f : fm_not(a);
    }
    case Formula::Kind::And: {
      FormulaP a = unfold_sums(f->a, ctx), b = unfold_sums(f->b, ctx);
      return a == f->a && b == f->b ? f : fm_and(a, b);
    }
  }
  return f;
}

FormulaP universal_closure(const FormulaP& f, const GroundCtx& ctx) {
  if (ctx.n < 1)
    throw SyntaxError("bounded signature needs N >= 1");
  auto free_set = free_range_vars(f);
  if (free_set.empty())
    return f;
  std::vector<DSym> free(free_set.begin(), free_set.end());
  std::vector<int> odo(free.size(), 1);
  std::vector<FormulaP> conjuncts;
  for (;;) {
    FormulaP inst = f;
    for (size_t i = 0; i < free.size(); ++i)
      inst = substitute_range_var(inst, free[i],
                                  const_sym(free[i].var, odo[i]));
    conjuncts.push_back(inst);
    size_t i = free.size();
    while (i > 0 && odo[i - 1] == ctx.n)
      odo[--i] = 1;
    if (i == 0)
      break;
    ++odo[i - 1];
  }
  return fm_and_all(conjuncts);
}

namespace {

// Quotient form of a term with conditionals cleared into numerators and
// denominators; `where` breadcrumbs feed the error message.
TermQ cond_quotient(const TermP& t, std::vector<std::string>& where) {
  switch (t->kind) {
    case Term::Kind::Prob: {
      if (t->cond->kind == Event::Kind::Top)
        return qnum(t);
      return TermQ{tm_prob(ev_and(t->ev, t->cond)), tm_prob(t->cond)};
    }
    case Term::Kind::Sum: {
      where.push_back("sum over variable " + std::to_string(t->bound.var) +
                      "#" + std::to_string(t->bound.idx));
      TermQ a = cond_quotient(t->a, where);
      TermQ out;
      try {
        out = q_sum(t->bound, a);
      } catch (const SyntaxError&) {
        std::string path;
        for (const auto& w : where)
          path += (path.empty() ? "" : " > ") + w;
        throw SyntaxError(
            "conditional probability not reducible: its condition depends on "
            "the bound variable (" + path + ")");
      }
      where.pop_back();
      return out;
    }
    case Term::Kind::Add: {
      where.push_back("left of +");
      TermQ a = cond_quotient(t->a, where);
      where.back() = "right of +";
      TermQ b = cond_quotient(t->b, where);
      where.pop_back();
      return q_add(a, b);
    }
    case Term::Kind::Mul: {
      where.push_back("left of *");
      TermQ a = cond_quotient(t->a, where);
      where.back() = "right of *";
      TermQ b = cond_quotient(t->b, where);
      where.pop_back();
      return q_mul(a, b);
    }
    case Term::Kind::Neg: {
      where.push_back("under -");
      TermQ a = cond_quotient(t->a, where);
      where.pop_back();
      return q_neg(a);
    }
    case Term::Kind::Coef: return qnum(t);
  }
  return qnum(t);
}

bool has_conditional(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Prob: return t->cond->kind != Event::Kind::Top;
    case Term::Kind::Sum:
    case Term::Kind::Neg: return has_conditional(t->a);
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return has_conditional(t->a) || has_conditional(t->b);
    case Term::Kind::Coef: return false;
  }
  return false;
}

}  // namespace

FormulaP eliminate_conditionals(const FormulaP& f) {
  switch (f->kind) {
    case Formula::Kind::Geq: {
      if (!has_conditional(f->t1) && !has_conditional(f->t2))
        return f;
      std::vector<std::string> where;
      where.push_back("left of comparison");
      TermQ l = cond_quotient(f->t1, where);
      where.back() = "right of comparison";
      TermQ r = cond_quotient(f->t2, where);
      return fm_geq(mul_elide(l.num, r.den), mul_elide(r.num, l.den));
    }
    case Formula::Kind::SymEq: return f;
    case Formula::Kind::Not: {
      FormulaP a = eliminate_conditionals(f->a);
      return a == f->a ? f : fm_not(a);
    }
    case Formula::Kind::And: {
      FormulaP a = eliminate_conditionals(f->a);
      FormulaP b = eliminate_conditionals(f->b);
      return a == f->a && b == f->b ? f : fm_and(a, b);
    }
  }
  return f;
}

size_t event_size(const EventP& e) {
  switch (e->kind) {
    case Event::Kind::Top:
    case Event::Kind::Atom: return 1;
    case Event::Kind::Not: return 1 + event_size(e->a);
    case Event::Kind::And:
    case Event::Kind::Box: return 1 + event_size(e->a) + event_size(e->b);
  }
  return 1;
}

size_t term_size(const TermP& t) {
  switch (t->kind) {
    case Term::Kind::Prob: return 1 + event_size(t->ev) + event_size(t->cond);
    case Term::Kind::Sum:
    case Term::Kind::Neg: return 1 + term_size(t->a);
    case Term::Kind::Add:
    case Term::Kind::Mul: return 1 + term_size(t->a) + term_size(t->b);
    case Term::Kind::Coef: return 1;
  }
  return 1;
}

size_t formula_size(const FormulaP& f) {
  switch (f->kind) {
    case Formula::Kind::Geq: return 1 + term_size(f->t1) + term_size(f->t2);
    case Formula::Kind::SymEq: return 1;
    case Formula::Kind::Not: return 1 + formula_size(f->a);
    case Formula::Kind::And:
      return 1 + formula_size(f->a) + formula_size(f->b);
  }
  return 1;
}

}  // namespace sumlogic
