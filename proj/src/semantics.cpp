#include "sumlogic/semantics.hpp"

#include "sumlogic/printer.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

XReal Evaluator::eval_term(const TermP& t, Assignment& iota) {
  switch (t->kind) {
    case Term::Kind::Prob: {
      Rational den = ev_.event_probability(t->cond, iota);
      XReal result;
      if (den.is_zero()) {
        result = XReal::undef();
      } else {
        Rational num = ev_.event_probability(ev_and(t->ev, t->cond), iota);
        result = XReal::finite(num / den);
      }
      if (trace_)
        trace_->push_back({print_term(t, ev_.model().sig), result.str()});
      return result;
    }
    case Term::Kind::Sum: {
      const auto& range = ev_.model().vars.at(t->bound.var).range;
      auto old = iota.find(t->bound);
      std::optional<int> saved;
      if (old != iota.end())
        saved = old->second;
      XReal acc = XReal::finite(Rational(0));
      bool first = true;
      for (int value : range) {
        iota[t->bound] = value;
        XReal x = eval_term(t->a, iota);
        acc = first ? x : acc + x;
        first = false;
        if (acc.is_undef())
          break;
      }
      if (saved)
        iota[t->bound] = *saved;
      else
        iota.erase(t->bound);
      return acc;
    }
    case Term::Kind::Add: {
      // left argument first, so traces are deterministic
      XReal a = eval_term(t->a, iota);
      return a + eval_term(t->b, iota);
    }
    case Term::Kind::Mul: {
      XReal a = eval_term(t->a, iota);
      return a * eval_term(t->b, iota);
    }
    case Term::Kind::Neg: return -eval_term(t->a, iota);
    case Term::Kind::Coef:
      return XReal::finite(Rational(ev_.model().dsym_value(t->sym, iota)));
  }
  return XReal::undef();
}

bool Evaluator::satisfies(const FormulaP& f, Assignment& iota) {
  switch (f->kind) {
    case Formula::Kind::Geq: {
      auto cmp = XReal::compare(eval_term(f->t1, iota), eval_term(f->t2, iota));
      return cmp && *cmp >= 0;
    }
    case Formula::Kind::SymEq:
      return ev_.model().dsym_value(f->d1, iota) ==
             ev_.model().dsym_value(f->d2, iota);
    case Formula::Kind::Not: return !satisfies(f->a, iota);
    case Formula::Kind::And:
      return satisfies(f->a, iota) && satisfies(f->b, iota);
  }
  return false;
}

XReal eval_term(const Scm& m, const TermP& t, const Assignment& iota) {
  Evaluator ev(m);
  Assignment io = iota;
  return ev.eval_term(t, io);
}

bool satisfies(const Scm& m, const FormulaP& f, const Assignment& iota) {
  Evaluator ev(m);
  Assignment io = iota;
  return ev.satisfies(f, io);
}

ValidityReport valid_in_model(const Scm& m, const FormulaP& f) {
  ValidityReport rep;
  auto free_set = free_range_vars(f);
  std::vector<DSym> free(free_set.begin(), free_set.end());
  Evaluator ev(m);
  Assignment iota;
  // Nested enumeration in symbol order, values ascending.
  std::vector<size_t> pick(free.size(), 0);
  while (true) {
    for (size_t i = 0; i < free.size(); ++i)
      iota[free[i]] = m.vars.at(free[i].var).range.at(pick[i]);
    if (!ev.satisfies(f, iota)) {
      rep.valid = false;
      rep.counterexample = iota;
      return rep;
    }
    size_t i = free.size();
    while (i > 0) {
      --i;
      if (++pick[i] < m.vars.at(free[i].var).range.size())
        break;
      pick[i] = 0;
      if (i == 0)
        return rep;
    }
    if (free.empty())
      return rep;
  }
}

SequentReport satisfies_sequent(const Scm& m, const Sequent& s) {
  SequentReport rep;
  for (size_t i = 0; i < s.premises.size(); ++i) {
    if (!valid_in_model(m, s.premises[i]).valid) {
      rep.satisfied = true;
      rep.invalid_premise = (int)i;
      return rep;
    }
  }
  rep.conclusion_valid = valid_in_model(m, s.conclusion).valid;
  rep.satisfied = rep.conclusion_valid;
  return rep;
}

}  // namespace sumlogic
