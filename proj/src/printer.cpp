#include "sumlogic/printer.hpp"

namespace sumlogic {

namespace {

// Event levels: And = 0, Not/Box = 1, atoms = 2.
int ev_level(const Event& e) {
  switch (e.kind) {
    case Event::Kind::And: return 0;
    case Event::Kind::Not:
    case Event::Kind::Box: return 1;
    default: return 2;
  }
}

std::string atom_val(const DSym& d, const Signature& sig) {
  if (d.is_const)
    return "c" + std::to_string(d.idx);
  return sig.dsym_str(d);
}

std::string pr_ev(const EventP& e, const Signature& sig, int min_level) {
  std::string s;
  switch (e->kind) {
    case Event::Kind::Top: s = "T"; break;
    case Event::Kind::Atom:
      s = sig.name(e->var) + "=" + atom_val(e->val, sig);
      break;
    case Event::Kind::Not: s = "!" + pr_ev(e->a, sig, 1); break;
    case Event::Kind::And:
      s = pr_ev(e->a, sig, 0) + " & " + pr_ev(e->b, sig, 1);
      break;
    case Event::Kind::Box:
      s = "[" + pr_ev(e->a, sig, 0) + "] " + pr_ev(e->b, sig, 1);
      break;
  }
  if (ev_level(*e) < min_level)
    return "(" + s + ")";
  return s;
}

// Term levels: Sum = 0, Add = 1, Mul = 2, Neg = 3, atoms = 4.
int tm_level(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Sum: return 0;
    case Term::Kind::Add: return 1;
    case Term::Kind::Mul: return 2;
    case Term::Kind::Neg: return 3;
    default: return 4;
  }
}

std::string pr_tm(const TermP& t, const Signature& sig, int min_level) {
  std::string s;
  switch (t->kind) {
    case Term::Kind::Prob:
      s = "P(" + pr_ev(t->ev, sig, 0);
      if (t->cond->kind != Event::Kind::Top)
        s += " | " + pr_ev(t->cond, sig, 0);
      s += ")";
      break;
    case Term::Kind::Sum:
      s = "sum " + sig.dsym_str(t->bound) + " . " + pr_tm(t->a, sig, 0);
      break;
    case Term::Kind::Add:
      if (t->b->kind == Term::Kind::Neg)
        s = pr_tm(t->a, sig, 1) + " - " + pr_tm(t->b->a, sig, 2);
      else
        s = pr_tm(t->a, sig, 1) + " + " + pr_tm(t->b, sig, 2);
      break;
    case Term::Kind::Mul:
      s = pr_tm(t->a, sig, 2) + " * " + pr_tm(t->b, sig, 3);
      break;
    case Term::Kind::Neg: s = "-" + pr_tm(t->a, sig, 3); break;
    case Term::Kind::Coef: s = sig.dsym_str(t->sym); break;
  }
  if (tm_level(*t) < min_level)
    return "(" + s + ")";
  return s;
}

// Formula levels: And = 0, Not = 1, atoms = 2.
int fm_level(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::And: return 0;
    case Formula::Kind::Not: return 1;
    default: return 2;
  }
}

std::string pr_fm(const FormulaP& f, const Signature& sig, int min_level) {
  std::string s;
  switch (f->kind) {
    case Formula::Kind::Geq:
      s = pr_tm(f->t1, sig, 0) + " >= " + pr_tm(f->t2, sig, 0);
      break;
    case Formula::Kind::SymEq:
      s = sig.dsym_str(f->d1) + " ~ " + sig.dsym_str(f->d2);
      break;
    case Formula::Kind::Not:
      // Comparisons directly under a negation get parentheses for
      // readability; the parser accepts either spelling.
      if (f->a->kind == Formula::Kind::Geq || f->a->kind == Formula::Kind::SymEq)
        s = "!(" + pr_fm(f->a, sig, 0) + ")";
      else
        s = "!" + pr_fm(f->a, sig, 1);
      break;
    case Formula::Kind::And:
      s = pr_fm(f->a, sig, 0) + " & " + pr_fm(f->b, sig, 1);
      break;
  }
  if (fm_level(*f) < min_level)
    return "(" + s + ")";
  return s;
}

}  // namespace

std::string print_event(const EventP& e, const Signature& sig) {
  return pr_ev(e, sig, 0);
}
std::string print_term(const TermP& t, const Signature& sig) {
  return pr_tm(t, sig, 0);
}
std::string print_formula(const FormulaP& f, const Signature& sig) {
  return pr_fm(f, sig, 0);
}
std::string print_sequent(const Sequent& s, const Signature& sig) {
  std::string out;
  for (size_t i = 0; i < s.premises.size(); ++i) {
    if (i)
      out += "; ";
    out += print_formula(s.premises[i], sig);
  }
  out += out.empty() ? "|- " : " |- ";
  out += print_formula(s.conclusion, sig);
  return out;
}

}  // namespace sumlogic
