#include "sumlogic/ast.hpp"

namespace sumlogic {

VarId Signature::add_var(const std::string& name) {
  if (name.empty() || name[0] < 'A' || name[0] > 'Z')
    throw SyntaxError("variable name must start with an uppercase letter: " + name);
  for (char c : name)
    if (!isalnum((unsigned char)c) && c != '_')
      throw SyntaxError("bad character in variable name: " + name);
  if (isdigit((unsigned char)name.back()))
    throw SyntaxError("variable name may not end in a digit: " + name);
  std::string stem = lowercase(name);
  if (stem == "c" || stem == "p" || stem == "t" || stem == "f" || stem == "sum")
    throw SyntaxError("variable name collides with a reserved token: " + name);
  for (const auto& s : stems_)
    if (s == stem)
      throw SyntaxError("variable names must be unique case-insensitively: " + name);
  names_.push_back(name);
  stems_.push_back(stem);
  return (VarId)names_.size() - 1;
}

std::optional<VarId> Signature::lookup(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name)
      return (VarId)i;
  return std::nullopt;
}

std::optional<VarId> Signature::lookup_stem(const std::string& stem) const {
  for (size_t i = 0; i < stems_.size(); ++i)
    if (stems_[i] == stem)
      return (VarId)i;
  return std::nullopt;
}

std::string Signature::dsym_str(const DSym& d) const {
  if (d.is_const)
    return "c" + std::to_string(d.idx) + "@" + name(d.var);
  return stems_.at(d.var) + std::to_string(d.idx);
}

std::string lowercase(const std::string& s) {
  std::string r = s;
  for (char& c : r)
    c = (char)tolower((unsigned char)c);
  return r;
}

namespace {
EventP mk_ev(Event e) { return std::make_shared<const Event>(std::move(e)); }
TermP mk_tm(Term t) { return std::make_shared<const Term>(std::move(t)); }
FormulaP mk_fm(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
}  // namespace

EventP ev_top() {
  static EventP top = mk_ev({Event::Kind::Top});
  return top;
}
EventP ev_bot() {
  static EventP bot = ev_not(ev_top());
  return bot;
}
EventP ev_atom(VarId v, DSym d) {
  Event e{Event::Kind::Atom};
  e.var = v;
  e.val = d;
  return mk_ev(std::move(e));
}
EventP ev_not(EventP e) {
  Event r{Event::Kind::Not};
  r.a = std::move(e);
  return mk_ev(std::move(r));
}
EventP ev_and(EventP a, EventP b) {
  Event r{Event::Kind::And};
  r.a = std::move(a);
  r.b = std::move(b);
  return mk_ev(std::move(r));
}
EventP ev_or(EventP a, EventP b) {
  return ev_not(ev_and(ev_not(std::move(a)), ev_not(std::move(b))));
}
EventP ev_box(EventP intervention, EventP body) {
  Event r{Event::Kind::Box};
  r.a = std::move(intervention);
  r.b = std::move(body);
  return mk_ev(std::move(r));
}

TermP tm_prob(EventP ev, EventP cond) {
  Term t{Term::Kind::Prob};
  t.ev = std::move(ev);
  t.cond = std::move(cond);
  return mk_tm(std::move(t));
}
TermP tm_prob(EventP ev) { return tm_prob(std::move(ev), ev_top()); }
TermP tm_sum(DSym range_var, TermP body) {
  Term t{Term::Kind::Sum};
  t.bound = range_var;
  t.a = std::move(body);
  return mk_tm(std::move(t));
}
TermP tm_add(TermP a, TermP b) {
  Term t{Term::Kind::Add};
  t.a = std::move(a);
  t.b = std::move(b);
  return mk_tm(std::move(t));
}
TermP tm_mul(TermP a, TermP b) {
  Term t{Term::Kind::Mul};
  t.a = std::move(a);
  t.b = std::move(b);
  return mk_tm(std::move(t));
}
TermP tm_neg(TermP a) {
  Term t{Term::Kind::Neg};
  t.a = std::move(a);
  return mk_tm(std::move(t));
}
TermP tm_coef(DSym d) {
  Term t{Term::Kind::Coef};
  t.sym = d;
  return mk_tm(std::move(t));
}
TermP tm_num(long n) {
  if (n == 0)
    return tm_prob(ev_bot());
  TermP acc = tm_prob(ev_top());
  for (long i = 1; i < n; ++i)
    acc = tm_add(acc, tm_prob(ev_top()));
  return acc;
}

FormulaP fm_geq(TermP a, TermP b) {
  Formula f{Formula::Kind::Geq};
  f.t1 = std::move(a);
  f.t2 = std::move(b);
  return mk_fm(std::move(f));
}
FormulaP fm_symeq(DSym a, DSym b) {
  Formula f{Formula::Kind::SymEq};
  f.d1 = a;
  f.d2 = b;
  return mk_fm(std::move(f));
}
FormulaP fm_not(FormulaP a) {
  Formula f{Formula::Kind::Not};
  f.a = std::move(a);
  return mk_fm(std::move(f));
}
FormulaP fm_and(FormulaP a, FormulaP b) {
  Formula f{Formula::Kind::And};
  f.a = std::move(a);
  f.b = std::move(b);
  return mk_fm(std::move(f));
}
FormulaP fm_or(FormulaP a, FormulaP b) {
  return fm_not(fm_and(fm_not(std::move(a)), fm_not(std::move(b))));
}
FormulaP fm_imp(FormulaP a, FormulaP b) {
  return fm_not(fm_and(std::move(a), fm_not(std::move(b))));
}
FormulaP fm_iff(FormulaP a, FormulaP b) {
  return fm_and(fm_imp(a, b), fm_imp(b, a));
}
FormulaP fm_eq(TermP a, TermP b) { return fm_and(fm_geq(a, b), fm_geq(b, a)); }
FormulaP fm_leq(TermP a, TermP b) { return fm_geq(std::move(b), std::move(a)); }
FormulaP fm_gt(TermP a, TermP b) {
  return fm_and(fm_geq(a, b), fm_not(fm_geq(b, a)));
}
FormulaP fm_lt(TermP a, TermP b) {
  return fm_and(fm_geq(b, a), fm_not(fm_geq(a, b)));
}
FormulaP fm_and_all(const std::vector<FormulaP>& fs) {
  FormulaP acc = fs.at(0);
  for (size_t i = 1; i < fs.size(); ++i)
    acc = fm_and(acc, fs[i]);
  return acc;
}

bool equal(const EventP& a, const EventP& b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
    case Event::Kind::Top: return true;
    case Event::Kind::Atom: return a->var == b->var && a->val == b->val;
    case Event::Kind::Not: return equal(a->a, b->a);
    case Event::Kind::And:
    case Event::Kind::Box: return equal(a->a, b->a) && equal(a->b, b->b);
  }
  return false;
}

bool equal(const TermP& a, const TermP& b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
    case Term::Kind::Prob: return equal(a->ev, b->ev) && equal(a->cond, b->cond);
    case Term::Kind::Sum: return a->bound == b->bound && equal(a->a, b->a);
    case Term::Kind::Add:
    case Term::Kind::Mul: return equal(a->a, b->a) && equal(a->b, b->b);
    case Term::Kind::Neg: return equal(a->a, b->a);
    case Term::Kind::Coef: return a->sym == b->sym;
  }
  return false;
}

bool equal(const FormulaP& a, const FormulaP& b) {
  if (a == b)
    return true;
  if (!a || !b || a->kind != b->kind)
    return false;
  switch (a->kind) {
    case Formula::Kind::Geq: return equal(a->t1, b->t1) && equal(a->t2, b->t2);
    case Formula::Kind::SymEq: return a->d1 == b->d1 && a->d2 == b->d2;
    case Formula::Kind::Not: return equal(a->a, b->a);
    case Formula::Kind::And: return equal(a->a, b->a) && equal(a->b, b->b);
  }
  return false;
}

namespace {
size_t mix(size_t h, size_t v) { return h * 1000003u ^ (v + 0x9e3779b9u); }
size_t hash_dsym(const DSym& d) {
  return mix(mix((size_t)d.var, d.is_const ? 1 : 2), (size_t)d.idx);
}
}  // namespace

size_t hash_of(const EventP& e) {
  if (!e)
    return 0;
  size_t h = (size_t)e->kind + 11;
  switch (e->kind) {
    case Event::Kind::Top: return h;
    case Event::Kind::Atom: return mix(mix(h, (size_t)e->var), hash_dsym(e->val));
    case Event::Kind::Not: return mix(h, hash_of(e->a));
    case Event::Kind::And:
    case Event::Kind::Box: return mix(mix(h, hash_of(e->a)), hash_of(e->b));
  }
  return h;
}

size_t hash_of(const TermP& t) {
  if (!t)
    return 0;
  size_t h = (size_t)t->kind + 37;
  switch (t->kind) {
    case Term::Kind::Prob: return mix(mix(h, hash_of(t->ev)), hash_of(t->cond));
    case Term::Kind::Sum: return mix(mix(h, hash_dsym(t->bound)), hash_of(t->a));
    case Term::Kind::Add:
    case Term::Kind::Mul: return mix(mix(h, hash_of(t->a)), hash_of(t->b));
    case Term::Kind::Neg: return mix(h, hash_of(t->a));
    case Term::Kind::Coef: return mix(h, hash_dsym(t->sym));
  }
  return h;
}

size_t hash_of(const FormulaP& f) {
  if (!f)
    return 0;
  size_t h = (size_t)f->kind + 71;
  switch (f->kind) {
    case Formula::Kind::Geq: return mix(mix(h, hash_of(f->t1)), hash_of(f->t2));
    case Formula::Kind::SymEq: return mix(mix(h, hash_dsym(f->d1)), hash_dsym(f->d2));
    case Formula::Kind::Not: return mix(h, hash_of(f->a));
    case Formula::Kind::And: return mix(mix(h, hash_of(f->a)), hash_of(f->b));
  }
  return h;
}

namespace {
bool is_top_prob(const TermP& t) {
  return t->kind == Term::Kind::Prob && t->ev->kind == Event::Kind::Top &&
         t->cond->kind == Event::Kind::Top;
}
}  // namespace

std::optional<long> as_numeral(const TermP& t) {
  if (!t)
    return std::nullopt;
  if (equal(t, tm_num(0)))
    return 0;
  // Left-nested P(T) chain.
  long n = 0;
  TermP cur = t;
  while (cur->kind == Term::Kind::Add) {
    if (!is_top_prob(cur->b))
      return std::nullopt;
    ++n;
    cur = cur->a;
  }
  if (!is_top_prob(cur))
    return std::nullopt;
  return n + 1;
}

bool is_one_numeral(const TermP& t) { return t && is_top_prob(t); }

}  // namespace sumlogic
