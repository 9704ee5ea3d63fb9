#include "sumlogic/parser.hpp"

#include <cctype>

#include "sumlogic/fragment.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

bool is_trivial_den(const TermP& t) {
  return t->kind == Term::Kind::Prob && t->ev->kind == Event::Kind::Top &&
         t->cond->kind == Event::Kind::Top;
}

TermP mul_elide(const TermP& a, const TermP& b) {
  if (is_trivial_den(b))
    return a;
  if (is_trivial_den(a))
    return b;
  return tm_mul(a, b);
}

TermQ qnum(TermP t) { return TermQ{std::move(t), tm_prob(ev_top())}; }

TermQ q_add(const TermQ& a, const TermQ& b) {
  if (equal(a.den, b.den))
    return TermQ{tm_add(a.num, b.num), a.den};
  return TermQ{tm_add(mul_elide(a.num, b.den), mul_elide(b.num, a.den)),
               mul_elide(a.den, b.den)};
}
TermQ q_mul(const TermQ& a, const TermQ& b) {
  return TermQ{mul_elide(a.num, b.num), mul_elide(a.den, b.den)};
}
TermQ q_div(const TermQ& a, const TermQ& b) {
  return TermQ{mul_elide(a.num, b.den), mul_elide(a.den, b.num)};
}
TermQ q_neg(const TermQ& a) { return TermQ{tm_neg(a.num), a.den}; }
TermQ q_sum(const DSym& v, const TermQ& a) {
  if (has_free(a.den, v))
    throw SyntaxError("bound range variable occurs in a denominator");
  return TermQ{tm_sum(v, a.num), a.den};
}

namespace {

enum class Tok {
  End, Ident, Int, LParen, RParen, LBrack, RBrack, Dot, At, Semi, Turnstile,
  Bar, OrOr, Amp, Bang, Arrow, Iff, Tilde, NotTilde, Eq, EqEq, Geq, Leq, Gt,
  Lt, Plus, Minus, Star, Slash
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0, n = s.size();
  auto push = [&](Tok k, size_t at, std::string t) {
    out.push_back({k, std::move(t), at});
  };
  while (i < n) {
    char c = s[i];
    if (isspace((unsigned char)c)) {
      ++i;
      continue;
    }
    if (c == '#')
      break;  // comment to end of line/string
    size_t at = i;
    auto two = [&](char a, char b) {
      return c == a && i + 1 < n && s[i + 1] == b;
    };
    if (isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < n && (isalnum((unsigned char)s[j]) || s[j] == '_'))
        ++j;
      push(Tok::Ident, at, s.substr(i, j - i));
      i = j;
      continue;
    }
    if (isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < n && isdigit((unsigned char)s[j]))
        ++j;
      push(Tok::Int, at, s.substr(i, j - i));
      i = j;
      continue;
    }
    if (two('|', '-')) { push(Tok::Turnstile, at, "|-"); i += 2; continue; }
    if (two('|', '|')) { push(Tok::OrOr, at, "||"); i += 2; continue; }
    if (two('-', '>')) { push(Tok::Arrow, at, "->"); i += 2; continue; }
    if (c == '<' && i + 2 < n && s[i + 1] == '-' && s[i + 2] == '>') {
      push(Tok::Iff, at, "<->");
      i += 3;
      continue;
    }
    if (two('!', '~')) { push(Tok::NotTilde, at, "!~"); i += 2; continue; }
    if (two('>', '=')) { push(Tok::Geq, at, ">="); i += 2; continue; }
    if (two('<', '=')) { push(Tok::Leq, at, "<="); i += 2; continue; }
    if (two('=', '=')) { push(Tok::EqEq, at, "=="); i += 2; continue; }
    switch (c) {
      case '(': push(Tok::LParen, at, "("); break;
      case ')': push(Tok::RParen, at, ")"); break;
      case '[': push(Tok::LBrack, at, "["); break;
      case ']': push(Tok::RBrack, at, "]"); break;
      case '.': push(Tok::Dot, at, "."); break;
      case '@': push(Tok::At, at, "@"); break;
      case ';': push(Tok::Semi, at, ";"); break;
      case '|': push(Tok::Bar, at, "|"); break;
      case '&': push(Tok::Amp, at, "&"); break;
      case '!': push(Tok::Bang, at, "!"); break;
      case '~': push(Tok::Tilde, at, "~"); break;
      case '=': push(Tok::Eq, at, "="); break;
      case '>': push(Tok::Gt, at, ">"); break;
      case '<': push(Tok::Lt, at, "<"); break;
      case '+': push(Tok::Plus, at, "+"); break;
      case '-': push(Tok::Minus, at, "-"); break;
      case '*': push(Tok::Star, at, "*"); break;
      case '/': push(Tok::Slash, at, "/"); break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", at);
    }
    ++i;
  }
  out.push_back({Tok::End, "", n});
  return out;
}

// Splits an identifier into a lowercase stem and a 1-based index, e.g.
// "x12" -> ("x", 12). Returns false when there is no digit suffix.
bool split_range_token(const std::string& t, std::string& stem, int& idx) {
  size_t j = t.size();
  while (j > 0 && isdigit((unsigned char)t[j - 1]))
    --j;
  if (j == t.size() || j == 0)
    return false;
  stem = t.substr(0, j);
  for (char c : stem)
    if (isupper((unsigned char)c))
      return false;
  idx = atoi(t.c_str() + j);
  return true;
}

class Parser {
public:
  Parser(const std::string& text, Signature& sig, ParseOpts opts)
      : toks_(lex(text)), sig_(sig), opts_(opts) {}

  FormulaP formula() {
    FormulaP f = parse_iff();
    expect(Tok::End, "end of input");
    return f;
  }

  TermP term() {
    TermQ q = parse_termq();
    if (!is_trivial_den(q.den))
      throw ParseError("division requires a comparison context", peek().pos);
    expect(Tok::End, "end of input");
    return q.num;
  }

  EventP event() {
    EventP e = parse_event_or();
    expect(Tok::End, "end of input");
    return e;
  }

  Sequent sequent() {
    Sequent s;
    if (peek().kind != Tok::Turnstile) {
      s.premises.push_back(parse_iff());
      while (peek().kind == Tok::Semi) {
        next();
        s.premises.push_back(parse_iff());
      }
    }
    expect(Tok::Turnstile, "'|-'");
    s.conclusion = parse_iff();
    expect(Tok::End, "end of input");
    return s;
  }

private:
  const Token& peek(int k = 0) const {
    size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + ", got '" +
                           (peek().kind == Tok::End ? "<end>" : peek().text) + "'",
                       peek().pos);
    next();
  }

  VarId resolve_var(const std::string& name, size_t at) {
    if (auto v = sig_.lookup(name))
      return *v;
    if (!opts_.auto_declare)
      throw ParseError("unknown variable " + name, at);
    return sig_.add_var(name);
  }

  // A range variable token, resolving/declaring its variable.
  std::optional<DSym> try_range_sym(const Token& t) {
    std::string stem;
    int idx;
    if (t.kind != Tok::Ident || !split_range_token(t.text, stem, idx))
      return std::nullopt;
    if (stem == "c")
      return std::nullopt;  // constant token
    if (auto v = sig_.lookup_stem(stem))
      return range_sym(*v, idx);
    if (!opts_.auto_declare)
      throw ParseError("unknown range variable " + t.text, t.pos);
    std::string name = stem;
    name[0] = (char)toupper((unsigned char)name[0]);
    return range_sym(sig_.add_var(name), idx);
  }

  // Constant written in full form c<idx>@Var. Assumes current token is the
  // c<idx> identifier.
  DSym const_full() {
    const Token& t = next();
    std::string stem;
    int idx;
    if (!split_range_token(t.text, stem, idx) || stem != "c")
      throw ParseError("expected constant token c<index>", t.pos);
    expect(Tok::At, "'@' after constant index");
    const Token& v = peek();
    if (v.kind != Tok::Ident)
      throw ParseError("expected variable name after '@'", v.pos);
    next();
    VarId var = resolve_var(v.text, v.pos);
    if (!sig_.index_ok(idx))
      throw ParseError("constant index out of signature bound", t.pos);
    return const_sym(var, idx);
  }

  bool at_const_full() const {
    std::string stem;
    int idx;
    return peek().kind == Tok::Ident && split_range_token(peek().text, stem, idx) &&
           stem == "c" && peek(1).kind == Tok::At;
  }

  DSym dsym() {
    if (at_const_full())
      return const_full();
    const Token& t = peek();
    if (auto r = try_range_sym(t)) {
      next();
      return *r;
    }
    throw ParseError("expected a symbol (c<i>@V or range variable)", t.pos);
  }

  // ---- events ----

  EventP parse_event_or() {
    EventP e = parse_event_and();
    while (peek().kind == Tok::OrOr) {
      next();
      e = ev_or(e, parse_event_and());
    }
    return e;
  }

  EventP parse_event_and() {
    EventP e = parse_event_unary();
    while (peek().kind == Tok::Amp) {
      next();
      e = ev_and(e, parse_event_unary());
    }
    return e;
  }

  EventP parse_event_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      next();
      return ev_not(parse_event_unary());
    }
    if (t.kind == Tok::LBrack) {
      next();
      EventP iv = parse_event_or();
      expect(Tok::RBrack, "']'");
      if (!is_int_formula(iv))
        throw ParseError("intervention must be T or a conjunction of atoms", t.pos);
      EventP body = parse_event_unary();
      if (has_box(body))
        throw ParseError("nested intervention boxes are not allowed", t.pos);
      return ev_box(iv, body);
    }
    return parse_event_atom();
  }

  EventP parse_event_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      EventP e = parse_event_or();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Ident && t.text == "T") {
      next();
      return ev_top();
    }
    if (t.kind == Tok::Ident && isupper((unsigned char)t.text[0])) {
      next();
      VarId var = resolve_var(t.text, t.pos);
      expect(Tok::Eq, "'=' in atom");
      return ev_atom(var, atom_value(var));
    }
    throw ParseError("expected an event", t.pos);
  }

  // Value position of "V=...": bare constants resolve against V.
  DSym atom_value(VarId var) {
    const Token& t = peek();
    if (at_const_full()) {
      DSym d = const_full();
      if (d.var != var)
        throw ParseError("constant belongs to a different variable", t.pos);
      return d;
    }
    if (t.kind == Tok::Ident) {
      std::string stem;
      int idx;
      if (split_range_token(t.text, stem, idx)) {
        if (stem == "c") {
          next();
          if (!sig_.index_ok(idx))
            throw ParseError("constant index out of signature bound", t.pos);
          return const_sym(var, idx);
        }
        if (auto r = try_range_sym(t)) {
          next();
          if (r->var != var)
            throw ParseError("range variable " + t.text +
                                 " does not belong to variable " + sig_.name(var),
                             t.pos);
          return *r;
        }
      }
    }
    throw ParseError("expected c<i> or a range variable after '='", t.pos);
  }

  // ---- terms ----

  TermQ parse_termq() {
    if (peek().kind == Tok::Ident && peek().text == "sum") {
      const Token& t = next();
      DSym v = dsym();
      if (v.is_const)
        throw ParseError("sum binds a range variable", t.pos);
      expect(Tok::Dot, "'.' after sum binder");
      return q_sum(v, parse_termq());
    }
    return parse_addq();
  }

  TermQ parse_addq() {
    TermQ q = parse_mulq();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      TermQ r = parse_mulq();
      q = q_add(q, minus ? q_neg(r) : r);
    }
    return q;
  }

  TermQ parse_mulq() {
    TermQ q = parse_unq();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      bool div = next().kind == Tok::Slash;
      TermQ r = parse_unq();
      q = div ? q_div(q, r) : q_mul(q, r);
    }
    return q;
  }

  TermQ parse_unq() {
    if (peek().kind == Tok::Minus) {
      next();
      return q_neg(parse_unq());
    }
    return parse_term_atom();
  }

  TermQ parse_term_atom() {
    const Token& t = peek();
    if (t.kind == Tok::LParen) {
      next();
      TermQ q = parse_termq();
      expect(Tok::RParen, "')'");
      return q;
    }
    if (t.kind == Tok::Int) {
      next();
      return qnum(tm_num(atol(t.text.c_str())));
    }
    if (t.kind == Tok::Ident && t.text == "P" && peek(1).kind == Tok::LParen) {
      next();
      next();
      EventP ev = parse_event_or();
      EventP cond = ev_top();
      if (peek().kind == Tok::Bar) {
        next();
        cond = parse_event_or();
      }
      expect(Tok::RParen, "')'");
      validate_prob_event(ev);
      validate_prob_event(cond);
      return qnum(tm_prob(ev, cond));
    }
    if (t.kind == Tok::Ident) {
      return qnum(tm_coef(dsym()));
    }
    throw ParseError("expected a term", t.pos);
  }

  void validate_prob_event(const EventP& e) {
    // Box bodies are box-free by construction (checked at parse); nothing
    // further to enforce here, events mixing boxed and plain atoms are read
    // with plain atoms observational.
  }

  // ---- formulas ----

  FormulaP parse_iff() {
    FormulaP f = parse_imp();
    while (peek().kind == Tok::Iff) {
      next();
      f = fm_iff(f, parse_imp());
    }
    return f;
  }

  FormulaP parse_imp() {
    FormulaP f = parse_or();
    if (peek().kind == Tok::Arrow) {
      next();
      return fm_imp(f, parse_imp());
    }
    return f;
  }

  FormulaP parse_or() {
    FormulaP f = parse_and();
    while (peek().kind == Tok::OrOr) {
      next();
      f = fm_or(f, parse_and());
    }
    return f;
  }

  FormulaP parse_and() {
    FormulaP f = parse_funary();
    while (peek().kind == Tok::Amp) {
      next();
      f = fm_and(f, parse_funary());
    }
    return f;
  }

  FormulaP parse_funary() {
    if (peek().kind == Tok::Bang) {
      next();
      return fm_not(parse_funary());
    }
    return parse_fatom();
  }

  FormulaP parse_fatom() {
    size_t save = pos_;
    // A comparison or symbol (in)equality first; fall back to a parenthesized
    // formula.
    try {
      TermQ lhs = parse_termq();
      Tok k = peek().kind;
      if (k == Tok::Tilde || k == Tok::NotTilde) {
        next();
        DSym a = coef_to_dsym(lhs);
        DSym b = dsym();
        if (a.var != b.var)
          throw ParseError("symbol equality requires symbols of one variable",
                           peek().pos);
        FormulaP eq = fm_symeq(a, b);
        return k == Tok::Tilde ? eq : fm_not(eq);
      }
      if (k == Tok::Geq || k == Tok::Leq || k == Tok::Gt || k == Tok::Lt ||
          k == Tok::EqEq) {
        next();
        TermQ rhs = parse_termq();
        TermP L = mul_elide(lhs.num, rhs.den);
        TermP R = mul_elide(rhs.num, lhs.den);
        switch (k) {
          case Tok::Geq: return fm_geq(L, R);
          case Tok::Leq: return fm_leq(L, R);
          case Tok::Gt: return fm_gt(L, R);
          case Tok::Lt: return fm_lt(L, R);
          default: return fm_eq(L, R);
        }
      }
      throw ParseError("expected a comparison operator", peek().pos);
    } catch (const ParseError&) {
      pos_ = save;
    }
    expect(Tok::LParen, "a comparison or '('");
    FormulaP f = parse_iff();
    expect(Tok::RParen, "')'");
    return f;
  }

  DSym coef_to_dsym(const TermQ& q) {
    if (!is_trivial_den(q.den) || q.num->kind != Term::Kind::Coef)
      throw ParseError("'~' compares symbols, not terms", peek().pos);
    return q.num->sym;
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  Signature& sig_;
  ParseOpts opts_;
};

}  // namespace

FormulaP parse_formula(const std::string& text, Signature& sig, ParseOpts opts) {
  return Parser(text, sig, opts).formula();
}
TermP parse_term(const std::string& text, Signature& sig, ParseOpts opts) {
  return Parser(text, sig, opts).term();
}
EventP parse_event(const std::string& text, Signature& sig, ParseOpts opts) {
  return Parser(text, sig, opts).event();
}
Sequent parse_sequent(const std::string& text, Signature& sig, ParseOpts opts) {
  return Parser(text, sig, opts).sequent();
}

std::vector<FormulaP> parse_formula_file(const std::string& text, Signature& sig,
                                         ParseOpts opts) {
  std::vector<FormulaP> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string line = text.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    size_t hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!isspace((unsigned char)c))
        blank = false;
    if (!blank)
      out.push_back(parse_formula(line, sig, opts));
    if (end == std::string::npos)
      break;
    start = end + 1;
  }
  return out;
}

}  // namespace sumlogic
