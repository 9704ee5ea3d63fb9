#include <cctype>
#include <sstream>
#include <unordered_map>

#include "sumlogic/parser.hpp"
#include "sumlogic/printer.hpp"
#include "sumlogic/proofs.hpp"
#include "sumlogic/shapes.hpp"
#include "sumlogic/state_desc.hpp"
#include "sumlogic/subst.hpp"

namespace sumlogic {

namespace {

std::string strip(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::optional<int> to_int(const std::string& s) {
  if (s.empty()) return {};
  for (char c : s)
    if (!std::isdigit((unsigned char)c)) return {};
  try {
    return std::stoi(s);
  } catch (...) {
    return {};
  }
}

}  // namespace

ProofScript parse_proof_script(const std::string& text) {
  ProofScript s;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool seen_content = false;
  auto fail = [&](const std::string& m) {
    return ProofError("line " + std::to_string(lineno) + ": " + m);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = strip(line);
    if (line.empty()) continue;
    if (line.rfind("system", 0) == 0 &&
        (line.size() == 6 || std::isspace((unsigned char)line[6]))) {
      if (seen_content) throw fail("the system directive must come first");
      auto sys = parse_system(strip(line.substr(6)));
      if (!sys) throw fail("unknown system");
      s.system = *sys;
      if (s.system.n >= 1) s.sig.set_bound(s.system.n);
      seen_content = true;
      continue;
    }
    seen_content = true;
    if (line.rfind("hyp", 0) == 0 && line.size() > 3 &&
        std::isspace((unsigned char)line[3])) {
      if (!s.proof.nodes.empty())
        throw fail("hypotheses must precede proof nodes");
      size_t colon = line.find(':');
      if (colon == std::string::npos) throw fail("missing ':'");
      auto k = to_int(strip(line.substr(3, colon - 3)));
      if (!k || *k != (int)s.hyps.size())
        throw fail("hypothesis numbers must run 0, 1, ...");
      try {
        s.hyps.push_back(parse_formula(strip(line.substr(colon + 1)), s.sig));
      } catch (const SyntaxError& e) {
        throw fail(e.what());
      }
      continue;
    }
    size_t colon = line.find(':');
    if (colon == std::string::npos) throw fail("missing ':'");
    auto num = to_int(strip(line.substr(0, colon)));
    if (!num || *num != (int)s.proof.nodes.size() + 1)
      throw fail("node numbers must run 1, 2, ...");
    std::string rest = line.substr(colon + 1);
    size_t by = rest.rfind(" BY ");
    if (by == std::string::npos) throw fail("missing BY justification");
    ProofNode node;
    try {
      node.conclusion = parse_formula(strip(rest.substr(0, by)), s.sig);
    } catch (const SyntaxError& e) {
      throw fail(e.what());
    }
    std::vector<std::string> tok;
    {
      std::istringstream jt(rest.substr(by + 4));
      std::string w;
      while (jt >> w) tok.push_back(w);
    }
    if (tok.empty()) throw fail("empty justification");
    if (tok[0] == "axiom") {
      node.kind = ProofNode::Kind::Axiom;
      if (tok.size() < 2) throw fail("axiom needs a name");
      auto id = axiom_by_name(tok[1]);
      if (!id) throw fail("unknown axiom " + tok[1]);
      node.axiom.id = *id;
      size_t next = 2;
      if (*id == AxiomId::PolyBase) {
        if (tok.size() < 3) throw fail("PolyBase needs a tag");
        auto tg = poly_tag_by_name(tok[2]);
        if (!tg) throw fail("unknown tag " + tok[2]);
        node.axiom.tag = *tg;
        next = 3;
      }
      if (tok.size() != next) throw fail("trailing tokens after the axiom");
    } else if (tok[0] == "rule") {
      node.kind = ProofNode::Kind::Rule;
      if (tok.size() < 2) throw fail("rule needs a name");
      auto id = rule_by_name(tok[1]);
      if (!id) throw fail("unknown rule " + tok[1]);
      node.rule = *id;
      if (tok.size() == 3 && tok[2] == "GEN") {
        node.generated = true;
      } else if (tok.size() >= 4 && tok[2] == "FROM") {
        std::string list;
        for (size_t i = 3; i < tok.size(); ++i) list += tok[i];
        size_t start = 0;
        while (start <= list.size()) {
          size_t comma = list.find(',', start);
          std::string part = list.substr(start, comma - start);
          auto m = to_int(part);
          if (!m || *m < 1) throw fail("bad premise number '" + part + "'");
          node.premises.push_back(*m - 1);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
      } else if (tok.size() != 2) {
        throw fail("malformed rule justification");
      }
    } else if (tok[0] == "hyp") {
      node.kind = ProofNode::Kind::Hyp;
      if (tok.size() != 2) throw fail("hyp needs an index");
      auto k = to_int(tok[1]);
      if (!k) throw fail("bad hypothesis index");
      node.hyp = *k;
    } else {
      throw fail("unknown justification " + tok[0]);
    }
    s.proof.nodes.push_back(std::move(node));
  }
  if (s.proof.nodes.empty()) throw ProofError("script has no proof nodes");
  return s;
}

std::string print_proof_script(const ProofScript& s) {
  std::ostringstream out;
  out << "system " << system_name(s.system) << "\n";
  for (size_t i = 0; i < s.hyps.size(); ++i)
    out << "hyp " << i << ": " << print_formula(s.hyps[i], s.sig) << "\n";
  for (size_t i = 0; i < s.proof.nodes.size(); ++i) {
    const ProofNode& n = s.proof.nodes[i];
    out << (i + 1) << ": " << print_formula(n.conclusion, s.sig) << " BY ";
    switch (n.kind) {
      case ProofNode::Kind::Hyp:
        out << "hyp " << n.hyp;
        break;
      case ProofNode::Kind::Axiom:
        out << "axiom " << axiom_name(n.axiom.id);
        if (n.axiom.id == AxiomId::PolyBase)
          out << " " << poly_tag_name(n.axiom.tag);
        break;
      case ProofNode::Kind::Rule:
        out << "rule " << rule_name(n.rule);
        if (n.generated) {
          out << " GEN";
        } else if (!n.premises.empty()) {
          out << " FROM ";
          for (size_t j = 0; j < n.premises.size(); ++j) {
            if (j) out << ",";
            out << (n.premises[j] + 1);
          }
        }
        break;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

// Assembles derivations node by node. Nodes are deduplicated by conclusion,
// so shared lemmas (numeral facts, tautologies) appear once.
class Builder {
public:
  explicit Builder(const System& sys) {
    script_.system = sys;
    if (sys.n >= 1) script_.sig.set_bound(sys.n);
  }

  Signature& sig() { return script_.sig; }
  const System& system() const { return script_.system; }

  void declare_hyp(const FormulaP& f) { script_.hyps.push_back(f); }

  int hyp(int k) {
    ProofNode n;
    n.kind = ProofNode::Kind::Hyp;
    n.hyp = k;
    n.conclusion = script_.hyps.at(k);
    return add(std::move(n));
  }

  int axiom(SchemaId id, const FormulaP& f) {
    ProofNode n;
    n.kind = ProofNode::Kind::Axiom;
    n.axiom = id;
    n.conclusion = f;
    return add(std::move(n));
  }

  int poly(PolyTag tag, const FormulaP& f) {
    return axiom({AxiomId::PolyBase, tag}, f);
  }

  int taut(const FormulaP& f) { return poly(PolyTag::Taut, f); }

  int rule(RuleId r, const FormulaP& f, std::vector<int> prem) {
    ProofNode n;
    n.kind = ProofNode::Kind::Rule;
    n.rule = r;
    n.conclusion = f;
    n.premises = std::move(prem);
    return add(std::move(n));
  }

  const FormulaP& concl(int i) const { return script_.proof.nodes[i].conclusion; }

  int mp(int imp, int ant) {
    auto parts = match_imp(concl(imp));
    if (!parts || !equal(parts->a, concl(ant)))
      throw ProofError("internal: bad modus ponens in a corpus derivation");
    return rule(RuleId::MP, parts->b, {imp, ant});
  }

  // target as a propositional consequence of earlier nodes: one implication
  // chain tautology plus modus ponens per source
  int derive(const FormulaP& target, const std::vector<int>& from) {
    FormulaP chain = target;
    for (auto it = from.rbegin(); it != from.rend(); ++it)
      chain = fm_imp(concl(*it), chain);
    int cur = taut(chain);
    for (int src : from) cur = mp(cur, src);
    return cur;
  }

  int conj(int a, int b) {
    return derive(fm_and(concl(a), concl(b)), {a, b});
  }

  int eq_sym(int e) {
    auto p = match_eq(concl(e));
    if (!p) throw ProofError("internal: eq_sym on a non-equality");
    return derive(fm_eq(p->second, p->first), {e});
  }

  int order_trans(const TermP& a, const TermP& b, const TermP& c) {
    return poly(PolyTag::OrderTrans,
                fm_imp(fm_and(fm_geq(a, b), fm_geq(b, c)), fm_geq(a, c)));
  }

  int eq_trans(int e1, int e2) {
    auto p = match_eq(concl(e1));
    auto q = match_eq(concl(e2));
    if (!p || !q || !equal(p->second, q->first))
      throw ProofError("internal: eq_trans chain mismatch");
    int ot1 = order_trans(p->first, p->second, q->second);
    int ot2 = order_trans(q->second, p->second, p->first);
    return derive(fm_eq(p->first, q->second), {e1, e2, ot1, ot2});
  }

  int geq_trans(int g1, int g2) {
    const FormulaP& a = concl(g1);
    const FormulaP& b = concl(g2);
    if (a->kind != Formula::Kind::Geq || b->kind != Formula::Kind::Geq ||
        !equal(a->t2, b->t1))
      throw ProofError("internal: geq_trans chain mismatch");
    int ot = order_trans(a->t1, a->t2, b->t2);
    return derive(fm_geq(a->t1, b->t2), {g1, g2, ot});
  }

  // 0 + t ~ t
  int zero_left(const TermP& t) {
    TermP zero = tm_num(0);
    int comm = poly(PolyTag::AddComm,
                    fm_eq(tm_add(zero, t), tm_add(t, zero)));
    int az = poly(PolyTag::AddZero, fm_eq(tm_add(t, zero), t));
    return eq_trans(comm, az);
  }

  int add_cong(int e, const TermP& ctx) {
    auto p = match_eq(concl(e));
    if (!p) throw ProofError("internal: add_cong on a non-equality");
    int ax = poly(PolyTag::AddCong,
                  fm_imp(concl(e), fm_eq(tm_add(p->first, ctx),
                                         tm_add(p->second, ctx))));
    return mp(ax, e);
  }

  int add_cong_r(int e, const TermP& ctx) {
    auto p = match_eq(concl(e));
    if (!p) throw ProofError("internal: add_cong_r on a non-equality");
    int ax = poly(PolyTag::AddCongR,
                  fm_imp(concl(e), fm_eq(tm_add(ctx, p->first),
                                         tm_add(ctx, p->second))));
    return mp(ax, e);
  }

  // t >= 0 for terms built from unconditional guarded probabilities by +
  int nonneg(const TermP& t) {
    TermP zero = tm_num(0);
    if (t->kind == Term::Kind::Prob && t->cond->kind == Event::Kind::Top) {
      int pos = axiom({AxiomId::Pos, PolyTag::Taut}, fm_gt(t, zero));
      return derive(fm_geq(t, zero), {pos});
    }
    if (t->kind == Term::Kind::Add) {
      int na = nonneg(t->a);
      int nb = nonneg(t->b);
      TermP zb = tm_add(zero, t->b);
      int mono = poly(PolyTag::OrderAddMono,
                      fm_imp(fm_geq(t->a, zero), fm_geq(t, zb)));
      int ze = zero_left(t->b);
      int ot1 = order_trans(t, zb, t->b);
      int ot2 = order_trans(t, t->b, zero);
      return derive(fm_geq(t, zero), {na, nb, mono, ze, ot1, ot2});
    }
    throw ProofError("internal: nonneg on an unsupported term");
  }

  // full >= prefix for left-nested sums of the same pieces
  int geq_prefix(const std::vector<TermP>& pieces, int k) {
    int m = (int)pieces.size();
    std::vector<TermP> fold(m + 1);
    fold[1] = pieces[0];
    for (int j = 2; j <= m; ++j) fold[j] = tm_add(fold[j - 1], pieces[j - 1]);
    int cur = poly(PolyTag::OrderRefl, fm_geq(fold[m], fold[m]));
    for (int j = m - 1; j >= k; --j) {
      const TermP& p = pieces[j];
      TermP x = tm_add(p, fold[j]);
      TermP y = tm_add(tm_num(0), fold[j]);
      int nn = nonneg(p);
      int mono = poly(PolyTag::OrderAddMono,
                      fm_imp(fm_geq(p, tm_num(0)), fm_geq(x, y)));
      int comm = poly(PolyTag::AddComm, fm_eq(x, fold[j + 1]));
      int ze = zero_left(fold[j]);
      int ot1 = order_trans(fold[j + 1], x, y);
      int ot2 = order_trans(fold[j + 1], y, fold[j]);
      int step = derive(fm_geq(fold[j + 1], fold[j]),
                        {nn, mono, comm, ze, ot1, ot2});
      cur = geq_trans(cur, step);
    }
    return cur;
  }

  ProofScript take() { return std::move(script_); }

private:
  int add(ProofNode n) {
    size_t h = hash_of(n.conclusion);
    auto it = cache_.find(h);
    if (it != cache_.end())
      for (int idx : it->second)
        if (equal(script_.proof.nodes[idx].conclusion, n.conclusion))
          return idx;
    int idx = (int)script_.proof.nodes.size();
    script_.proof.nodes.push_back(std::move(n));
    cache_[h].push_back(idx);
    return idx;
  }

  ProofScript script_;
  std::unordered_map<size_t, std::vector<int>> cache_;
};

FormulaP distinct_formula(VarId v, int n) {
  std::vector<FormulaP> lits;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      lits.push_back(fm_not(fm_symeq(const_sym(v, i), const_sym(v, j))));
  return fm_and_all(lits);
}

// not(c_i == c_j) from the sum identity sum_x P(T) ~ N: under c_i == c_j the
// values collapse to at most N-1 classes, so SumUpper bounds the sum by N-1
int derive_distinct_pair(Builder& b, VarId v, const DSym& x, int i, int j,
                         int fin_node) {
  const System& sys = b.system();
  int n = sys.n;
  FormulaP phi = fm_symeq(const_sym(v, i), const_sym(v, j));
  TermP bound = tm_num(n - 1);
  TermP sum = tm_sum(x, tm_prob(ev_top()));
  FormulaP su = fm_imp(phi, fm_geq(bound, sum));
  long fam = *rule_family_size(RuleId::SumUpper, su, sys);
  std::vector<int> prems;
  long k = 1;
  for (int m = 1; m <= n; ++m) {
    for (const auto& part : partitions_rgs(m)) {
      FormulaP req = *rule_premise(RuleId::SumUpper, su, k++, sys);
      bool split_pair = i <= m && j <= m && part[i - 1] != part[j - 1];
      if (split_pair) {
        prems.push_back(b.taut(req));  // guard contradicts phi
        continue;
      }
      int blocks = 1;
      for (int idx : part) blocks = std::max(blocks, idx + 1);
      int num = b.poly(PolyTag::NumOrder,
                       fm_geq(bound, tm_num(blocks)));
      prems.push_back(b.derive(req, {num}));
    }
  }
  int su_node = b.rule(RuleId::SumUpper, su, prems);
  int ot = b.order_trans(bound, sum, tm_num(n));
  int no = b.poly(PolyTag::NumOrder, fm_not(fm_geq(bound, tm_num(n))));
  return b.derive(fm_not(phi), {su_node, fin_node, ot, no});
}

// sum_x t ~ t[x/c_1] + ... + t[x/c_n] from the distinctness conjunction,
// via SumLower for >= and SumUpper (casing on partitions) for <=
int derive_sum_equals(Builder& b, VarId v, const DSym& x, const TermP& t,
                      int distinct_node) {
  const System& sys = b.system();
  int n = sys.n;
  EventP pat = ev_atom(v, x);
  std::vector<TermP> pieces;
  TermP rhs;
  for (int i = 1; i <= n; ++i) {
    TermP piece = substitute_event(t, pat, ev_atom(v, const_sym(v, i)));
    pieces.push_back(piece);
    rhs = rhs ? tm_add(rhs, piece) : piece;
  }
  TermP sum = tm_sum(x, t);
  FormulaP dist = b.concl(distinct_node);  // copy: later adds may reallocate

  int sl = b.axiom({AxiomId::SumLower, PolyTag::Taut},
                   fm_imp(dist, fm_geq(sum, rhs)));
  int lower = b.mp(sl, distinct_node);

  FormulaP su = fm_imp(dist, fm_geq(rhs, sum));
  std::vector<int> prems;
  long k = 1;
  for (int m = 1; m <= n; ++m) {
    for (const auto& part : partitions_rgs(m)) {
      FormulaP req = *rule_premise(RuleId::SumUpper, su, k++, sys);
      bool merged = false;
      for (size_t a = 0; a < part.size() && !merged; ++a)
        for (size_t c = a + 1; c < part.size(); ++c)
          if (part[a] == part[c]) {
            merged = true;
            break;
          }
      if (merged) {
        prems.push_back(b.taut(req));  // guard contradicts distinctness
        continue;
      }
      int pre = b.geq_prefix(pieces, m);
      prems.push_back(b.derive(req, {pre}));
    }
  }
  int su_node = b.rule(RuleId::SumUpper, su, prems);
  int upper = b.mp(su_node, distinct_node);
  return b.conj(lower, upper);
}

ProofScript make_mp_chain() {
  Builder b(System{SystemId::AxClosed});
  VarId v = b.sig().add_var("X");
  FormulaP a = fm_geq(tm_prob(ev_atom(v, const_sym(v, 1))), tm_num(0));
  FormulaP c = fm_geq(tm_prob(ev_atom(v, const_sym(v, 2))), tm_num(0));
  FormulaP d = fm_geq(tm_add(tm_prob(ev_atom(v, const_sym(v, 1))),
                             tm_prob(ev_atom(v, const_sym(v, 2)))),
                      tm_num(0));
  b.declare_hyp(a);
  b.declare_hyp(fm_imp(a, c));
  b.declare_hyp(fm_imp(c, d));
  int n0 = b.hyp(0);
  int n1 = b.hyp(1);
  int n2 = b.mp(n1, n0);
  int n3 = b.hyp(2);
  b.mp(n3, n2);
  return b.take();
}

// T with phi added proves psi: one half of the deduction-theorem regression
ProofScript make_deduction_pair() {
  Builder b(System{SystemId::AxClosed});
  VarId v = b.sig().add_var("X");
  FormulaP chi = fm_geq(tm_prob(ev_atom(v, const_sym(v, 1))), tm_num(0));
  FormulaP phi = fm_geq(tm_prob(ev_atom(v, const_sym(v, 2))), tm_num(0));
  FormulaP psi = fm_geq(tm_num(1), tm_prob(ev_atom(v, const_sym(v, 1))));
  b.declare_hyp(fm_imp(chi, fm_imp(phi, psi)));
  b.declare_hyp(chi);
  b.declare_hyp(phi);
  int n0 = b.hyp(0);
  int n1 = b.hyp(1);
  int n2 = b.mp(n0, n1);
  int n3 = b.hyp(2);
  b.mp(n2, n3);
  return b.take();
}

// the same T proves phi -> psi directly: the other half
ProofScript make_deduction_imp() {
  Builder b(System{SystemId::AxClosed});
  VarId v = b.sig().add_var("X");
  FormulaP chi = fm_geq(tm_prob(ev_atom(v, const_sym(v, 1))), tm_num(0));
  FormulaP phi = fm_geq(tm_prob(ev_atom(v, const_sym(v, 2))), tm_num(0));
  FormulaP psi = fm_geq(tm_num(1), tm_prob(ev_atom(v, const_sym(v, 1))));
  b.declare_hyp(fm_imp(chi, fm_imp(phi, psi)));
  b.declare_hyp(chi);
  int n0 = b.hyp(0);
  int n1 = b.hyp(1);
  b.mp(n0, n1);
  return b.take();
}

ProofScript make_sum_eq(int n) {
  Builder b(System{SystemId::AxNClosed, n});
  VarId v = b.sig().add_var("X");
  DSym x = range_sym(v, 1);
  int fin = b.axiom({AxiomId::FinN, PolyTag::Taut},
                    fm_eq(tm_sum(x, tm_prob(ev_top())), tm_num(n)));
  std::vector<int> pair_nodes;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pair_nodes.push_back(derive_distinct_pair(b, v, x, i, j, fin));
  int dist = n == 2 ? pair_nodes[0]
                    : b.derive(distinct_formula(v, n), pair_nodes);
  derive_sum_equals(b, v, x, tm_prob(ev_atom(v, x)), dist);
  return b.take();
}

ProofScript make_distinct_to_sumeq(int n) {
  System sys{SystemId::AxNClosed, n};
  sys.extra_distinct = true;
  Builder b(sys);
  VarId v = b.sig().add_var("X");
  DSym x = range_sym(v, 1);
  int dist = b.axiom({AxiomId::DistinctN, PolyTag::Taut},
                     distinct_formula(v, n));
  derive_sum_equals(b, v, x, tm_prob(ev_atom(v, x)), dist);
  return b.take();
}

ProofScript make_sumeq_to_distinct(int n) {
  System sys{SystemId::AxNClosed, n};
  sys.extra_sumeq = true;
  Builder b(sys);
  VarId v = b.sig().add_var("X");
  DSym x = range_sym(v, 1);
  // the t = P(T) instance is literally the sum identity
  int fin = b.axiom({AxiomId::SumEqualsN, PolyTag::Taut},
                    fm_eq(tm_sum(x, tm_prob(ev_top())), tm_num(n)));
  std::vector<int> pair_nodes;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      pair_nodes.push_back(derive_distinct_pair(b, v, x, i, j, fin));
  if (n == 2) return b.take();  // the single pair is the conclusion
  b.derive(distinct_formula(v, n), pair_nodes);
  return b.take();
}

// sum_x (t1 + t2) ~ sum_x t1 + sum_x t2 at bound 2, by expanding all three
// sums and rearranging (a+b)+(c+d) into (a+c)+(b+d)
ProofScript make_sums_of_sums() {
  Builder b(System{SystemId::AxNClosed, 2});
  VarId vx = b.sig().add_var("X");
  VarId vy = b.sig().add_var("Y");
  DSym x = range_sym(vx, 1);
  TermP t1 = tm_prob(ev_atom(vx, x));
  TermP t2 = tm_prob(ev_and(ev_atom(vx, x), ev_atom(vy, const_sym(vy, 1))));
  int fin = b.axiom({AxiomId::FinN, PolyTag::Taut},
                    fm_eq(tm_sum(x, tm_prob(ev_top())), tm_num(2)));
  int dist = derive_distinct_pair(b, vx, x, 1, 2, fin);

  int e1 = derive_sum_equals(b, vx, x, t1, dist);
  int e2 = derive_sum_equals(b, vx, x, t2, dist);
  int e3 = derive_sum_equals(b, vx, x, tm_add(t1, t2), dist);

  EventP pat = ev_atom(vx, x);
  auto inst = [&](const TermP& t, int i) {
    return substitute_event(t, pat, ev_atom(vx, const_sym(vx, i)));
  };
  TermP a = inst(t1, 1), bb = inst(t2, 1), c = inst(t1, 2), d = inst(t2, 2);
  TermP cd = tm_add(c, d);
  TermP bd = tm_add(bb, d);

  // (a+b)+(c+d) ~ (a+c)+(b+d)
  int s1 = b.poly(PolyTag::AddAssoc,
                  fm_eq(tm_add(tm_add(a, bb), cd), tm_add(a, tm_add(bb, cd))));
  int s2 = b.eq_sym(b.poly(
      PolyTag::AddAssoc,
      fm_eq(tm_add(tm_add(bb, c), d), tm_add(bb, cd))));
  int s3 = b.add_cong(
      b.poly(PolyTag::AddComm, fm_eq(tm_add(bb, c), tm_add(c, bb))), d);
  int s4 = b.poly(PolyTag::AddAssoc,
                  fm_eq(tm_add(tm_add(c, bb), d), tm_add(c, bd)));
  int s5 = b.eq_trans(b.eq_trans(s2, s3), s4);  // b+(c+d) ~ c+(b+d)
  int s6 = b.add_cong_r(s5, a);
  int s7 = b.eq_sym(b.poly(
      PolyTag::AddAssoc,
      fm_eq(tm_add(tm_add(a, c), bd), tm_add(a, tm_add(c, bd)))));
  int e4 = b.eq_trans(b.eq_trans(s1, s6), s7);

  // sum t1 + sum t2 ~ (a+c) + (b+d) by congruence on both addends
  auto lhs1 = match_eq(b.concl(e1));
  auto lhs2 = match_eq(b.concl(e2));
  int c1 = b.add_cong(e1, lhs2->first);
  int c2 = b.add_cong_r(e2, lhs1->second);
  int e5 = b.eq_trans(c1, c2);

  int left = b.eq_trans(e3, e4);  // sum (t1+t2) ~ (a+c)+(b+d)
  b.eq_trans(left, b.eq_sym(e5));
  return b.take();
}

// the tempting but unsound step: relabeling a free variable by FreeElim.
// The checker must reject node 2, which keeps the deduction-theorem failure
// for open sequents out of reach.
ProofScript make_remark_relabel() {
  Builder b(System{SystemId::Ax});
  VarId v = b.sig().add_var("X");
  FormulaP h = fm_eq(tm_prob(ev_atom(v, range_sym(v, 1))), tm_num(1));
  b.declare_hyp(h);
  int n0 = b.hyp(0);
  b.rule(RuleId::FreeElim,
         fm_eq(tm_prob(ev_atom(v, range_sym(v, 2))), tm_num(1)), {n0});
  return b.take();
}

}  // namespace

std::vector<std::string> corpus_proof_names() {
  return {"mp_chain",
          "deduction_pair",
          "deduction_imp",
          "sum_eq_2",
          "sum_eq_3",
          "distinct_to_sumeq_2",
          "distinct_to_sumeq_3",
          "sumeq_to_distinct_2",
          "sumeq_to_distinct_3",
          "sums_of_sums_2",
          "remark_relabel"};
}

ProofScript derive_corpus(const std::string& name) {
  if (name == "mp_chain") return make_mp_chain();
  if (name == "deduction_pair") return make_deduction_pair();
  if (name == "deduction_imp") return make_deduction_imp();
  if (name == "sum_eq_2") return make_sum_eq(2);
  if (name == "sum_eq_3") return make_sum_eq(3);
  if (name == "distinct_to_sumeq_2") return make_distinct_to_sumeq(2);
  if (name == "distinct_to_sumeq_3") return make_distinct_to_sumeq(3);
  if (name == "sumeq_to_distinct_2") return make_sumeq_to_distinct(2);
  if (name == "sumeq_to_distinct_3") return make_sumeq_to_distinct(3);
  if (name == "sums_of_sums_2") return make_sums_of_sums();
  if (name == "remark_relabel") return make_remark_relabel();
  throw ProofError("unknown corpus derivation '" + name + "'");
}

}  // namespace sumlogic
