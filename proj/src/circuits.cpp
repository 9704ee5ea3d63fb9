#include "sumlogic/circuits.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace sumlogic {

namespace {

std::string gate_name(int i) { return "g" + std::to_string(i); }

bool is_identifier(const std::string& s) {
  if (s.empty() || (!isalpha((unsigned char)s[0]) && s[0] != '_'))
    return false;
  for (char c : s)
    if (!isalnum((unsigned char)c) && c != '_')
      return false;
  return true;
}

}  // namespace

void check_circuit(const BooleanCircuit& c) {
  if (c.n_inputs < 0)
    throw CircuitError("negative input count");
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto operand = [&](int x) {
      if (x < 0 || x >= (int)i)
        throw CircuitError("gate " + std::to_string(i) + " uses operand " +
                           std::to_string(x) + ", which is not an earlier gate");
    };
    switch (g.kind) {
      case Gate::Kind::Input:
        if (g.a < 0 || g.a >= c.n_inputs)
          throw CircuitError("gate " + std::to_string(i) + " reads input " +
                             std::to_string(g.a) + " of " +
                             std::to_string(c.n_inputs));
        break;
      case Gate::Kind::Const:
        if (g.a != 0 && g.a != 1)
          throw CircuitError("gate " + std::to_string(i) +
                             " holds a constant other than 0 or 1");
        break;
      case Gate::Kind::Not:
        operand(g.a);
        break;
      case Gate::Kind::And:
      case Gate::Kind::Or:
        operand(g.a);
        operand(g.b);
        break;
    }
  }
  if (c.outputs.empty())
    throw CircuitError("circuit has no outputs");
  for (int o : c.outputs)
    if (o < 0 || o >= (int)c.gates.size())
      throw CircuitError("output lists gate " + std::to_string(o) +
                         ", which does not exist");
}

std::vector<int> eval_circuit(const BooleanCircuit& c,
                              const std::vector<int>& input) {
  check_circuit(c);
  if ((int)input.size() != c.n_inputs)
    throw CircuitError("expected " + std::to_string(c.n_inputs) +
                       " input bits, got " + std::to_string(input.size()));
  for (int b : input)
    if (b != 0 && b != 1)
      throw CircuitError("input bits must be 0 or 1");
  std::vector<int> val(c.gates.size());
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    switch (g.kind) {
      case Gate::Kind::Input: val[i] = input[g.a]; break;
      case Gate::Kind::Const: val[i] = g.a; break;
      case Gate::Kind::Not: val[i] = 1 - val[g.a]; break;
      case Gate::Kind::And: val[i] = val[g.a] & val[g.b]; break;
      case Gate::Kind::Or: val[i] = val[g.a] | val[g.b]; break;
    }
  }
  std::vector<int> out;
  out.reserve(c.outputs.size());
  for (int o : c.outputs)
    out.push_back(val[o]);
  return out;
}

BooleanCircuit parse_circuit(const std::string& text) {
  BooleanCircuit c;
  std::map<std::string, int> names;
  bool have_inputs = false, have_outputs = false;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t)
      tok.push_back(t);
    if (tok.empty())
      continue;

    auto err = [&](const std::string& m) {
      return CircuitError("circuit line " + std::to_string(lineno) + ": " + m);
    };
    auto number = [&](const std::string& s) {
      if (s.empty())
        throw err("expected a number");
      for (char ch : s)
        if (!isdigit((unsigned char)ch))
          throw err("expected a number, got '" + s + "'");
      return atoi(s.c_str());
    };

    if (!have_inputs) {
      if (tok[0] != "inputs" || tok.size() != 2)
        throw err("the first line must be 'inputs N'");
      c.n_inputs = number(tok[1]);
      have_inputs = true;
      continue;
    }
    if (tok[0] == "outputs") {
      if (have_outputs)
        throw err("duplicate outputs line");
      if (tok.size() < 2)
        throw err("outputs line lists no gates");
      for (size_t i = 1; i < tok.size(); ++i) {
        auto it = names.find(tok[i]);
        if (it == names.end())
          throw err("unknown gate '" + tok[i] + "'");
        c.outputs.push_back(it->second);
      }
      have_outputs = true;
      continue;
    }
    if (have_outputs)
      throw err("gate definition after the outputs line");
    if (tok.size() < 3 || tok[1] != "=")
      throw err("expected 'name = OP ...'");
    const std::string& name = tok[0];
    if (!is_identifier(name) || name == "inputs" || name == "outputs")
      throw err("bad gate name '" + name + "'");
    if (names.count(name))
      throw err("duplicate gate name '" + name + "'");

    auto ref = [&](const std::string& s) {
      auto it = names.find(s);
      if (it == names.end())
        throw err("unknown gate '" + s + "'");
      return it->second;
    };
    auto arity = [&](size_t want) {
      if (tok.size() != 3 + want)
        throw err(tok[2] + " takes " + std::to_string(want) +
                  (want == 1 ? " operand" : " operands"));
    };

    Gate g;
    const std::string& op = tok[2];
    if (op == "IN") {
      arity(1);
      g.kind = Gate::Kind::Input;
      g.a = number(tok[3]);
      if (g.a >= c.n_inputs)
        throw err("input index " + tok[3] + " out of range");
    } else if (op == "CONST") {
      arity(1);
      g.kind = Gate::Kind::Const;
      if (tok[3] != "0" && tok[3] != "1")
        throw err("CONST takes 0 or 1");
      g.a = tok[3] == "1";
    } else if (op == "NOT") {
      arity(1);
      g.kind = Gate::Kind::Not;
      g.a = ref(tok[3]);
    } else if (op == "AND" || op == "OR") {
      arity(2);
      g.kind = op == "AND" ? Gate::Kind::And : Gate::Kind::Or;
      g.a = ref(tok[3]);
      g.b = ref(tok[4]);
    } else {
      throw err("unknown operation '" + op + "'");
    }
    names[name] = (int)c.gates.size();
    c.gates.push_back(g);
  }
  if (!have_inputs)
    throw CircuitError("missing 'inputs' line");
  if (!have_outputs)
    throw CircuitError("missing 'outputs' line");
  check_circuit(c);
  return c;
}

BooleanCircuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw CircuitError("cannot open circuit file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::string print_circuit(const BooleanCircuit& c) {
  check_circuit(c);
  std::ostringstream out;
  out << "inputs " << c.n_inputs << "\n";
  for (size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    out << gate_name((int)i) << " = ";
    switch (g.kind) {
      case Gate::Kind::Input: out << "IN " << g.a; break;
      case Gate::Kind::Const: out << "CONST " << g.a; break;
      case Gate::Kind::Not: out << "NOT " << gate_name(g.a); break;
      case Gate::Kind::And:
        out << "AND " << gate_name(g.a) << " " << gate_name(g.b);
        break;
      case Gate::Kind::Or:
        out << "OR " << gate_name(g.a) << " " << gate_name(g.b);
        break;
    }
    out << "\n";
  }
  out << "outputs";
  for (int o : c.outputs)
    out << " " << gate_name(o);
  out << "\n";
  return out.str();
}

namespace {

// Children per label; -1 marks a byte outside the alphabet.
int label_arity(std::uint8_t l) {
  switch (l) {
    case etr::kAdd:
    case etr::kMul:
    case etr::kEq:
    case etr::kLeq:
    case etr::kLt:
    case etr::kAnd:
    case etr::kOr:
      return 2;
    case etr::kNeg:
    case etr::kNot:
      return 1;
    default:
      break;
  }
  if (l >= 0x40 && l <= 0x7F)
    return 0;  // integer constant
  if (l >= 0x80 && l <= 0xFE)
    return 0;  // variable
  return -1;
}

std::string addr_str(std::uint64_t a) { return std::to_string(a); }

}  // namespace

DecodeResult decode_etr(const BooleanCircuit& c, int width) {
  if (width < 1 || width > 20)
    throw CircuitError("address width must be in 1..20, got " +
                       std::to_string(width));
  check_circuit(c);
  if (c.n_inputs != width)
    throw CircuitError("circuit reads " + std::to_string(c.n_inputs) +
                       " address bits, width says " + std::to_string(width));
  const int row = 8 + 3 * width;
  if ((int)c.outputs.size() != row)
    throw CircuitError("row layout label(8) | parent(w) | child0(w) | "
                       "child1(w) needs " +
                       std::to_string(row) + " output bits, circuit has " +
                       std::to_string(c.outputs.size()));

  DecodeResult r;
  r.tree.width = width;
  const std::uint64_t null = r.tree.null();

  std::vector<int> addr(width);
  for (std::uint64_t a = 0; a <= null; ++a) {
    for (int i = 0; i < width; ++i)
      addr[i] = (int)((a >> (width - 1 - i)) & 1);
    std::vector<int> bits = eval_circuit(c, addr);
    ++r.queries;
    auto field = [&](int off, int len) {
      std::uint64_t v = 0;
      for (int i = 0; i < len; ++i)
        v = (v << 1) | (std::uint64_t)bits[off + i];
      return v;
    };
    EtrNode nd{(std::uint8_t)field(0, 8), field(8, width),
               field(8 + width, width), field(8 + 2 * width, width)};
    if (nd.label == etr::kAbsent) {
      if (nd.parent != null || nd.child0 != null || nd.child1 != null)
        throw CircuitError("absent row at address " + addr_str(a) +
                           " is not all ones");
      continue;
    }
    if (a == null)
      throw CircuitError("the all-ones address is the null pointer and "
                         "cannot hold a node");
    r.tree.nodes[a] = nd;
  }
  if (r.tree.nodes.empty())
    throw CircuitError("every row is absent");

  int roots = 0;
  for (const auto& [a, nd] : r.tree.nodes) {
    int arity = label_arity(nd.label);
    if (arity < 0)
      throw CircuitError("malformed label " + std::to_string(nd.label) +
                         " at address " + addr_str(a));
    bool c0 = nd.child0 != null, c1 = nd.child1 != null;
    if (arity == 2 && (!c0 || !c1))
      throw CircuitError("binary node at address " + addr_str(a) +
                         " is missing a child");
    if (arity == 2 && nd.child0 == nd.child1)
      throw CircuitError("node at address " + addr_str(a) +
                         " lists the same child twice");
    if (arity == 1 && (!c0 || c1))
      throw CircuitError("unary node at address " + addr_str(a) +
                         " must have exactly the first child");
    if (arity == 0 && (c0 || c1))
      throw CircuitError("leaf at address " + addr_str(a) + " has children");
    for (std::uint64_t ch : {nd.child0, nd.child1}) {
      if (ch == null)
        continue;
      auto it = r.tree.nodes.find(ch);
      if (it == r.tree.nodes.end())
        throw CircuitError("dangling child address " + addr_str(ch) +
                           " under " + addr_str(a));
      if (it->second.parent != a)
        throw CircuitError("inconsistent parent/child pointers between " +
                           addr_str(a) + " and " + addr_str(ch));
    }
    if (nd.parent == null) {
      ++roots;
      r.tree.root = a;
    } else {
      auto it = r.tree.nodes.find(nd.parent);
      if (it == r.tree.nodes.end())
        throw CircuitError("dangling parent address " + addr_str(nd.parent) +
                           " above " + addr_str(a));
      if (it->second.child0 != a && it->second.child1 != a)
        throw CircuitError("inconsistent parent/child pointers between " +
                           addr_str(nd.parent) + " and " + addr_str(a));
    }
  }
  if (roots != 1)
    throw CircuitError("expected exactly one root, found " +
                       std::to_string(roots));

  // Mutual pointer consistency plus a unique root makes reachability the
  // last thing separating a tree from a forest with back edges.
  std::set<std::uint64_t> seen{r.tree.root};
  std::vector<std::uint64_t> work{r.tree.root};
  while (!work.empty()) {
    std::uint64_t a = work.back();
    work.pop_back();
    const EtrNode& nd = r.tree.nodes.at(a);
    for (std::uint64_t ch : {nd.child0, nd.child1})
      if (ch != null && seen.insert(ch).second)
        work.push_back(ch);
  }
  if (seen.size() != r.tree.nodes.size())
    throw CircuitError(std::to_string(r.tree.nodes.size() - seen.size()) +
                       " nodes unreachable from the root");
  return r;
}

BooleanCircuit encode_etr(const EtrTree& t) {
  if (t.width < 1 || t.width > 20)
    throw CircuitError("address width must be in 1..20, got " +
                       std::to_string(t.width));
  const int w = t.width;
  const std::uint64_t null = t.null();
  const int row = 8 + 3 * w;

  // Row bits per present address, most significant first per field. Absent
  // rows are all ones, so each output column is the negation of an OR over
  // the minterms of the present addresses whose bit is zero.
  std::map<std::uint64_t, std::vector<int>> table;
  for (const auto& [a, nd] : t.nodes) {
    if (a >= null)
      throw CircuitError("node address " + addr_str(a) +
                         " does not fit below the null pointer");
    std::vector<int>& bits = table[a];
    bits.reserve(row);
    for (int i = 7; i >= 0; --i)
      bits.push_back((nd.label >> i) & 1);
    for (std::uint64_t f : {nd.parent, nd.child0, nd.child1})
      for (int i = w - 1; i >= 0; --i)
        bits.push_back((int)((f >> i) & 1));
  }

  BooleanCircuit c;
  c.n_inputs = w;
  for (int i = 0; i < w; ++i)
    c.gates.push_back({Gate::Kind::Input, i, -1});
  for (int i = 0; i < w; ++i)
    c.gates.push_back({Gate::Kind::Not, i, -1});

  std::map<std::uint64_t, int> minterm;
  for (const auto& [a, bits] : table) {
    int acc = -1;
    for (int i = 0; i < w; ++i) {
      int lit = ((a >> (w - 1 - i)) & 1) ? i : w + i;
      if (acc < 0) {
        acc = lit;
      } else {
        c.gates.push_back({Gate::Kind::And, acc, lit});
        acc = (int)c.gates.size() - 1;
      }
    }
    minterm[a] = acc;
  }

  int const1 = -1;
  for (int j = 0; j < row; ++j) {
    int zeros = -1;  // OR of minterms whose bit j is zero
    for (const auto& [a, bits] : table) {
      if (bits[j])
        continue;
      if (zeros < 0) {
        zeros = minterm[a];
      } else {
        c.gates.push_back({Gate::Kind::Or, zeros, minterm[a]});
        zeros = (int)c.gates.size() - 1;
      }
    }
    if (zeros < 0) {
      if (const1 < 0) {
        c.gates.push_back({Gate::Kind::Const, 1, -1});
        const1 = (int)c.gates.size() - 1;
      }
      c.outputs.push_back(const1);
    } else {
      c.gates.push_back({Gate::Kind::Not, zeros, -1});
      c.outputs.push_back((int)c.gates.size() - 1);
    }
  }
  return c;
}

namespace {

const EtrNode& node_at(const EtrTree& t, std::uint64_t a) {
  auto it = t.nodes.find(a);
  if (it == t.nodes.end())
    throw CircuitError("no node at address " + addr_str(a));
  return it->second;
}

Poly term_of(const EtrTree& t, std::uint64_t a, int* max_var, int depth) {
  if (depth < 0)
    throw CircuitError("tree pointers form a cycle");
  const EtrNode& nd = node_at(t, a);
  switch (nd.label) {
    case etr::kAdd:
      return term_of(t, nd.child0, max_var, depth - 1) +
             term_of(t, nd.child1, max_var, depth - 1);
    case etr::kMul:
      return term_of(t, nd.child0, max_var, depth - 1) *
             term_of(t, nd.child1, max_var, depth - 1);
    case etr::kNeg:
      return -term_of(t, nd.child0, max_var, depth - 1);
    default:
      break;
  }
  if (nd.label >= 0x40 && nd.label <= 0x7F)
    return Poly::constant(Rational(nd.label & 0x3F));
  if (nd.label >= 0x80 && nd.label <= 0xFE) {
    int k = nd.label & 0x7F;
    if (k > *max_var)
      *max_var = k;
    return Poly::var(k);
  }
  throw CircuitError("expected a term at address " + addr_str(a));
}

BTree form_of(const EtrTree& t, std::uint64_t a, int* max_var, int depth) {
  if (depth < 0)
    throw CircuitError("tree pointers form a cycle");
  const EtrNode& nd = node_at(t, a);
  switch (nd.label) {
    case etr::kEq:
      return BTree::atom(term_of(t, nd.child0, max_var, depth - 1) -
                             term_of(t, nd.child1, max_var, depth - 1),
                         Rel::EQ);
    case etr::kLeq:
      return BTree::atom(term_of(t, nd.child1, max_var, depth - 1) -
                             term_of(t, nd.child0, max_var, depth - 1),
                         Rel::GE);
    case etr::kLt:
      return BTree::atom(term_of(t, nd.child1, max_var, depth - 1) -
                             term_of(t, nd.child0, max_var, depth - 1),
                         Rel::GT);
    case etr::kAnd: {
      std::vector<BTree> kids;
      kids.push_back(form_of(t, nd.child0, max_var, depth - 1));
      kids.push_back(form_of(t, nd.child1, max_var, depth - 1));
      return BTree::conj(std::move(kids));
    }
    case etr::kOr: {
      std::vector<BTree> kids;
      kids.push_back(form_of(t, nd.child0, max_var, depth - 1));
      kids.push_back(form_of(t, nd.child1, max_var, depth - 1));
      return BTree::disj(std::move(kids));
    }
    case etr::kNot:
      return BTree::negate(form_of(t, nd.child0, max_var, depth - 1));
    default:
      throw CircuitError("expected a comparison or connective at address " +
                         addr_str(a));
  }
}

}  // namespace

SolveOutcome etr_feasible_small(const EtrTree& t, int max_denom,
                                const Rational& lo, const Rational& hi) {
  if (t.nodes.empty())
    throw CircuitError("empty tree");
  int max_var = -1;
  ConstraintSystem cs;
  cs.domain = ConstraintSystem::Domain::Box;
  cs.box_lo = lo;
  cs.box_hi = hi;
  cs.root = form_of(t, t.root, &max_var, (int)t.nodes.size());
  cs.n = max_var + 1;
  return solve_constraints_small(cs, max_denom);
}

}  // namespace sumlogic
