#include "sumlogic/scm_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sumlogic {

namespace {

class ModelFormatError : public SemanticsError {
public:
  ModelFormatError(const std::string& m, int line)
      : SemanticsError("model line " + std::to_string(line) + ": " + m) {}
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#')
      break;
    out.push_back(t);
  }
  return out;
}

int parse_value(const std::string& t, int line) {
  for (char c : t)
    if (!isdigit((unsigned char)c))
      throw ModelFormatError("expected a positive integer, got '" + t + "'", line);
  return atoi(t.c_str());
}

}  // namespace

Scm parse_model(const std::string& text) {
  Scm m;
  std::map<std::string, VarId> ids;
  std::map<VarId, bool> have_range, have_consts;
  std::map<VarId, std::map<size_t, int>> rows;  // fn rows keyed by table index
  std::map<std::string, int> exo_ids;
  bool have_vars = false, have_order = false;
  VarId fn_var = -1;

  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  auto var_of = [&](const std::string& name, int ln) {
    auto it = ids.find(name);
    if (it == ids.end())
      throw ModelFormatError("unknown variable " + name, ln);
    return it->second;
  };

  // fn rows may only be interpreted once ranges and exo are known; collect
  // raw rows first.
  struct RawRow {
    VarId v;
    std::vector<std::string> toks;
    int line;
  };
  std::vector<RawRow> raw_rows;

  while (std::getline(in, line)) {
    ++lineno;
    auto toks = tokens_of(line);
    if (toks.empty())
      continue;
    const std::string& head = toks[0];
    if (head == "vars") {
      if (have_vars)
        throw ModelFormatError("duplicate vars section", lineno);
      have_vars = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        VarId v = m.sig.add_var(toks[i]);
        ids[toks[i]] = v;
        m.vars.push_back({toks[i], {}, {}});
        m.fn.emplace_back();
      }
      fn_var = -1;
      continue;
    }
    if (head == "order") {
      if (have_order)
        throw ModelFormatError("duplicate order section", lineno);
      have_order = true;
      for (size_t i = 1; i < toks.size(); ++i)
        m.order.push_back(var_of(toks[i], lineno));
      fn_var = -1;
      continue;
    }
    if (head == "range" || head == "consts") {
      if (toks.size() < 4 || toks[2] != ":")
        throw ModelFormatError("expected '" + head + " V : values...'", lineno);
      VarId v = var_of(toks[1], lineno);
      std::vector<int> values;
      for (size_t i = 3; i < toks.size(); ++i)
        values.push_back(parse_value(toks[i], lineno));
      if (head == "range") {
        if (have_range[v])
          throw ModelFormatError("duplicate range for " + toks[1], lineno);
        have_range[v] = true;
        m.vars[v].range = values;
      } else {
        if (have_consts[v])
          throw ModelFormatError("duplicate consts for " + toks[1], lineno);
        have_consts[v] = true;
        m.vars[v].const_val = values;
      }
      fn_var = -1;
      continue;
    }
    if (head == "exo") {
      if (toks.size() != 4 || toks[2] != ":")
        throw ModelFormatError("expected 'exo label : p/q'", lineno);
      if (exo_ids.count(toks[1]))
        throw ModelFormatError("duplicate exogenous outcome " + toks[1], lineno);
      auto p = Rational::parse(toks[3]);
      if (!p)
        throw ModelFormatError("bad rational '" + toks[3] + "'", lineno);
      exo_ids[toks[1]] = (int)m.exo_labels.size();
      m.exo_labels.push_back(toks[1]);
      m.exo_pmf.push_back(*p);
      fn_var = -1;
      continue;
    }
    if (head == "fn") {
      if (toks.size() < 3 || toks[2] != ":")
        throw ModelFormatError("expected 'fn V : others... u'", lineno);
      fn_var = var_of(toks[1], lineno);
      // Verify the header lists the other variables in id order, then u.
      std::vector<std::string> want;
      for (VarId o = 0; o < m.n_vars(); ++o)
        if (o != fn_var)
          want.push_back(m.vars[o].name);
      want.push_back("u");
      std::vector<std::string> got(toks.begin() + 3, toks.end());
      if (got != want) {
        std::string w;
        for (const auto& s : want)
          w += s + " ";
        throw ModelFormatError("fn header must be ': " + w + "'", lineno);
      }
      continue;
    }
    // Row line: values... ulabel -> value
    if (fn_var < 0)
      throw ModelFormatError("row outside an fn section: '" + line + "'", lineno);
    raw_rows.push_back({fn_var, toks, lineno});
  }

  if (!have_vars)
    throw SemanticsError("model has no vars section");
  if (!have_order)
    for (VarId v = 0; v < m.n_vars(); ++v)
      m.order.push_back(v);

  for (const auto& row : raw_rows) {
    size_t want = (size_t)m.n_vars() - 1 + 3;  // values, label, ->, value
    if (row.toks.size() != want)
      throw ModelFormatError("expected " + std::to_string(m.n_vars() - 1) +
                                 " values, outcome, '->', value",
                             row.line);
    std::vector<int> values(m.n_vars(), 0);
    size_t i = 0;
    for (VarId o = 0; o < m.n_vars(); ++o) {
      if (o == row.v)
        continue;
      values[o] = parse_value(row.toks[i + 0], row.line);
      ++i;
    }
    auto uit = exo_ids.find(row.toks[i]);
    if (uit == exo_ids.end())
      throw ModelFormatError("unknown exogenous outcome " + row.toks[i], row.line);
    if (row.toks[i + 1] != "->")
      throw ModelFormatError("expected '->'", row.line);
    int value = parse_value(row.toks[i + 2], row.line);
    size_t idx;
    try {
      idx = m.fn_index(row.v, values, uit->second);
    } catch (const SemanticsError& e) {
      throw ModelFormatError(e.what(), row.line);
    }
    auto [it, fresh] = rows[row.v].emplace(idx, value);
    if (!fresh)
      throw ModelFormatError("duplicate row", row.line);
  }

  for (VarId v = 0; v < m.n_vars(); ++v) {
    size_t want = m.fn_size(v);
    auto& got = rows[v];
    if (got.size() != want)
      throw SemanticsError("mechanism table of " + m.vars[v].name + " has " +
                           std::to_string(got.size()) + " rows, expected " +
                           std::to_string(want));
    m.fn[v].resize(want);
    for (const auto& [idx, value] : got)
      m.fn[v][idx] = value;
  }
  return m;
}

Scm load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw SemanticsError("cannot open model file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string print_model(const Scm& m) {
  std::ostringstream out;
  out << "vars";
  for (const auto& v : m.vars)
    out << " " << v.name;
  out << "\norder";
  for (VarId v : m.order)
    out << " " << m.vars[v].name;
  out << "\n";
  for (const auto& v : m.vars) {
    out << "range " << v.name << " :";
    for (int r : v.range)
      out << " " << r;
    out << "\n";
  }
  for (const auto& v : m.vars) {
    out << "consts " << v.name << " :";
    for (int c : v.const_val)
      out << " " << c;
    out << "\n";
  }
  for (int u = 0; u < m.n_exo(); ++u)
    out << "exo " << m.exo_labels[u] << " : " << m.exo_pmf[u].str() << "\n";
  for (VarId v = 0; v < m.n_vars(); ++v) {
    out << "fn " << m.vars[v].name << " :";
    for (VarId o = 0; o < m.n_vars(); ++o)
      if (o != v)
        out << " " << m.vars[o].name;
    out << " u\n";
    // Enumerate rows in table order.
    std::vector<VarId> others;
    for (VarId o = 0; o < m.n_vars(); ++o)
      if (o != v)
        others.push_back(o);
    size_t combos = 1;
    for (VarId o : others)
      combos *= m.vars[o].range.size();
    std::vector<int> values(m.n_vars(), 0);
    for (size_t ci = 0; ci < combos; ++ci) {
      // others in id order, most significant first to match fn_index
      size_t rest = ci;
      for (auto it = others.rbegin(); it != others.rend(); ++it) {
        values[*it] = m.vars[*it].range[rest % m.vars[*it].range.size()];
        rest /= m.vars[*it].range.size();
      }
      for (int u = 0; u < m.n_exo(); ++u) {
        for (VarId o : others)
          out << values[o] << " ";
        out << m.exo_labels[u] << " -> "
            << m.fn[v][m.fn_index(v, values, u)] << "\n";
      }
    }
  }
  return out.str();
}

void save_model(const Scm& m, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw SemanticsError("cannot write model file " + path);
  out << print_model(m);
}

}  // namespace sumlogic
