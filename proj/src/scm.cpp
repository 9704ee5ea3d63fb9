#include "sumlogic/scm.hpp"

#include <algorithm>
#include <set>

namespace sumlogic {

int Scm::val_index(VarId v, int value) const {
  const auto& r = vars[v].range;
  auto it = std::lower_bound(r.begin(), r.end(), value);
  if (it == r.end() || *it != value)
    return -1;
  return (int)(it - r.begin());
}

size_t Scm::fn_index(VarId v, const std::vector<int>& values, int u) const {
  size_t idx = 0;
  for (VarId o = 0; o < n_vars(); ++o) {
    if (o == v)
      continue;
    int vi = val_index(o, values[o]);
    if (vi < 0)
      throw SemanticsError("value outside range of " + vars[o].name);
    idx = idx * vars[o].range.size() + (size_t)vi;
  }
  return idx * exo_labels.size() + (size_t)u;
}

size_t Scm::fn_size(VarId v) const {
  size_t n = exo_labels.size();
  for (VarId o = 0; o < n_vars(); ++o)
    if (o != v)
      n *= vars[o].range.size();
  return n;
}

int Scm::dsym_value(const DSym& d, const Assignment& iota) const {
  if (d.is_const) {
    const auto& cv = vars.at(d.var).const_val;
    if (d.idx < 1 || d.idx > (int)cv.size())
      throw SemanticsError("model does not interpret constant index " +
                           std::to_string(d.idx) + " of " + vars.at(d.var).name);
    return cv[d.idx - 1];
  }
  auto it = iota.find(d);
  if (it == iota.end())
    throw SemanticsError("unassigned range variable " + sig.dsym_str(d));
  return it->second;
}

ValidationReport validate(const Scm& m) {
  ValidationReport rep;
  int n = m.n_vars();
  if ((int)m.fn.size() != n || (int)m.vars.size() != n)
    rep.fail("structure arrays disagree on variable count");
  for (VarId v = 0; v < n && rep.ok; ++v) {
    const auto& var = m.vars[v];
    if (var.range.empty())
      rep.fail("empty range for " + var.name);
    for (size_t i = 0; i < var.range.size(); ++i) {
      if (var.range[i] <= 0)
        rep.fail("range of " + var.name + " must be positive integers");
      if (i > 0 && var.range[i] <= var.range[i - 1])
        rep.fail("range of " + var.name + " must be strictly increasing");
    }
  }
  if (!rep.ok)
    return rep;

  // Closed world: every range value named by some constant, constants in
  // range.
  for (VarId v = 0; v < n; ++v) {
    const auto& var = m.vars[v];
    std::set<int> named;
    if (var.const_val.empty())
      rep.fail("no constants declared for " + var.name);
    for (int c : var.const_val) {
      if (m.val_index(v, c) < 0)
        rep.fail("constant value " + std::to_string(c) + " outside range of " +
                 var.name);
      named.insert(c);
    }
    for (int r : var.range)
      if (!named.count(r))
        rep.fail("closed world violated: value " + std::to_string(r) + " of " +
                 var.name + " has no constant");
  }

  if (m.exo_labels.size() != m.exo_pmf.size() || m.exo_labels.empty())
    rep.fail("exogenous outcomes and pmf must align and be nonempty");
  else {
    Rational total(0);
    for (const auto& p : m.exo_pmf) {
      if (p.sign() < 0)
        rep.fail("negative pmf entry");
      total += p;
    }
    if (!(total == Rational(1)))
      rep.fail("pmf sums to " + total.str() + ", expected 1");
  }

  if ((int)m.order.size() != n)
    rep.fail("order must list every variable once");
  else {
    std::vector<bool> seen(n, false);
    for (VarId v : m.order) {
      if (v < 0 || v >= n || seen[v])
        rep.fail("order must be a permutation of the variables");
      else
        seen[v] = true;
    }
  }
  if (!rep.ok)
    return rep;

  for (VarId v = 0; v < n; ++v) {
    if (m.fn[v].size() != m.fn_size(v)) {
      rep.fail("mechanism table of " + m.vars[v].name + " has " +
               std::to_string(m.fn[v].size()) + " rows, expected " +
               std::to_string(m.fn_size(v)));
      continue;
    }
    for (int val : m.fn[v])
      if (m.val_index(v, val) < 0) {
        rep.fail("mechanism of " + m.vars[v].name + " outputs " +
                 std::to_string(val) + " outside its range");
        break;
      }
  }
  if (!rep.ok)
    return rep;

  // Recursiveness: f_v may depend only on variables strictly earlier in
  // `order` (and the exogenous outcome). Scan each later variable for an
  // effect while all earlier ones are fixed.
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i)
    pos[m.order[i]] = i;
  for (VarId v = 0; v < n; ++v) {
    for (VarId w = 0; w < n; ++w) {
      if (w == v || pos[w] < pos[v])
        continue;
      // Vary w over its range with all other coordinates fixed.
      std::vector<int> values(n);
      size_t combos = 1;
      std::vector<VarId> others;
      for (VarId o = 0; o < n; ++o)
        if (o != v && o != w) {
          others.push_back(o);
          combos *= m.vars[o].range.size();
        }
      bool violated = false;
      for (size_t ci = 0; ci < combos && !violated; ++ci) {
        size_t rest = ci;
        for (VarId o : others) {
          values[o] = m.vars[o].range[rest % m.vars[o].range.size()];
          rest /= m.vars[o].range.size();
        }
        for (int u = 0; u < m.n_exo() && !violated; ++u) {
          values[w] = m.vars[w].range[0];
          int first = m.fn[v][m.fn_index(v, values, u)];
          for (size_t k = 1; k < m.vars[w].range.size(); ++k) {
            values[w] = m.vars[w].range[k];
            int got = m.fn[v][m.fn_index(v, values, u)];
            if (got != first) {
              rep.fail("not recursive: " + m.vars[v].name + " depends on " +
                       m.vars[w].name + " (not earlier in order); witness: " +
                       m.vars[w].name + "=" + std::to_string(m.vars[w].range[0]) +
                       " vs " + std::to_string(m.vars[w].range[k]) +
                       " at outcome " + m.exo_labels[u]);
              violated = true;
              break;
            }
          }
        }
      }
    }
  }
  return rep;
}

Scm apply_intervention(const Scm& m, const Intervention& iv) {
  Scm out = m;
  for (const auto& [v, value] : iv) {
    if (v < 0 || v >= m.n_vars())
      throw SemanticsError("intervention on unknown variable id");
    if (m.val_index(v, value) < 0)
      throw SemanticsError("intervention value " + std::to_string(value) +
                           " outside range of " + m.vars[v].name);
    out.fn[v].assign(m.fn_size(v), value);
  }
  return out;
}

std::vector<int> solve(const Scm& m, int u, const Intervention& iv) {
  int n = m.n_vars();
  std::vector<int> values(n);
  // Placeholder values; recursiveness makes not-yet-computed coordinates
  // irrelevant to each step.
  for (VarId v = 0; v < n; ++v)
    values[v] = m.vars[v].range[0];
  for (VarId v : m.order) {
    auto it = iv.find(v);
    if (it != iv.end()) {
      if (m.val_index(v, it->second) < 0)
        throw SemanticsError("intervention value outside range of " +
                             m.vars[v].name);
      values[v] = it->second;
    } else {
      values[v] = m.fn[v][m.fn_index(v, values, u)];
    }
  }
  return values;
}

const std::vector<std::vector<int>>& ScmEval::solved(const Intervention& iv) {
  std::vector<int> key(m_.n_vars(), -1);
  for (const auto& [v, value] : iv)
    key.at(v) = value;
  auto it = cache_.find(key);
  if (it != cache_.end())
    return it->second;
  std::vector<std::vector<int>> table;
  table.reserve(m_.n_exo());
  for (int u = 0; u < m_.n_exo(); ++u)
    table.push_back(solve(m_, u, iv));
  return cache_.emplace(std::move(key), std::move(table)).first->second;
}

namespace {

bool holds_in(const Scm& m, const std::vector<int>& values, const EventP& e,
              const Assignment& iota) {
  switch (e->kind) {
    case Event::Kind::Top: return true;
    case Event::Kind::Atom:
      return values[e->var] == m.dsym_value(e->val, iota);
    case Event::Kind::Not: return !holds_in(m, values, e->a, iota);
    case Event::Kind::And:
      return holds_in(m, values, e->a, iota) && holds_in(m, values, e->b, iota);
    case Event::Kind::Box:
      throw SemanticsError("nested intervention box");
  }
  return false;
}

}  // namespace

Intervention intervention_of(const Scm& m, const EventP& e,
                             const Assignment& iota) {
  Intervention iv;
  std::vector<const Event*> stack{e.get()};
  while (!stack.empty()) {
    const Event* cur = stack.back();
    stack.pop_back();
    switch (cur->kind) {
      case Event::Kind::Top: break;
      case Event::Kind::Atom: {
        int value = m.dsym_value(cur->val, iota);
        auto [it, fresh] = iv.emplace(cur->var, value);
        if (!fresh && it->second != value)
          throw SemanticsError("inconsistent intervention on " +
                               m.vars[cur->var].name);
        break;
      }
      case Event::Kind::And:
        stack.push_back(cur->a.get());
        stack.push_back(cur->b.get());
        break;
      default:
        throw SemanticsError("intervention formula must be T or a conjunction of atoms");
    }
  }
  return iv;
}

bool ScmEval::event_holds(const EventP& e, int u, const Assignment& iota) {
  switch (e->kind) {
    case Event::Kind::Top: return true;
    case Event::Kind::Atom:
      return solved({})[u][e->var] == m_.dsym_value(e->val, iota);
    case Event::Kind::Not: return !event_holds(e->a, u, iota);
    case Event::Kind::And:
      return event_holds(e->a, u, iota) && event_holds(e->b, u, iota);
    case Event::Kind::Box: {
      Intervention iv = intervention_of(m_, e->a, iota);
      for (const auto& [v, value] : iv)
        if (m_.val_index(v, value) < 0)
          throw SemanticsError("intervention value outside range of " +
                               m_.vars[v].name);
      return holds_in(m_, solved(iv)[u], e->b, iota);
    }
  }
  return false;
}

Rational ScmEval::event_probability(const EventP& e, const Assignment& iota) {
  Rational p(0);
  for (int u = 0; u < m_.n_exo(); ++u)
    if (event_holds(e, u, iota))
      p += m_.exo_pmf[u];
  return p;
}

Rational event_probability(const Scm& m, const EventP& e, const Assignment& iota) {
  ScmEval ev(m);
  return ev.event_probability(e, iota);
}

std::set<std::pair<VarId, VarId>> induced_influences(
    const Scm& m, const std::vector<VarId>& vars) {
  std::set<std::pair<VarId, VarId>> out;
  ScmEval ev(m);
  int k = (int)vars.size();
  // All interventions over subsets of `vars`: subset bitmask + value choice.
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<VarId> dom;
    size_t combos = 1;
    for (int i = 0; i < k; ++i)
      if (mask & (1 << i)) {
        dom.push_back(vars[i]);
        combos *= m.vars[vars[i]].range.size();
      }
    for (size_t ci = 0; ci < combos; ++ci) {
      Intervention iv;
      size_t rest = ci;
      for (VarId v : dom) {
        iv[v] = m.vars[v].range[rest % m.vars[v].range.size()];
        rest /= m.vars[v].range.size();
      }
      // Vary each intervened variable's value to probe influence.
      for (VarId cause : dom) {
        for (int alt : m.vars[cause].range) {
          if (alt == iv[cause])
            continue;
          Intervention iv2 = iv;
          iv2[cause] = alt;
          const auto& t1 = ev.solved(iv);
          const auto& t2 = ev.solved(iv2);
          for (int u = 0; u < m.n_exo(); ++u) {
            if (m.exo_pmf[u].is_zero())
              continue;
            for (VarId effect : vars) {
              if (effect == cause)
                continue;
              if (t1[u][effect] != t2[u][effect])
                out.insert({cause, effect});
            }
          }
        }
      }
    }
  }
  return out;
}

PositivityReport check_positivity(const Scm& m) {
  PositivityReport rep;
  std::set<std::vector<int>> seen;
  ScmEval ev(m);
  const auto& obs = ev.solved({});
  for (int u = 0; u < m.n_exo(); ++u)
    if (m.exo_pmf[u].sign() > 0)
      seen.insert(obs[u]);
  size_t want = 1;
  for (const auto& var : m.vars)
    want *= var.range.size();
  if (seen.size() == want)
    return rep;
  rep.positive = false;
  // Find a missing assignment for the report.
  int n = m.n_vars();
  std::vector<int> values(n);
  size_t combos = want;
  for (size_t ci = 0; ci < combos; ++ci) {
    size_t rest = ci;
    for (VarId v = 0; v < n; ++v) {
      values[v] = m.vars[v].range[rest % m.vars[v].range.size()];
      rest /= m.vars[v].range.size();
    }
    if (!seen.count(values)) {
      rep.missing = values;
      break;
    }
  }
  return rep;
}

}  // namespace sumlogic
