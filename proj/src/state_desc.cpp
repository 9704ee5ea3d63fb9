#include "sumlogic/state_desc.hpp"

#include <algorithm>

namespace sumlogic {

namespace {

int var_position(const IvSet& iv, VarId v) {
  auto it = std::lower_bound(iv.vars.begin(), iv.vars.end(), v);
  if (it == iv.vars.end() || *it != v)
    return -1;
  return (int)(it - iv.vars.begin());
}

}  // namespace

IvSet make_ivset(const std::vector<VarId>& vars, int n) {
  if (n < 1)
    throw SemanticsError("range size must be at least 1");
  IvSet iv;
  iv.vars = vars;
  std::sort(iv.vars.begin(), iv.vars.end());
  iv.vars.erase(std::unique(iv.vars.begin(), iv.vars.end()), iv.vars.end());
  iv.n = n;
  // Odometer over per-variable choices {untouched, 1..n}, first variable
  // most significant and "untouched" first, so do() is the first entry.
  size_t k = iv.vars.size();
  std::vector<int> choice(k, 0);
  for (;;) {
    Intervention a;
    for (size_t j = 0; j < k; ++j)
      if (choice[j] > 0)
        a[iv.vars[j]] = choice[j];
    iv.pos[a] = (int)iv.list.size();
    iv.list.push_back(std::move(a));
    size_t j = k;
    while (j > 0) {
      --j;
      if (choice[j] < n) {
        ++choice[j];
        break;
      }
      choice[j] = 0;
      if (j == 0)
        return iv;
    }
    if (k == 0)
      return iv;
  }
}

Rational state_desc_count(const IvSet& iv) {
  long slots = 0;
  for (const auto& a : iv.list)
    slots += (long)iv.vars.size() - (long)a.size();
  Rational r(1);
  for (long i = 0; i < slots; ++i)
    r *= Rational(iv.n);
  return r;
}

std::vector<StateDesc> enumerate_state_descs(const IvSet& iv, size_t cap) {
  Rational count = state_desc_count(iv);
  if (count > Rational((long)cap))
    throw SemanticsError("state description budget exceeded: " + count.str() +
                         " descriptions, cap " + std::to_string(cap));

  size_t k = iv.vars.size();
  // Free slots in (intervention, variable) order.
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < iv.size(); ++i)
    for (size_t j = 0; j < k; ++j)
      if (!iv.list[(size_t)i].count(iv.vars[j]))
        slots.push_back({i, (int)j});

  StateDesc base;
  base.rows.assign(iv.list.size(), std::vector<int>(k, 0));
  for (int i = 0; i < iv.size(); ++i)
    for (const auto& [v, val] : iv.list[(size_t)i])
      base.rows[(size_t)i][(size_t)var_position(iv, v)] = val;

  std::vector<StateDesc> out;
  std::vector<int> vals(slots.size(), 1);
  for (;;) {
    StateDesc d = base;
    for (size_t s = 0; s < slots.size(); ++s)
      d.rows[(size_t)slots[s].first][(size_t)slots[s].second] = vals[s];
    out.push_back(std::move(d));
    size_t s = slots.size();
    while (s > 0) {
      --s;
      if (vals[s] < iv.n) {
        ++vals[s];
        break;
      }
      vals[s] = 1;
      if (s == 0)
        return out;
    }
    if (slots.empty())
      return out;
  }
}

Intervention intervention_of_identity(const IvSet& iv, const EventP& e) {
  Intervention a;
  std::vector<const Event*> stack{e.get()};
  while (!stack.empty()) {
    const Event* cur = stack.back();
    stack.pop_back();
    switch (cur->kind) {
      case Event::Kind::Top:
        break;
      case Event::Kind::And:
        stack.push_back(cur->a.get());
        stack.push_back(cur->b.get());
        break;
      case Event::Kind::Atom: {
        if (var_position(iv, cur->var) < 0)
          throw SemanticsError("event mentions a variable outside the support's scope");
        if (!cur->val.is_const)
          throw SemanticsError("intervention value is a free range variable");
        if (cur->val.idx < 1 || cur->val.idx > iv.n)
          throw SemanticsError("constant index " + std::to_string(cur->val.idx) +
                               " outside range 1.." + std::to_string(iv.n));
        auto [it, fresh] = a.insert({cur->var, cur->val.idx});
        if (!fresh && it->second != cur->val.idx)
          throw SemanticsError("intervention forces two values on one variable");
        break;
      }
      default:
        throw SemanticsError("intervention formula must be T or a conjunction of atoms");
    }
  }
  return a;
}

namespace {

bool holds_in_row(const IvSet& iv, const StateDesc& d, const EventP& e, int row) {
  switch (e->kind) {
    case Event::Kind::Top:
      return true;
    case Event::Kind::Not:
      return !holds_in_row(iv, d, e->a, row);
    case Event::Kind::And:
      return holds_in_row(iv, d, e->a, row) && holds_in_row(iv, d, e->b, row);
    case Event::Kind::Atom: {
      int j = var_position(iv, e->var);
      if (j < 0)
        throw SemanticsError("event mentions a variable outside the support's scope");
      if (!e->val.is_const)
        throw SemanticsError("event atom binds a free range variable");
      if (e->val.idx < 1 || e->val.idx > iv.n)
        throw SemanticsError("constant index " + std::to_string(e->val.idx) +
                             " outside range 1.." + std::to_string(iv.n));
      return d.rows[(size_t)row][(size_t)j] == e->val.idx;
    }
    case Event::Kind::Box: {
      Intervention a = intervention_of_identity(iv, e->a);
      int idx = iv.index_of(a);
      if (idx < 0)
        throw SemanticsError("event mentions an intervention outside the support's scope");
      return holds_in_row(iv, d, e->b, idx);
    }
  }
  return false;
}

}  // namespace

bool desc_entails(const IvSet& iv, const StateDesc& d, const EventP& ev) {
  int obs = iv.index_of({});
  return holds_in_row(iv, d, ev, obs);
}

bool desc_composition_closed(const IvSet& iv, const StateDesc& d) {
  size_t k = iv.vars.size();
  for (int i = 0; i < iv.size(); ++i) {
    const Intervention& a = iv.list[(size_t)i];
    for (size_t j = 0; j < k; ++j) {
      if (a.count(iv.vars[j]))
        continue;
      Intervention b = a;
      b[iv.vars[j]] = d.rows[(size_t)i][j];
      int bi = iv.index_of(b);
      if (d.rows[(size_t)bi] != d.rows[(size_t)i])
        return false;
    }
  }
  return true;
}

std::set<std::pair<int, int>> support_influences(const IvSet& iv,
                                                 const std::vector<StateDesc>& support) {
  std::set<std::pair<int, int>> out;
  size_t k = iv.vars.size();
  // Pairs of interventions forcing one variable to different values and
  // agreeing elsewhere.
  for (int i1 = 0; i1 < iv.size(); ++i1) {
    for (int i2 = i1 + 1; i2 < iv.size(); ++i2) {
      const Intervention &a = iv.list[(size_t)i1], &b = iv.list[(size_t)i2];
      if (a.size() != b.size())
        continue;
      int cause = -1;
      bool ok = true;
      auto ia = a.begin();
      auto ib = b.begin();
      for (; ia != a.end() && ok; ++ia, ++ib) {
        if (ia->first != ib->first) {
          ok = false;
        } else if (ia->second != ib->second) {
          if (cause >= 0)
            ok = false;
          else
            cause = var_position(iv, ia->first);
        }
      }
      if (!ok || cause < 0)
        continue;
      for (const auto& d : support) {
        for (size_t j = 0; j < k; ++j) {
          if ((int)j == cause || a.count(iv.vars[j]))
            continue;
          if (d.rows[(size_t)i1][j] != d.rows[(size_t)i2][j])
            out.insert({cause, (int)j});
        }
      }
    }
  }
  return out;
}

bool check_support_compatibility(const IvSet& iv, const std::vector<StateDesc>& support,
                                 const std::vector<int>& order) {
  std::vector<int> rank(order.size());
  for (size_t p = 0; p < order.size(); ++p)
    rank[(size_t)order[p]] = (int)p;
  for (const auto& [cause, effect] : support_influences(iv, support))
    if (rank[(size_t)cause] >= rank[(size_t)effect])
      return false;
  return true;
}

std::vector<StateDesc> deterministic_descs(const IvSet& iv, const std::vector<int>& order) {
  size_t k = iv.vars.size();
  // Response functions: the variable at rank p is a total function of the
  // values of the variables at ranks 0..p-1, one slot per argument tuple.
  std::vector<size_t> tbl_size(k), tbl_off(k + 1, 0);
  for (size_t p = 0; p < k; ++p) {
    size_t s = 1;
    for (size_t q = 0; q < p; ++q)
      s *= (size_t)iv.n;
    tbl_size[p] = s;
    tbl_off[p + 1] = tbl_off[p] + s;
  }
  size_t total_slots = tbl_off[k];

  std::vector<StateDesc> out;
  std::vector<int> slots(total_slots, 1);
  for (;;) {
    StateDesc d;
    d.rows.assign(iv.list.size(), std::vector<int>(k, 0));
    for (int i = 0; i < iv.size(); ++i) {
      const Intervention& a = iv.list[(size_t)i];
      std::vector<int> solved(k, 0);  // by rank
      for (size_t p = 0; p < k; ++p) {
        VarId v = iv.vars[(size_t)order[p]];
        auto it = a.find(v);
        int val;
        if (it != a.end()) {
          val = it->second;
        } else {
          size_t flat = 0;
          for (size_t q = 0; q < p; ++q)
            flat = flat * (size_t)iv.n + (size_t)(solved[q] - 1);
          val = slots[tbl_off[p] + flat];
        }
        solved[p] = val;
        d.rows[(size_t)i][(size_t)order[p]] = val;
      }
    }
    out.push_back(std::move(d));
    size_t s = total_slots;
    while (s > 0) {
      --s;
      if (slots[s] < iv.n) {
        ++slots[s];
        break;
      }
      slots[s] = 1;
      if (s == 0)
        return out;
    }
    if (total_slots == 0)
      return out;
  }
}

std::vector<std::vector<int>> partitions_rgs(int k) {
  std::vector<std::vector<int>> out;
  if (k <= 0)
    return out;
  std::vector<int> s((size_t)k, 0);
  for (;;) {
    out.push_back(s);
    int i = k - 1;
    for (; i >= 1; --i) {
      int mx = 0;
      for (int j = 0; j < i; ++j)
        mx = std::max(mx, s[(size_t)j]);
      if (s[(size_t)i] <= mx) {
        ++s[(size_t)i];
        for (int j = i + 1; j < k; ++j)
          s[(size_t)j] = 0;
        break;
      }
    }
    if (i == 0)
      return out;
  }
}

}  // namespace sumlogic
