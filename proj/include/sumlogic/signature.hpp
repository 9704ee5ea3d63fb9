#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sumlogic {

using VarId = int;

// Symbol over a random variable's domain: either the i-th constant c_i@V or
// the i-th range variable (lowercased variable name + index). Indices are
// 1-based.
struct DSym {
  bool is_const = true;
  VarId var = -1;
  int idx = 0;

  bool operator==(const DSym&) const = default;
  bool operator<(const DSym& o) const {
    if (var != o.var) return var < o.var;
    if (is_const != o.is_const) return is_const < o.is_const;
    return idx < o.idx;
  }
};

inline DSym const_sym(VarId v, int i) { return DSym{true, v, i}; }
inline DSym range_sym(VarId v, int i) { return DSym{false, v, i}; }

class SyntaxError : public std::runtime_error {
public:
  explicit SyntaxError(const std::string& m) : std::runtime_error(m) {}
};

// Declares the random variables. Variable names start with an uppercase
// letter, may not end in a digit (range-variable tokens are the lowercased
// name followed by an index, so trailing digits would be ambiguous), and must
// be unique case-insensitively. An optional uniform bound N restricts constant
// indices to 1..N.
class Signature {
public:
  VarId add_var(const std::string& name);

  int size() const { return (int)names_.size(); }
  const std::string& name(VarId v) const { return names_.at(v); }
  std::optional<VarId> lookup(const std::string& name) const;
  // Resolves a lowercased range-variable stem ("x" for variable X).
  std::optional<VarId> lookup_stem(const std::string& stem) const;

  void set_bound(int n) { bound_ = n; }
  std::optional<int> bound() const { return bound_; }
  bool index_ok(int constant_idx) const {
    return constant_idx >= 1 && (!bound_ || constant_idx <= *bound_);
  }

  std::string dsym_str(const DSym& d) const;

private:
  std::vector<std::string> names_;
  std::vector<std::string> stems_;
  std::optional<int> bound_;
};

std::string lowercase(const std::string& s);

}  // namespace sumlogic
