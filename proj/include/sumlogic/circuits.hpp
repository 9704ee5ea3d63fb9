#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sumlogic/rational.hpp"
#include "sumlogic/solver.hpp"

namespace sumlogic {

class CircuitError : public std::runtime_error {
public:
  explicit CircuitError(const std::string& m) : std::runtime_error(m) {}
};

// Boolean circuits as ordered DAGs. Operands always point at earlier gates,
// which is how the netlist format keeps the graph acyclic by construction.
// Const gates are a convenience extension of the and/or/not alphabet; they
// make table circuits readable and are expressible as x & !x / !(x & !x).
struct Gate {
  enum class Kind { Input, And, Or, Not, Const };
  Kind kind = Kind::Input;
  int a = -1;  // Input: input index; Const: 0 or 1; Not/And/Or: left operand
  int b = -1;  // And/Or: right operand

  bool operator==(const Gate&) const = default;
};

struct BooleanCircuit {
  int n_inputs = 0;
  std::vector<Gate> gates;
  std::vector<int> outputs;  // gate indices, ordered

  bool operator==(const BooleanCircuit&) const = default;
};

// Structural sanity: arities, operand ordering, index ranges. Throws
// CircuitError.
void check_circuit(const BooleanCircuit& c);

// Gate-by-gate evaluation in index order. Bits are 0/1 ints. Throws on an
// input length mismatch or a malformed circuit.
std::vector<int> eval_circuit(const BooleanCircuit& c,
                              const std::vector<int>& input);

// Netlist text:
//   inputs 2
//   g0 = IN 0
//   g1 = IN 1
//   g2 = AND g0 g1
//   g3 = NOT g2
//   g4 = CONST 1
//   outputs g2 g3
// Gate names are arbitrary identifiers defined once, operands must be
// defined earlier, '#' starts a comment. Printing renames gates g0..gk in
// index order.
BooleanCircuit parse_circuit(const std::string& text);
BooleanCircuit parse_circuit_file(const std::string& path);
std::string print_circuit(const BooleanCircuit& c);

// Trees for existential real-arithmetic formulas. Nodes live at w-bit
// addresses; the all-ones address is reserved as the null pointer. Label
// bytes: operations 0x01..0x09 (see the etr:: constants), integer constants
// 0x40|k for k in 0..63, variables 0x80|k for k in 0..126, and 0xFF for an
// absent node (an absent row must have all pointer fields null as well).
namespace etr {
constexpr std::uint8_t kAdd = 0x01;  // binary +
constexpr std::uint8_t kMul = 0x02;  // binary *
constexpr std::uint8_t kNeg = 0x03;  // unary -
constexpr std::uint8_t kEq = 0x04;   // =
constexpr std::uint8_t kLeq = 0x05;  // <=
constexpr std::uint8_t kLt = 0x06;   // <
constexpr std::uint8_t kAnd = 0x07;
constexpr std::uint8_t kOr = 0x08;
constexpr std::uint8_t kNot = 0x09;
constexpr std::uint8_t kAbsent = 0xFF;

constexpr std::uint8_t const_label(int k) {
  return static_cast<std::uint8_t>(0x40 | k);  // k in 0..63
}
constexpr std::uint8_t var_label(int k) {
  return static_cast<std::uint8_t>(0x80 | k);  // k in 0..126
}
}  // namespace etr

struct EtrNode {
  std::uint8_t label = etr::kAbsent;
  std::uint64_t parent = 0;
  std::uint64_t child0 = 0;
  std::uint64_t child1 = 0;

  bool operator==(const EtrNode&) const = default;
};

struct EtrTree {
  int width = 0;  // address width w; null pointer is 2^w - 1
  std::uint64_t root = 0;
  std::map<std::uint64_t, EtrNode> nodes;  // present nodes only

  std::uint64_t null() const { return (std::uint64_t{1} << width) - 1; }

  bool operator==(const EtrTree&) const = default;
};

struct DecodeResult {
  EtrTree tree;
  std::size_t queries = 0;  // always exactly 2^width
};

// Reads the whole address space of a circuit whose output rows are packed as
// label(8) | parent(w) | child0(w) | child1(w), each field most significant
// bit first, then checks the result is a tree: one root, mutually consistent
// parent/child pointers, label arities respected, every node reachable.
// Throws CircuitError on any violation; width is capped at 20.
DecodeResult decode_etr(const BooleanCircuit& c, int width);

// Explicit table-lookup synthesis of a circuit computing the tree: one
// minterm per address, shared across output columns. Writes the table as
// given without validating it, so decode_etr(encode_etr(t)) round trips
// exactly on well-formed trees and flags broken ones.
BooleanCircuit encode_etr(const EtrTree& t);

// Feasibility of the tree's formula at bounded denominator over the box
// [lo, hi]^n: the root must be a comparison or connective; terms become
// polynomials over the variable leaves and the shared grid solver runs on
// the resulting system (no normalization row). Witnesses are verified
// exactly; Infeasible is sound over the reals (sign analysis and linear
// elimination only).
SolveOutcome etr_feasible_small(const EtrTree& t, int max_denom,
                                const Rational& lo = Rational(-2),
                                const Rational& hi = Rational(2));

}  // namespace sumlogic
