#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sumlogic/ast.hpp"

namespace sumlogic {

class ProofError : public std::runtime_error {
public:
  explicit ProofError(const std::string& m) : std::runtime_error(m) {}
};

// Axiom schemas. PolyBase covers the polynomial/propositional core: Boolean
// tautologies over comparison and symbol-equality atoms plus a finite list of
// ordered-commutative-semiring and order schemas, each picked by a tag. The
// core is sound but deliberately minimal; corpus derivations use only the
// listed tags.
enum class AxiomId {
  PolyBase,
  EqReflex,    // c == c
  EqReplace,   // c == c' -> (phi[v/c] -> phi[v/c'])
  EqDist,      // c != c' -> P(V=c & V=c') ~ 0
  Cond,        // P(d|d') >= t <-> P(d & d') >= t * P(d'), d' guarded
  SumLower,    // pairwise-distinct S -> sum_v t >= sum_{c in S} t[V=v/V=c]
  Pos,         // P(a) > 0 for guarded a
  FinN,        // sum_v P(T) ~ N
  DistinctN,   // pairwise distinctness of c_1..c_N for one variable
  SumEqualsN,  // sum_x t ~ t[X=x/X=c_1] + ... + t[X=x/X=c_N]
};

enum class PolyTag {
  Taut,          // propositional tautology over Geq/SymEq atoms
  Refl,          // t ~ t
  AddComm,       // t + t' ~ t' + t
  AddAssoc,      // (t + t') + t'' ~ t + (t' + t'')
  AddZero,       // t + 0 ~ t
  MulComm,       // t * t' ~ t' * t
  MulAssoc,      // (t * t') * t'' ~ t * (t' * t'')
  MulZero,       // t * 0 ~ 0
  Distrib,       // t * (t' + t'') ~ t * t' + t * t''
  AddCong,       // t ~ t' -> t + t'' ~ t' + t''
  AddCongR,      // t ~ t' -> t'' + t ~ t'' + t'
  MulCong,       // t ~ t' -> t * t'' ~ t' * t''
  OrderRefl,     // t >= t
  OrderTrans,    // t >= t' & t' >= t'' -> t >= t''
  OrderAddMono,  // t >= t' -> t + t'' >= t' + t''
  OrderMulMono,  // t >= t' & t'' >= 0 -> t * t'' >= t' * t''
  OrderTotal,    // t >= t' | t' >= t
  NumOrder,      // n >= m for numerals with n >= m, negated otherwise
};

struct SchemaId {
  AxiomId id = AxiomId::PolyBase;
  PolyTag tag = PolyTag::Taut;  // meaningful only for PolyBase
};

enum class RuleId { MP, Conv, Unity, SumUpper, Fin, FreeElim, FreeIntro };

std::string axiom_name(AxiomId id);
std::string poly_tag_name(PolyTag tag);
std::string rule_name(RuleId id);
std::optional<AxiomId> axiom_by_name(const std::string& s);
std::optional<PolyTag> poly_tag_by_name(const std::string& s);
std::optional<RuleId> rule_by_name(const std::string& s);

struct AxiomCheck {
  bool accepted = false;
  std::string reason;  // first pattern mismatch when rejected
};

// Accepts exactly substitution instances of the schema. The bound used by
// Fin_N / Distinct_N / SumEquals_N is the signature's; those schemas reject
// under unbounded signatures.
AxiomCheck check_axiom_instance(const FormulaP& f, const SchemaId& schema,
                                const Signature& sig);
AxiomCheck check_axiom_instance_bounded(const FormulaP& f, const SchemaId& schema,
                                        std::optional<int> bound);

struct ProofNode {
  enum class Kind { Axiom, Rule, Hyp };
  FormulaP conclusion;
  Kind kind = Kind::Axiom;
  SchemaId axiom{};           // Kind::Axiom
  RuleId rule = RuleId::MP;   // Kind::Rule
  std::vector<int> premises;  // Kind::Rule: indices of earlier nodes
  bool generated = false;     // Kind::Rule: premises come from the generator
  int hyp = -1;               // Kind::Hyp: index into the hypothesis list
};

// Derivations are DAGs stored in topological order: premises point backwards.
// The conclusion of the proof is the conclusion of the last node.
struct Proof {
  std::vector<ProofNode> nodes;
};

// The closed systems share the axiom core and the rules MP, Conv, Unity and
// SumUpper; the _N variants add Fin_N, the _fin variants the Fin rule, and
// the open variants FreeElim and FreeIntro. Distinct_N / SumEquals_N are
// admitted as extra axioms only when the flags say so ("AX_N + Distinct_N").
enum class SystemId { AxClosed, AxNClosed, AxFinClosed, Ax, AxN, AxFin };

struct System {
  SystemId id = SystemId::AxClosed;
  int n = 0;  // signature bound for the _N systems
  bool extra_distinct = false;
  bool extra_sumeq = false;
};

bool system_open(SystemId id);
bool system_bounded(SystemId id);
std::string system_name(const System& sys);
// Accepts AX_closed, AX, AX_fin_closed, AX_fin, AX_N_closed, AX_N and the
// digit forms AX_2_closed, AX_2, ... "+Distinct_N" / "+SumEquals_N" suffixes
// toggle the extras. The N placeholder form leaves n = 0 for the caller.
std::optional<System> parse_system(const std::string& text);

enum class ProofStatus { Verified, VerifiedBounded, Rejected };

struct ProofVerdict {
  ProofStatus status = ProofStatus::Rejected;
  std::set<RuleId> truncated;  // rules whose premise family was cut at n_max
  int node = -1;               // offending node when rejected (0-based)
  std::string reason;
  bool ok() const { return status != ProofStatus::Rejected; }
};

// Premise generator for infinitary rule applications: for the node at `node`
// and 1-based premise index k, produce a sub-proof of the k-th family
// formula. Sub-proofs are checked under the same system and hypotheses.
using PremiseGen = std::function<std::optional<Proof>(int node, long k)>;

struct CheckOptions {
  long n_max = 64;
  PremiseGen gen;  // consulted for nodes with generated = true
  int jobs = 1;    // node-level parallelism; the verdict is deterministic
};

// The canonical premise family of a rule application with this conclusion.
// Conv and Fin index premises by n = 1, 2, ...; Unity by the same n with
// constants capped at the bound; SumUpper flattens (n, partition) pairs with
// partitions in restricted-growth order; FreeIntro substitutes the k-th
// constant for `var` (the least free range variable when unset). Families
// are finite exactly when `rule_family_size` returns a value.
std::optional<FormulaP> rule_premise(RuleId rule, const FormulaP& conclusion,
                                     long k, const System& sys,
                                     std::optional<DSym> var = {});
std::optional<long> rule_family_size(RuleId rule, const FormulaP& conclusion,
                                     const System& sys,
                                     std::optional<DSym> var = {});

ProofVerdict check_proof(const Proof& p, const System& sys,
                         const std::vector<FormulaP>& hyps,
                         const CheckOptions& opt = {});

// A self-contained checkable script: system, declared variables, hypotheses
// and the derivation.
struct ProofScript {
  System system;
  Signature sig;
  std::vector<FormulaP> hyps;
  Proof proof;
};

// Line-oriented script format. '#' starts a comment; the optional `system`
// directive comes first, then `hyp k: formula` lines, then numbered nodes
//   n: formula BY axiom <id>
//   n: formula BY rule <id> FROM n1,n2,...
//   n: formula BY rule <id> GEN
//   n: formula BY hyp k
// with node numbers 1,2,3,... in order.
ProofScript parse_proof_script(const std::string& text);
std::string print_proof_script(const ProofScript& s);

// Stored corpus derivations, built programmatically.
std::vector<std::string> corpus_proof_names();
ProofScript derive_corpus(const std::string& name);

}  // namespace sumlogic
