#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tglp/formula.hpp"

namespace tglp {

// GlpPrec: one modality per ordinal below epsilon_0.
// GlpOmega: finite modalities only, same axioms.
// J: GlpOmega with monotonicity replaced by J6 and J7.
// GlBlack: GL for [0] plus a weaker operator [1] (axioms GLB1-GLB3) and the Loeb rule for [0].
enum class ProofSystem { GlpPrec, GlpOmega, J, GlBlack };

std::string_view to_string(ProofSystem s);
std::optional<ProofSystem> parse_system(std::string_view name);

enum class Schema { Tautology, K, Loeb, Monotone, NegIntrospect, J6, J7, GLB1, GLB2, GLB3 };

std::string_view to_string(Schema s);
std::optional<Schema> parse_schema(std::string_view name);
// Schemas available in `system`, in recognition order.
const std::vector<Schema>& schemas_of(ProofSystem system);

// Valid under every assignment to its variables and boxed subformulas, which are treated as atoms.
bool is_tautology(const Formula& f);

// Whether f is an instance of `schema` in `system` (side conditions included).
bool is_instance(const Formula& f, Schema schema, ProofSystem system);
// First schema of `system` that f instantiates.
std::optional<Schema> recognize_axiom(const Formula& f, ProofSystem system);

// Whether every modality index of f belongs to the language of `system`.
bool in_language(const Formula& f, ProofSystem system);

// Proof line justifications. Line references are 0-based and must point to earlier lines.
struct AxiomRule {
  Schema schema;
};
struct HypothesisRule {};
// The cited implication line must read  antecedent -> (this line).
struct ModusPonens {
  std::size_t antecedent;
  std::size_t implication;
};
struct Necessitation {
  std::size_t premise;
  Ordinal index;
};
// From [index]psi -> psi conclude psi. GlBlack only, [0] only.
struct LoebRule {
  std::size_t premise;
  Ordinal index;
};

using Justification = std::variant<AxiomRule, HypothesisRule, ModusPonens, Necessitation, LoebRule>;

struct ProofLine {
  Formula formula;
  Justification rule;
};

// A derivation, possibly from hypotheses. Hypotheses act as extra axioms to which every rule applies,
// so a proof with hypotheses shows the rule "hypotheses / conclusion" is admissible.
struct HilbertProof {
  ProofSystem system = ProofSystem::GlpPrec;
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;

  const Formula& conclusion() const { return lines.back().formula; }
};

struct CheckResult {
  bool accepted = true;
  std::size_t line = 0;  // 0-based index of the first offending line
  std::string reason;    // machine-readable code, e.g. "mp-mismatch"
  std::string detail;

  static CheckResult ok() { return {}; }
  explicit operator bool() const { return accepted; }
};

CheckResult check_proof(const HilbertProof& proof);

// Maps a GlpOmega proof to GlpPrec by sending every index i to map[i].
HilbertProof lift_proof(const HilbertProof& proof, const CondensationMap& map);

// Applies a uniform substitution to every formula of the proof.
HilbertProof substitute_proof(const HilbertProof& proof, const Substitution& sigma);

std::string to_string(const Justification& rule);

}  // namespace tglp
