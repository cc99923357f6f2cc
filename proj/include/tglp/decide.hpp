#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tglp/formula.hpp"
#include "tglp/hilbert.hpp"
#include "tglp/kripke.hpp"

namespace tglp {

enum class DecisionStatus { Theorem, NonTheorem, Unknown };

std::string_view to_string(DecisionStatus s);

struct Countermodel {
  JModel model;
  std::size_t world = 0;
};

struct SearchOptions {
  bool stratified_only = false;
  // Worker threads for the model search; the reported hit does not depend on this.
  std::size_t threads = 1;
};

struct SearchBounds {
  std::size_t max_worlds = 0;
  std::size_t relations = 0;
  bool stratified_only = false;
};

struct CorpusEntry {
  std::string name;
  HilbertProof proof;
};
using ProofCorpus = std::vector<CorpusEntry>;

struct DecisionOutcome {
  DecisionStatus status = DecisionStatus::Unknown;
  Condensation condensed;
  // Theorem: a GLP_prec proof of the input and where it came from ("axiom:K", "corpus:<name>").
  std::optional<HilbertProof> proof;
  std::string proof_source;
  // NonTheorem: a model of the condensed formula's relations and a world refuting it.
  std::optional<Countermodel> countermodel;
  // Bounds of the countermodel search, when one ran.
  std::optional<SearchBounds> bounds;
};

// First model, in enumeration order, with a world satisfying M+(g) & ~g, and its least such world.
// g must have finite indices only. The search uses max index + 1 relations (at least one).
std::optional<Countermodel> find_countermodel(const Formula& g, std::size_t max_worlds,
                                              const SearchOptions& options = {});

// Number of relations searched for a condensed formula.
std::size_t relations_for(const Formula& g);

DecisionOutcome decide(const Formula& f, std::size_t max_worlds, const ProofCorpus* corpus = nullptr,
                       const SearchOptions& options = {});

// Re-checks the evidence of `o` against f. Unknown outcomes verify trivially.
bool verify_outcome(const DecisionOutcome& o, const Formula& f);

}  // namespace tglp
