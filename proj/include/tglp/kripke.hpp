#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tglp/formula.hpp"

namespace tglp {

// Set of worlds as a bitmask; world w is bit w.
using WorldSet = std::uint64_t;
inline constexpr std::size_t kMaxWorlds = 64;

inline bool contains(WorldSet s, std::size_t w) { return (s >> w) & 1U; }
inline WorldSet singleton(std::size_t w) { return WorldSet{1} << w; }
inline WorldSet all_worlds(std::size_t n) { return n >= 64 ? ~WorldSet{0} : (WorldSet{1} << n) - 1; }

// Finite Kripke model with relations <_0 ... <_{N-1}.
// below(n, u, w) means u <_n w: u lies below w and is accessible from w through [n].
// The type only enforces that edges mention existing worlds; J-frame conditions are
// checked by validate_j_frame.
class JModel {
 public:
  JModel(std::size_t worlds, std::size_t relations);

  std::size_t world_count() const { return worlds_; }
  std::size_t relation_count() const { return pred_.size(); }
  WorldSet all() const { return all_worlds(worlds_); }

  void add_edge(std::size_t n, std::size_t u, std::size_t w);
  bool below(std::size_t n, std::size_t u, std::size_t w) const { return contains(pred_[n][w], u); }
  // <_n(w) = {u : u <_n w}.
  WorldSet predecessors(std::size_t n, std::size_t w) const { return pred_[n][w]; }
  void set_predecessors(std::size_t n, std::size_t w, WorldSet s);
  // Edges (u, w) of <_n, ordered by u then w.
  std::vector<std::pair<std::size_t, std::size_t>> edges(std::size_t n) const;

  // Variables absent from the valuation are false everywhere.
  WorldSet truth(const std::string& var) const;
  void set_truth(const std::string& var, WorldSet s);
  const std::map<std::string, WorldSet>& valuation() const { return valuation_; }

  friend bool operator==(const JModel&, const JModel&) = default;

 private:
  std::size_t worlds_;
  std::vector<std::vector<WorldSet>> pred_;
  std::map<std::string, WorldSet> valuation_;
};

struct FrameViolation {
  // "1-irreflexive", "1-transitive", "2" or "3".
  std::string condition;
  // Relation indices involved: {n} for condition 1, {n, m} with n < m otherwise.
  std::vector<std::size_t> relations;
  // Condition 1: {w} or (u, v, w) with u <_n v <_n w, not u <_n w.
  // Condition 2: (w, v, u) with w <_m v and u in exactly one of <_n(w), <_n(v).
  // Condition 3: (w, v, u) with w <_m v <_n u, not w <_n u.
  std::vector<std::size_t> witness;
};

struct StratificationWitness {
  std::size_t relation;  // n
  std::size_t lower;     // w: [w]_{n+1} <_n [v]_{n+1}
  std::size_t upper;     // v: but not w <_n v
};

struct StratificationResult {
  bool stratified = true;
  std::optional<StratificationWitness> witness;
  explicit operator bool() const { return stratified; }
};

struct FrameReport {
  bool is_j_frame = true;
  bool is_stratified = false;
  std::vector<FrameViolation> violations;
  std::optional<StratificationWitness> stratification_witness;
};

FrameReport validate_j_frame(const JModel& m);

// Binary relation stored by target: below[v] = {w : w R v}.
struct Relation {
  std::vector<WorldSet> below;
  bool holds(std::size_t w, std::size_t v) const { return contains(below[v], w); }
  friend bool operator==(const Relation&, const Relation&) = default;
};

// Equivalence classes ordered by their least world.
using Partition = std::vector<WorldSet>;

enum class DerivedFlavor { LL, LLL, Approx };

// w <<_n v iff w <_m v for some m >= n.
Relation much_below(const JModel& m, std::size_t n);
// <<<_n = <<_n plus (w, v) whenever w <<_n u and v <<_{n+1} u for some u.
Relation much_much_below(const JModel& m, std::size_t n);
// Classes of the equivalence generated by <<_n.
Partition approx_classes(const JModel& m, std::size_t n);
// Dispatches on flavor; RangeError unless n < N.
std::variant<Relation, Partition> derived_relation(const JModel& m, std::size_t n, DerivedFlavor flavor);

// Whenever [w]_{n+1} <_n [v]_{n+1} then w <_n v, for every n with n + 1 < N.
// The condition is vacuous at n = N - 1 since ~_N is the identity.
StratificationResult is_stratified(const JModel& m);

// A formula flattened into a DAG of distinct subformulas for repeated evaluation.
class CompiledFormula {
 public:
  explicit CompiledFormula(const Formula& f);

  // Truth set of the formula. RangeError if an index is not below the model's relation count.
  WorldSet eval(const JModel& m) const;

  // Largest box index plus one, or 0 for box-free formulas.
  std::size_t relations_needed() const { return relations_needed_; }
  const std::vector<std::string>& variables() const { return variables_; }

 private:
  struct Op {
    enum Kind : std::uint8_t { Bottom, Var, Implies, Box } kind;
    std::uint32_t a = 0;  // variable slot, antecedent, or box body
    std::uint32_t b = 0;  // consequent, or box index
  };
  std::uint32_t compile(const Formula& f, std::map<Formula, std::uint32_t>& seen);

  std::vector<Op> ops_;
  std::vector<std::string> variables_;
  std::size_t relations_needed_ = 0;
};

WorldSet eval(const JModel& m, const Formula& f);
bool valid_on(const JModel& m, const Formula& f);

// Adds a new root 0 above every old world through <_0; old world w becomes w + 1.
JModel add_root(const JModel& m);

// Whether world 0 is a <_0-root: every other world lies <_0-below it.
bool is_rooted(const JModel& m);

struct EnumerationOptions {
  std::size_t max_worlds = 1;
  std::size_t relations = 1;
  std::vector<std::string> variables;
  bool stratified_only = false;
};

// A contiguous slice of the frame enumeration: all frames with `worlds` worlds whose
// <_0 is the `first_order`-th strict partial order in code order.
struct FrameBlock {
  std::size_t worlds;
  std::size_t first_order;
};

// Blocks in enumeration order.
std::vector<FrameBlock> frame_blocks(const EnumerationOptions& opts);

// Visits frames (empty valuation) in enumeration order; stops when `visit` returns false.
// Returns false iff stopped early.
bool for_each_frame(const EnumerationOptions& opts, const std::function<bool(const JModel&)>& visit);
bool for_each_frame(const EnumerationOptions& opts, const FrameBlock& block,
                    const std::function<bool(const JModel&)>& visit);

// Visits every valuation of opts.variables on `frame`, lexicographically with the first
// variable most significant.
bool for_each_valuation(const JModel& frame, const std::vector<std::string>& variables,
                        const std::function<bool(const JModel&)>& visit);

// Every valid J-frame with 1..max_worlds worlds and the given relation count, paired with every
// valuation. Order: world count, then relation codes lexicographically, then valuations.
bool for_each_model(const EnumerationOptions& opts, const std::function<bool(const JModel&)>& visit);
std::vector<JModel> enumerate_models(const EnumerationOptions& opts);

// Strict partial orders on `worlds` worlds as predecessor masks, sorted by their code
// sum over edges u < w of 2^(u * worlds + w).
const std::vector<std::vector<WorldSet>>& strict_partial_orders(std::size_t worlds);

}  // namespace tglp
