#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tglp/ordinal.hpp"

namespace tglp {

// Modal formula over the core connectives: bottom, variables, implication and [index].
// Negation, conjunction, disjunction, top and <index> are expanded on construction.
// Formulas are immutable and share subtrees.
class Formula {
 public:
  enum class Kind : std::uint8_t { Bottom, Variable, Implies, Box };

  static Formula bottom();
  static Formula var(std::string name);
  static Formula implies(Formula a, Formula b);
  static Formula box(Ordinal index, Formula body);
  static Formula box(std::uint64_t index, Formula body) { return box(Ordinal::natural(index), std::move(body)); }

  static Formula top();
  static Formula negation(Formula a);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula diamond(Ordinal index, Formula body);
  static Formula diamond(std::uint64_t index, Formula body) {
    return diamond(Ordinal::natural(index), std::move(body));
  }
  // Right-nested conjunction; the empty conjunction is top.
  static Formula conjunction(const std::vector<Formula>& parts);

  Formula() : Formula(bottom()) {}

  Kind kind() const { return node_->kind; }
  bool is_bottom() const { return kind() == Kind::Bottom; }
  bool is_var() const { return kind() == Kind::Variable; }
  bool is_implies() const { return kind() == Kind::Implies; }
  bool is_box() const { return kind() == Kind::Box; }

  // Valid for variables only.
  const std::string& name() const { return node_->name; }
  // Valid for boxes only.
  const Ordinal& index() const { return node_->index; }
  // Antecedent of an implication or body of a box.
  const Formula& left() const { return *node_->left; }
  // Consequent of an implication.
  const Formula& right() const { return *node_->right; }

  // Identity of the shared node; equal formulas may still have distinct nodes.
  const void* node_id() const { return node_.get(); }
  std::size_t size() const { return node_->size; }

  // Fully parenthesised canonical text; re-parses to the identical formula.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    Ordinal index;
    std::unique_ptr<Formula> left;
    std::unique_ptr<Formula> right;
    std::size_t size = 1;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Sugar recognition on the core tree.
bool is_negation(const Formula& f);  // f == a -> F
bool is_top(const Formula& f);        // f == F -> F
// Splits along the right spine of right-nested conjunctions.
std::vector<Formula> conjuncts(const Formula& f);

Formula parse_formula(std::string_view text);

// Every subtree of f, including f itself.
std::set<Formula> subformulas(const Formula& f);
// Sorted, duplicate-free modality indices occurring in f.
std::vector<Ordinal> modalities(const Formula& f);
// Sorted, duplicate-free variable names occurring in f.
std::vector<std::string> variables(const Formula& f);
// Largest finite index in f; RangeError if some index is infinite. Box-free formulas give nullopt.
std::optional<std::uint64_t> max_finite_index(const Formula& f);

// Rewrites every box index; the mapping must preserve or reflect order as the caller needs.
template <class IndexMap>
Formula map_indices(const Formula& f, IndexMap&& fn) {
  switch (f.kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Variable:
      return f;
    case Formula::Kind::Implies:
      return Formula::implies(map_indices(f.left(), fn), map_indices(f.right(), fn));
    case Formula::Kind::Box:
      return Formula::box(fn(f.index()), map_indices(f.left(), fn));
  }
  return f;
}

using Substitution = std::map<std::string, Formula>;

// Uniform substitution of formulas for variables; unmapped variables are kept.
Formula substitute(const Formula& f, const Substitution& sigma);
// Finds sigma with substitute(pattern, sigma) == target, treating the variables of
// `pattern` as placeholders.
std::optional<Substitution> match_variables(const Formula& pattern, const Formula& target);

// The modalities lambda_0 < ... < lambda_N of a formula; position i stands for lambda_i.
class CondensationMap {
 public:
  CondensationMap() = default;
  // RangeError unless strictly increasing.
  explicit CondensationMap(std::vector<Ordinal> levels);

  const std::vector<Ordinal>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  const Ordinal& operator[](std::size_t i) const { return levels_[i]; }
  // lambda_i for a finite index i; RangeError when i is not below size().
  const Ordinal& lift(const Ordinal& i) const;

  friend bool operator==(const CondensationMap&, const CondensationMap&) = default;

 private:
  std::vector<Ordinal> levels_;
};

struct Condensation {
  Formula formula;
  CondensationMap map;
};

// Replaces each [lambda_i] by [i], where lambda_0 < ... < lambda_N are the modalities of f.
Condensation condense(const Formula& f);
// Inverse of condense: each [i] becomes [lambda_i].
Formula lift(const Formula& f, const CondensationMap& map);

// M(f): conjunction of [n]psi -> [m]psi over boxed subformulas [n]psi of f and n < m <= N.
Formula big_m(const Formula& f);
// M+(f) = M(f) & [0]M(f) & ... & [N]M(f).
Formula m_plus(const Formula& f);

}  // namespace tglp
