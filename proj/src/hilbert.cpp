#include "tglp/hilbert.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>
#include <type_traits>

#include "tglp/error.hpp"

namespace tglp {

namespace {

constexpr std::array<std::pair<ProofSystem, std::string_view>, 4> kSystemNames{{
    {ProofSystem::GlpPrec, "GLP_prec"},
    {ProofSystem::GlpOmega, "GLP_omega"},
    {ProofSystem::J, "J"},
    {ProofSystem::GlBlack, "GLBlack"},
}};

constexpr std::array<std::pair<Schema, std::string_view>, 10> kSchemaNames{{
    {Schema::Tautology, "tautology"},
    {Schema::K, "K"},
    {Schema::Loeb, "Loeb"},
    {Schema::Monotone, "monotone"},
    {Schema::NegIntrospect, "neg-introspect"},
    {Schema::J6, "J6"},
    {Schema::J7, "J7"},
    {Schema::GLB1, "GLB1"},
    {Schema::GLB2, "GLB2"},
    {Schema::GLB3, "GLB3"},
}};

}  // namespace

std::string_view to_string(ProofSystem s) {
  for (auto [k, v] : kSystemNames)
    if (k == s) return v;
  return "?";
}

std::optional<ProofSystem> parse_system(std::string_view name) {
  for (auto [k, v] : kSystemNames)
    if (v == name) return k;
  return std::nullopt;
}

std::string_view to_string(Schema s) {
  for (auto [k, v] : kSchemaNames)
    if (k == s) return v;
  return "?";
}

std::optional<Schema> parse_schema(std::string_view name) {
  for (auto [k, v] : kSchemaNames)
    if (v == name) return k;
  return std::nullopt;
}

const std::vector<Schema>& schemas_of(ProofSystem system) {
  static const std::vector<Schema> glp{Schema::Tautology, Schema::K, Schema::Loeb, Schema::Monotone,
                                       Schema::NegIntrospect};
  static const std::vector<Schema> j{Schema::Tautology, Schema::K,  Schema::Loeb,
                                     Schema::NegIntrospect, Schema::J6, Schema::J7};
  static const std::vector<Schema> glb{Schema::Tautology, Schema::K,    Schema::Loeb,
                                       Schema::GLB1,      Schema::GLB2, Schema::GLB3};
  switch (system) {
    case ProofSystem::GlpPrec:
    case ProofSystem::GlpOmega:
      return glp;
    case ProofSystem::J:
      return j;
    case ProofSystem::GlBlack:
      return glb;
  }
  return glp;
}

// ---------------------------------------------------------------------------
// Tautology check over boolean atoms.

namespace {

class BooleanSkeleton {
 public:
  explicit BooleanSkeleton(const Formula& f) { root_ = build(f); }

  std::size_t atom_count() const { return atoms_.size(); }

  bool eval(std::uint64_t assignment) const { return eval(root_, assignment); }

 private:
  struct Op {
    enum { Bottom, Atom, Implies } kind;
    int a = -1;
    int b = -1;
  };

  int build(const Formula& f) {
    if (f.is_bottom()) {
      ops_.push_back({Op::Bottom});
    } else if (f.is_implies()) {
      int a = build(f.left());
      int b = build(f.right());
      ops_.push_back({Op::Implies, a, b});
    } else {
      auto [it, _] = atoms_.emplace(f, static_cast<int>(atoms_.size()));
      ops_.push_back({Op::Atom, it->second});
    }
    return static_cast<int>(ops_.size()) - 1;
  }

  bool eval(int i, std::uint64_t assignment) const {
    const Op& op = ops_[static_cast<std::size_t>(i)];
    switch (op.kind) {
      case Op::Bottom:
        return false;
      case Op::Atom:
        return (assignment >> op.a) & 1U;
      case Op::Implies:
        return !eval(op.a, assignment) || eval(op.b, assignment);
    }
    return false;
  }

  std::map<Formula, int> atoms_;
  std::vector<Op> ops_;
  int root_ = -1;
};

}  // namespace

bool is_tautology(const Formula& f) {
  BooleanSkeleton skeleton(f);
  if (skeleton.atom_count() >= 64) throw RangeError("too many propositional atoms for a truth-table check");
  const std::uint64_t rows = std::uint64_t{1} << skeleton.atom_count();
  for (std::uint64_t a = 0; a < rows; ++a)
    if (!skeleton.eval(a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Schema patterns: structural matching with formula metavariables (phi, psi) and
// index metavariables (xi, zeta).

namespace {

struct Pattern {
  enum Kind { Meta, Bottom, Implies, Box } kind;
  int slot = 0;  // formula metavariable for Meta, index metavariable for Box
  std::vector<Pattern> args;
};

Pattern meta(int slot) { return {Pattern::Meta, slot, {}}; }
Pattern bot() { return {Pattern::Bottom, 0, {}}; }
Pattern imp(Pattern a, Pattern b) { return {Pattern::Implies, 0, {std::move(a), std::move(b)}}; }
Pattern box(int index, Pattern a) { return {Pattern::Box, index, {std::move(a)}}; }
Pattern neg(Pattern a) { return imp(std::move(a), bot()); }
Pattern dia(int index, Pattern a) { return neg(box(index, neg(std::move(a)))); }

constexpr int kPhi = 0, kPsi = 1, kXi = 0, kZeta = 1;

struct Bindings {
  std::array<const Formula*, 2> formulas{};
  std::array<const Ordinal*, 2> indices{};
};

bool match(const Pattern& p, const Formula& f, Bindings& b) {
  switch (p.kind) {
    case Pattern::Meta: {
      auto& slot = b.formulas[static_cast<std::size_t>(p.slot)];
      if (slot) return *slot == f;
      slot = &f;
      return true;
    }
    case Pattern::Bottom:
      return f.is_bottom();
    case Pattern::Implies:
      return f.is_implies() && match(p.args[0], f.left(), b) && match(p.args[1], f.right(), b);
    case Pattern::Box: {
      if (!f.is_box()) return false;
      auto& slot = b.indices[static_cast<std::size_t>(p.slot)];
      if (slot) {
        if (*slot != f.index()) return false;
      } else {
        slot = &f.index();
      }
      return match(p.args[0], f.left(), b);
    }
  }
  return false;
}

const Pattern& pattern_of(Schema s) {
  static const Pattern k = imp(box(kXi, imp(meta(kPhi), meta(kPsi))), imp(box(kXi, meta(kPhi)), box(kXi, meta(kPsi))));
  static const Pattern loeb = imp(box(kXi, imp(box(kXi, meta(kPhi)), meta(kPhi))), box(kXi, meta(kPhi)));
  static const Pattern monotone = imp(dia(kZeta, meta(kPhi)), dia(kXi, meta(kPhi)));
  static const Pattern neg_introspect = imp(dia(kXi, meta(kPhi)), box(kZeta, dia(kXi, meta(kPhi))));
  static const Pattern j6 = imp(box(kXi, meta(kPhi)), box(kZeta, box(kXi, meta(kPhi))));
  static const Pattern j7 = imp(box(kXi, meta(kPhi)), box(kXi, box(kZeta, meta(kPhi))));
  static const Pattern glb1 = imp(box(kXi, meta(kPhi)), box(kZeta, meta(kPhi)));
  static const Pattern glb3 = imp(box(kXi, meta(kPhi)), box(kXi, box(kXi, meta(kPhi))));
  switch (s) {
    case Schema::K:
    case Schema::GLB2:
      return k;
    case Schema::Loeb:
      return loeb;
    case Schema::Monotone:
      return monotone;
    case Schema::NegIntrospect:
      return neg_introspect;
    case Schema::J6:
      return j6;
    case Schema::J7:
      return j7;
    case Schema::GLB1:
      return glb1;
    case Schema::GLB3:
      return glb3;
    case Schema::Tautology:
      break;
  }
  throw std::logic_error("tautology has no pattern");
}

bool less(const Ordinal* a, const Ordinal* b) { return compare(*a, *b) == std::strong_ordering::less; }

bool side_condition(Schema s, ProofSystem system, const Bindings& b) {
  const Ordinal* xi = b.indices[kXi];
  const Ordinal* zeta = b.indices[kZeta];
  static const Ordinal zero = Ordinal::zero();
  static const Ordinal one = Ordinal::natural(1);
  const bool black = system == ProofSystem::GlBlack;
  switch (s) {
    case Schema::K:
    case Schema::Loeb:
      return !black || *xi == zero;
    case Schema::Monotone:
    case Schema::NegIntrospect:
    case Schema::J7:
      return less(xi, zeta);
    case Schema::J6:
      return !less(zeta, xi);
    case Schema::GLB1:
      return *xi == zero && *zeta == one;
    case Schema::GLB2:
    case Schema::GLB3:
      return *xi == one;
    case Schema::Tautology:
      return true;
  }
  return false;
}

bool index_in_system(const Ordinal& o, ProofSystem system) {
  switch (system) {
    case ProofSystem::GlpPrec:
      return true;
    case ProofSystem::GlpOmega:
    case ProofSystem::J:
      return o.is_finite();
    case ProofSystem::GlBlack:
      return o.is_zero() || o == Ordinal::natural(1);
  }
  return false;
}

}  // namespace

bool in_language(const Formula& f, ProofSystem system) {
  for (const auto& o : modalities(f))
    if (!index_in_system(o, system)) return false;
  return true;
}

bool is_instance(const Formula& f, Schema schema, ProofSystem system) {
  const auto& allowed = schemas_of(system);
  if (std::find(allowed.begin(), allowed.end(), schema) == allowed.end()) return false;
  if (!in_language(f, system)) return false;
  if (schema == Schema::Tautology) return is_tautology(f);
  Bindings b;
  return match(pattern_of(schema), f, b) && side_condition(schema, system, b);
}

std::optional<Schema> recognize_axiom(const Formula& f, ProofSystem system) {
  for (Schema s : schemas_of(system))
    if (is_instance(f, s, system)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

CheckResult reject(std::size_t line, std::string reason, std::string detail = {}) {
  return {false, line, std::move(reason), std::move(detail)};
}

}  // namespace

CheckResult check_proof(const HilbertProof& proof) {
  if (proof.lines.empty()) return reject(0, "empty-proof");
  const ProofSystem sys = proof.system;
  const auto& lines = proof.lines;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Formula& f = lines[i].formula;
    if (!in_language(f, sys)) return reject(i, "index-out-of-system", f.to_string());

    auto cited = [&](std::size_t j) { return j < i; };

    auto result = std::visit(
        [&](const auto& rule) -> CheckResult {
          using R = std::decay_t<decltype(rule)>;
          if constexpr (std::is_same_v<R, AxiomRule>) {
            const auto& allowed = schemas_of(sys);
            if (std::find(allowed.begin(), allowed.end(), rule.schema) == allowed.end())
              return reject(i, "unknown-schema", std::string(to_string(rule.schema)));
            if (!is_instance(f, rule.schema, sys)) return reject(i, "not-axiom", std::string(to_string(rule.schema)));
          } else if constexpr (std::is_same_v<R, HypothesisRule>) {
            if (std::find(proof.hypotheses.begin(), proof.hypotheses.end(), f) == proof.hypotheses.end())
              return reject(i, "hyp-undeclared");
          } else if constexpr (std::is_same_v<R, ModusPonens>) {
            if (!cited(rule.antecedent) || !cited(rule.implication)) return reject(i, "bad-reference");
            const Formula& imp = lines[rule.implication].formula;
            if (!imp.is_implies() || imp.left() != lines[rule.antecedent].formula || imp.right() != f)
              return reject(i, "mp-mismatch");
          } else if constexpr (std::is_same_v<R, Necessitation>) {
            if (!cited(rule.premise)) return reject(i, "bad-reference");
            if (!index_in_system(rule.index, sys)) return reject(i, "nec-index", rule.index.to_string());
            if (!f.is_box() || f.index() != rule.index || f.left() != lines[rule.premise].formula)
              return reject(i, "nec-mismatch");
          } else if constexpr (std::is_same_v<R, LoebRule>) {
            if (sys != ProofSystem::GlBlack) return reject(i, "rule-not-allowed", "loeb");
            if (!cited(rule.premise)) return reject(i, "bad-reference");
            if (!rule.index.is_zero()) return reject(i, "loeb-flavor", rule.index.to_string());
            const Formula& prem = lines[rule.premise].formula;
            if (!prem.is_implies() || prem.right() != f || !prem.left().is_box() ||
                !prem.left().index().is_zero() || prem.left().left() != f)
              return reject(i, "loeb-mismatch");
          }
          return CheckResult::ok();
        },
        lines[i].rule);
    if (!result) return result;
  }
  return CheckResult::ok();
}

HilbertProof lift_proof(const HilbertProof& proof, const CondensationMap& map) {
  if (proof.system != ProofSystem::GlpOmega) throw RangeError("only GLP_omega proofs can be lifted");
  HilbertProof out;
  out.system = ProofSystem::GlpPrec;
  for (const auto& h : proof.hypotheses) out.hypotheses.push_back(lift(h, map));
  for (const auto& line : proof.lines) {
    Justification rule = line.rule;
    if (auto* nec = std::get_if<Necessitation>(&rule)) nec->index = map.lift(nec->index);
    if (auto* loeb = std::get_if<LoebRule>(&rule)) loeb->index = map.lift(loeb->index);
    out.lines.push_back({lift(line.formula, map), std::move(rule)});
  }
  return out;
}

HilbertProof substitute_proof(const HilbertProof& proof, const Substitution& sigma) {
  HilbertProof out;
  out.system = proof.system;
  for (const auto& h : proof.hypotheses) out.hypotheses.push_back(substitute(h, sigma));
  for (const auto& line : proof.lines) out.lines.push_back({substitute(line.formula, sigma), line.rule});
  return out;
}

std::string to_string(const Justification& rule) {
  return std::visit(
      [](const auto& r) -> std::string {
        using R = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<R, AxiomRule>) {
          return "axiom:" + std::string(to_string(r.schema));
        } else if constexpr (std::is_same_v<R, HypothesisRule>) {
          return "hyp";
        } else if constexpr (std::is_same_v<R, ModusPonens>) {
          return "mp " + std::to_string(r.antecedent + 1) + " " + std::to_string(r.implication + 1);
        } else if constexpr (std::is_same_v<R, Necessitation>) {
          return "nec " + std::to_string(r.premise + 1) + " [" + r.index.to_string() + "]";
        } else {
          std::string text = "loeb " + std::to_string(r.premise + 1);
          return r.index.is_zero() ? text : text + " [" + r.index.to_string() + "]";
        }
      },
      rule);
}

}  // namespace tglp
