#include "tglp/decide.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <thread>

#include "tglp/error.hpp"

namespace tglp {

std::string_view to_string(DecisionStatus s) {
  switch (s) {
    case DecisionStatus::Theorem:
      return "Theorem";
    case DecisionStatus::NonTheorem:
      return "NonTheorem";
    case DecisionStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::size_t relations_for(const Formula& g) {
  auto top = max_finite_index(g);
  return top ? static_cast<std::size_t>(*top) + 1 : 1;
}

namespace {

Formula refutation_target(const Formula& g) { return Formula::conjunction(m_plus(g), Formula::negation(g)); }

std::optional<Countermodel> search_block(const CompiledFormula& target, const EnumerationOptions& opts,
                                         const FrameBlock& block) {
  std::optional<Countermodel> hit;
  for_each_frame(opts, block, [&](const JModel& frame) {
    return for_each_valuation(frame, opts.variables, [&](const JModel& m) {
      const WorldSet s = target.eval(m);
      if (!s) return true;
      hit = Countermodel{m, static_cast<std::size_t>(std::countr_zero(s))};
      return false;
    });
  });
  return hit;
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& g, std::size_t max_worlds, const SearchOptions& options) {
  const CompiledFormula target(refutation_target(g));
  EnumerationOptions opts;
  opts.max_worlds = max_worlds;
  opts.relations = relations_for(g);
  opts.variables = target.variables();
  opts.stratified_only = options.stratified_only;
  const auto blocks = frame_blocks(opts);

  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, blocks.size());
  if (threads == 1) {
    for (const auto& block : blocks)
      if (auto hit = search_block(target, opts, block)) return hit;
    return std::nullopt;
  }

  // Workers claim blocks in order; a block past the best hit so far is never needed, and every
  // block before it is searched to completion, so the result matches the sequential search.
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{none};
  std::vector<std::optional<Countermodel>> hits(blocks.size());
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= blocks.size() || i > best.load()) return;
      if (auto hit = search_block(target, opts, blocks[i])) {
        hits[i] = std::move(hit);
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (best.load() == none) return std::nullopt;
  return hits[best.load()];
}

namespace {

HilbertProof axiom_proof(const Formula& f, Schema schema) {
  HilbertProof p;
  p.system = ProofSystem::GlpPrec;
  p.lines.push_back({f, AxiomRule{schema}});
  return p;
}

// A corpus proof adapted to conclude f, if the corpus has one.
std::optional<std::pair<HilbertProof, std::string>> corpus_proof(const Formula& f, const Condensation& c,
                                                                 const ProofCorpus& corpus) {
  for (const auto& entry : corpus) {
    const HilbertProof& proof = entry.proof;
    if (!proof.hypotheses.empty() || proof.lines.empty()) continue;
    if (proof.system != ProofSystem::GlpOmega && proof.system != ProofSystem::GlpPrec) continue;
    if (!check_proof(proof)) continue;
    const Formula& target = proof.system == ProofSystem::GlpOmega ? c.formula : f;
    auto sigma = match_variables(proof.conclusion(), target);
    if (!sigma) continue;
    HilbertProof adapted = substitute_proof(proof, *sigma);
    if (proof.system == ProofSystem::GlpOmega) {
      try {
        adapted = lift_proof(adapted, c.map);
      } catch (const RangeError&) {
        continue;  // the proof uses more levels than f has
      }
    }
    if (adapted.conclusion() != f || !check_proof(adapted)) continue;
    return std::pair{std::move(adapted), "corpus:" + entry.name};
  }
  return std::nullopt;
}

}  // namespace

DecisionOutcome decide(const Formula& f, std::size_t max_worlds, const ProofCorpus* corpus,
                       const SearchOptions& options) {
  DecisionOutcome out;
  out.condensed = condense(f);

  if (auto schema = recognize_axiom(f, ProofSystem::GlpPrec)) {
    out.status = DecisionStatus::Theorem;
    out.proof = axiom_proof(f, *schema);
    out.proof_source = "axiom:" + std::string(to_string(*schema));
    return out;
  }
  if (corpus) {
    if (auto found = corpus_proof(f, out.condensed, *corpus)) {
      out.status = DecisionStatus::Theorem;
      out.proof = std::move(found->first);
      out.proof_source = std::move(found->second);
      return out;
    }
  }

  const Formula& g = out.condensed.formula;
  out.bounds = SearchBounds{max_worlds, relations_for(g), options.stratified_only};
  if (auto hit = find_countermodel(g, max_worlds, options)) {
    out.status = DecisionStatus::NonTheorem;
    out.countermodel = std::move(hit);
  } else {
    out.status = DecisionStatus::Unknown;
  }
  return out;
}

bool verify_outcome(const DecisionOutcome& o, const Formula& f) {
  switch (o.status) {
    case DecisionStatus::Unknown:
      return true;
    case DecisionStatus::Theorem:
      return o.proof && o.proof->system == ProofSystem::GlpPrec && o.proof->hypotheses.empty() &&
             !o.proof->lines.empty() && o.proof->conclusion() == f && check_proof(*o.proof).accepted;
    case DecisionStatus::NonTheorem: {
      if (!o.countermodel) return false;
      const auto& [model, world] = *o.countermodel;
      if (world >= model.world_count() || !validate_j_frame(model).is_j_frame) return false;
      const Formula g = condense(f).formula;
      try {
        return contains(eval(model, refutation_target(g)), world);
      } catch (const RangeError&) {
        return false;
      }
    }
  }
  return false;
}

}  // namespace tglp
