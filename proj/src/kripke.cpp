#include "tglp/kripke.hpp"

#include <algorithm>
#include <bit>
#include <mutex>
#include <numeric>

#include "tglp/error.hpp"

namespace tglp {

JModel::JModel(std::size_t worlds, std::size_t relations)
    : worlds_(worlds), pred_(relations, std::vector<WorldSet>(worlds, 0)) {
  if (worlds == 0 || worlds > kMaxWorlds) throw RangeError("world count must be in 1.." + std::to_string(kMaxWorlds));
  if (relations == 0) throw RangeError("a model needs at least one relation");
}

void JModel::add_edge(std::size_t n, std::size_t u, std::size_t w) {
  if (n >= pred_.size()) throw RangeError("relation " + std::to_string(n) + " out of range");
  if (u >= worlds_ || w >= worlds_) throw RangeError("edge mentions a world out of range");
  pred_[n][w] |= singleton(u);
}

void JModel::set_predecessors(std::size_t n, std::size_t w, WorldSet s) {
  if (n >= pred_.size() || w >= worlds_) throw RangeError("relation or world out of range");
  if (s & ~all()) throw RangeError("predecessor set mentions a world out of range");
  pred_[n][w] = s;
}

std::vector<std::pair<std::size_t, std::size_t>> JModel::edges(std::size_t n) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t u = 0; u < worlds_; ++u)
    for (std::size_t w = 0; w < worlds_; ++w)
      if (below(n, u, w)) out.emplace_back(u, w);
  return out;
}

WorldSet JModel::truth(const std::string& var) const {
  auto it = valuation_.find(var);
  return it == valuation_.end() ? 0 : it->second;
}

void JModel::set_truth(const std::string& var, WorldSet s) {
  if (s & ~all()) throw RangeError("valuation of '" + var + "' mentions a world out of range");
  valuation_[var] = s;
}

namespace {

std::size_t lowest(WorldSet s) { return static_cast<std::size_t>(std::countr_zero(s)); }

template <class Fn>
void for_each_world(WorldSet s, Fn&& fn) {
  while (s) {
    fn(lowest(s));
    s &= s - 1;
  }
}

// Conditions 2 and 3 between a lower relation n and a higher relation m.
bool compatible(const std::vector<WorldSet>& lower, const std::vector<WorldSet>& higher) {
  const std::size_t k = lower.size();
  for (std::size_t v = 0; v < k; ++v) {
    bool ok = true;
    for_each_world(higher[v], [&](std::size_t w) { ok = ok && lower[w] == lower[v]; });
    if (!ok) return false;
  }
  for (std::size_t u = 0; u < k; ++u) {
    // For v <_n u every w <_m v must satisfy w <_n u.
    bool ok = true;
    for_each_world(lower[u], [&](std::size_t v) { ok = ok && (higher[v] & ~lower[u]) == 0; });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

FrameReport validate_j_frame(const JModel& m) {
  FrameReport report;
  const std::size_t k = m.world_count();
  const std::size_t relations = m.relation_count();
  auto& out = report.violations;

  for (std::size_t n = 0; n < relations; ++n) {
    for (std::size_t w = 0; w < k; ++w) {
      if (m.below(n, w, w)) out.push_back({"1-irreflexive", {n}, {w}});
      for_each_world(m.predecessors(n, w), [&](std::size_t v) {
        for_each_world(m.predecessors(n, v) & ~m.predecessors(n, w),
                       [&](std::size_t u) { out.push_back({"1-transitive", {n}, {u, v, w}}); });
      });
    }
  }
  for (std::size_t n = 0; n < relations; ++n) {
    for (std::size_t hi = n + 1; hi < relations; ++hi) {
      for (std::size_t v = 0; v < k; ++v) {
        for_each_world(m.predecessors(hi, v), [&](std::size_t w) {
          for_each_world(m.predecessors(n, w) ^ m.predecessors(n, v),
                         [&](std::size_t u) { out.push_back({"2", {n, hi}, {w, v, u}}); });
        });
      }
      for (std::size_t u = 0; u < k; ++u) {
        for_each_world(m.predecessors(n, u), [&](std::size_t v) {
          for_each_world(m.predecessors(hi, v) & ~m.predecessors(n, u),
                         [&](std::size_t w) { out.push_back({"3", {n, hi}, {w, v, u}}); });
        });
      }
    }
  }
  report.is_j_frame = out.empty();
  if (report.is_j_frame) {
    auto s = is_stratified(m);
    report.is_stratified = s.stratified;
    report.stratification_witness = s.witness;
  }
  return report;
}

namespace {

Relation much_below_unchecked(const JModel& m, std::size_t n) {
  Relation r{std::vector<WorldSet>(m.world_count(), 0)};
  for (std::size_t hi = n; hi < m.relation_count(); ++hi)
    for (std::size_t v = 0; v < m.world_count(); ++v) r.below[v] |= m.predecessors(hi, v);
  return r;
}

// Class index per world for the equivalence generated by <<_n; n may equal N.
std::vector<std::size_t> approx_labels(const JModel& m, std::size_t n) {
  const std::size_t k = m.world_count();
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Relation ll = much_below_unchecked(m, n);
  for (std::size_t v = 0; v < k; ++v)
    for_each_world(ll.below[v], [&](std::size_t w) {
      auto a = find(w), b = find(v);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    });
  std::vector<std::size_t> label(k);
  for (std::size_t w = 0; w < k; ++w) label[w] = find(w);
  return label;
}

void require_index(const JModel& m, std::size_t n) {
  if (n >= m.relation_count())
    throw RangeError("relation index " + std::to_string(n) + " out of range for " +
                     std::to_string(m.relation_count()) + " relations");
}

}  // namespace

Relation much_below(const JModel& m, std::size_t n) {
  require_index(m, n);
  return much_below_unchecked(m, n);
}

Relation much_much_below(const JModel& m, std::size_t n) {
  require_index(m, n);
  const Relation ll = much_below_unchecked(m, n);
  const Relation next = much_below_unchecked(m, n + 1);
  Relation r = ll;
  for (std::size_t u = 0; u < m.world_count(); ++u)
    for_each_world(next.below[u], [&](std::size_t v) { r.below[v] |= ll.below[u]; });
  return r;
}

Partition approx_classes(const JModel& m, std::size_t n) {
  require_index(m, n);
  auto label = approx_labels(m, n);
  std::map<std::size_t, WorldSet> classes;
  for (std::size_t w = 0; w < label.size(); ++w) classes[label[w]] |= singleton(w);
  Partition out;
  for (auto& [_, s] : classes) out.push_back(s);
  std::sort(out.begin(), out.end(), [](WorldSet a, WorldSet b) { return lowest(a) < lowest(b); });
  return out;
}

std::variant<Relation, Partition> derived_relation(const JModel& m, std::size_t n, DerivedFlavor flavor) {
  switch (flavor) {
    case DerivedFlavor::LL:
      return much_below(m, n);
    case DerivedFlavor::LLL:
      return much_much_below(m, n);
    case DerivedFlavor::Approx:
      return approx_classes(m, n);
  }
  throw RangeError("unknown derived relation");
}

StratificationResult is_stratified(const JModel& m) {
  const std::size_t k = m.world_count();
  for (std::size_t n = 0; n + 1 < m.relation_count(); ++n) {
    auto label = approx_labels(m, n + 1);
    // Members of each class, and the union of <_n-predecessors over each class.
    std::vector<WorldSet> members(k, 0), class_pred(k, 0);
    for (std::size_t w = 0; w < k; ++w) {
      members[label[w]] |= singleton(w);
      class_pred[label[w]] |= m.predecessors(n, w);
    }
    for (std::size_t w = 0; w < k; ++w)
      for (std::size_t v = 0; v < k; ++v)
        if ((members[label[w]] & class_pred[label[v]]) && !m.below(n, w, v))
          return {false, StratificationWitness{n, w, v}};
  }
  return {};
}

// ---------------------------------------------------------------------------

CompiledFormula::CompiledFormula(const Formula& f) {
  variables_ = tglp::variables(f);
  std::map<Formula, std::uint32_t> seen;
  compile(f, seen);
}

std::uint32_t CompiledFormula::compile(const Formula& f, std::map<Formula, std::uint32_t>& seen) {
  if (auto it = seen.find(f); it != seen.end()) return it->second;
  Op op{Op::Bottom};
  switch (f.kind()) {
    case Formula::Kind::Bottom:
      break;
    case Formula::Kind::Variable: {
      auto it = std::lower_bound(variables_.begin(), variables_.end(), f.name());
      op = {Op::Var, static_cast<std::uint32_t>(it - variables_.begin())};
      break;
    }
    case Formula::Kind::Implies: {
      auto a = compile(f.left(), seen);
      auto b = compile(f.right(), seen);
      op = {Op::Implies, a, b};
      break;
    }
    case Formula::Kind::Box: {
      auto n = f.index().as_natural();
      if (!n || *n > 0xffffffffU) throw RangeError("modality index " + f.index().to_string() + " is not finite");
      auto a = compile(f.left(), seen);
      op = {Op::Box, a, static_cast<std::uint32_t>(*n)};
      relations_needed_ = std::max<std::size_t>(relations_needed_, *n + 1);
      break;
    }
  }
  ops_.push_back(op);
  auto id = static_cast<std::uint32_t>(ops_.size() - 1);
  seen.emplace(f, id);
  return id;
}

WorldSet CompiledFormula::eval(const JModel& m) const {
  if (relations_needed_ > m.relation_count())
    throw RangeError("formula uses modality " + std::to_string(relations_needed_ - 1) + " but the model has " +
                     std::to_string(m.relation_count()) + " relations");
  const WorldSet all = m.all();
  const std::size_t k = m.world_count();
  std::vector<WorldSet> vars(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) vars[i] = m.truth(variables_[i]);
  std::vector<WorldSet> val(ops_.size());
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    const Op& op = ops_[i];
    switch (op.kind) {
      case Op::Bottom:
        val[i] = 0;
        break;
      case Op::Var:
        val[i] = vars[op.a];
        break;
      case Op::Implies:
        val[i] = (~val[op.a] | val[op.b]) & all;
        break;
      case Op::Box: {
        const WorldSet body = val[op.a];
        WorldSet s = 0;
        for (std::size_t w = 0; w < k; ++w)
          if ((m.predecessors(op.b, w) & ~body) == 0) s |= singleton(w);
        val[i] = s;
        break;
      }
    }
  }
  return val.back();
}

WorldSet eval(const JModel& m, const Formula& f) { return CompiledFormula(f).eval(m); }

bool valid_on(const JModel& m, const Formula& f) { return eval(m, f) == m.all(); }

JModel add_root(const JModel& m) {
  if (m.world_count() + 1 > kMaxWorlds) throw RangeError("too many worlds to add a root");
  JModel out(m.world_count() + 1, m.relation_count());
  for (std::size_t n = 0; n < m.relation_count(); ++n)
    for (std::size_t w = 0; w < m.world_count(); ++w) out.set_predecessors(n, w + 1, m.predecessors(n, w) << 1);
  out.set_predecessors(0, 0, out.all() & ~singleton(0));
  for (const auto& [var, s] : m.valuation()) out.set_truth(var, s << 1);
  return out;
}

bool is_rooted(const JModel& m) { return m.predecessors(0, 0) == (m.all() & ~singleton(0)); }

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

constexpr std::size_t kMaxEnumerationWorlds = 6;

std::uint64_t order_code(const std::vector<WorldSet>& pred) {
  const std::size_t k = pred.size();
  std::uint64_t code = 0;
  for (std::size_t w = 0; w < k; ++w)
    for_each_world(pred[w], [&](std::size_t u) { code |= std::uint64_t{1} << (u * k + w); });
  return code;
}

// Extends each order on worlds 0..j-1 by world j with a down-closed set D below it and an
// up-closed set U above it, where everything in D already lies below everything in U.
std::vector<std::vector<WorldSet>> build_orders(std::size_t worlds) {
  std::vector<std::vector<WorldSet>> orders{{}};
  for (std::size_t j = 0; j < worlds; ++j) {
    std::vector<std::vector<WorldSet>> next;
    const WorldSet subsets = WorldSet{1} << j;
    for (const auto& pred : orders) {
      std::vector<WorldSet> succ(j, 0);
      for (std::size_t w = 0; w < j; ++w) for_each_world(pred[w], [&](std::size_t u) { succ[u] |= singleton(w); });
      for (WorldSet down = 0; down < subsets; ++down) {
        bool closed = true;
        for_each_world(down, [&](std::size_t d) { closed = closed && (pred[d] & ~down) == 0; });
        if (!closed) continue;
        for (WorldSet up = 0; up < subsets; ++up) {
          if (up & down) continue;
          bool ok = true;
          for_each_world(up, [&](std::size_t u) { ok = ok && (succ[u] & ~up) == 0 && (down & ~pred[u]) == 0; });
          if (!ok) continue;
          auto ext = pred;
          ext.push_back(down);
          for_each_world(up, [&](std::size_t u) { ext[u] |= singleton(j); });
          next.push_back(std::move(ext));
        }
      }
    }
    orders = std::move(next);
  }
  std::sort(orders.begin(), orders.end(), [](const auto& a, const auto& b) { return order_code(a) < order_code(b); });
  return orders;
}

void check_options(const EnumerationOptions& opts) {
  if (opts.max_worlds < 1 || opts.max_worlds > kMaxEnumerationWorlds)
    throw RangeError("max worlds must be in 1.." + std::to_string(kMaxEnumerationWorlds));
  if (opts.relations < 1) throw RangeError("at least one relation is required");
  if (opts.variables.size() * opts.max_worlds >= 64) throw RangeError("too many variables to enumerate valuations");
}

}  // namespace

const std::vector<std::vector<WorldSet>>& strict_partial_orders(std::size_t worlds) {
  if (worlds < 1 || worlds > kMaxEnumerationWorlds) throw RangeError("unsupported world count for enumeration");
  static std::mutex mutex;
  static std::array<std::optional<std::vector<std::vector<WorldSet>>>, kMaxEnumerationWorlds + 1> cache;
  std::lock_guard lock(mutex);
  if (!cache[worlds]) cache[worlds] = build_orders(worlds);
  return *cache[worlds];
}

std::vector<FrameBlock> frame_blocks(const EnumerationOptions& opts) {
  check_options(opts);
  std::vector<FrameBlock> blocks;
  for (std::size_t k = 1; k <= opts.max_worlds; ++k)
    for (std::size_t i = 0; i < strict_partial_orders(k).size(); ++i) blocks.push_back({k, i});
  return blocks;
}

bool for_each_frame(const EnumerationOptions& opts, const FrameBlock& block,
                    const std::function<bool(const JModel&)>& visit) {
  check_options(opts);
  const auto& orders = strict_partial_orders(block.worlds);
  if (block.first_order >= orders.size()) throw RangeError("frame block out of range");
  std::vector<const std::vector<WorldSet>*> chosen{&orders[block.first_order]};

  std::function<bool()> extend = [&]() -> bool {
    if (chosen.size() == opts.relations) {
      JModel frame(block.worlds, opts.relations);
      for (std::size_t n = 0; n < chosen.size(); ++n)
        for (std::size_t w = 0; w < block.worlds; ++w) frame.set_predecessors(n, w, (*chosen[n])[w]);
      if (opts.stratified_only && !is_stratified(frame)) return true;
      return visit(frame);
    }
    for (const auto& candidate : orders) {
      bool ok = true;
      for (const auto* lower : chosen) ok = ok && compatible(*lower, candidate);
      if (!ok) continue;
      chosen.push_back(&candidate);
      bool go_on = extend();
      chosen.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return extend();
}

bool for_each_frame(const EnumerationOptions& opts, const std::function<bool(const JModel&)>& visit) {
  for (const auto& block : frame_blocks(opts))
    if (!for_each_frame(opts, block, visit)) return false;
  return true;
}

bool for_each_valuation(const JModel& frame, const std::vector<std::string>& variables,
                        const std::function<bool(const JModel&)>& visit) {
  const std::size_t k = frame.world_count();
  const std::size_t bits = k * variables.size();
  if (bits >= 64) throw RangeError("too many variables to enumerate valuations");
  const WorldSet mask = all_worlds(k);
  JModel model = frame;
  const std::uint64_t total = std::uint64_t{1} << bits;
  for (std::uint64_t x = 0; x < total; ++x) {
    for (std::size_t i = 0; i < variables.size(); ++i)
      model.set_truth(variables[i], (x >> (k * (variables.size() - 1 - i))) & mask);
    if (!visit(model)) return false;
  }
  return true;
}

bool for_each_model(const EnumerationOptions& opts, const std::function<bool(const JModel&)>& visit) {
  return for_each_frame(opts, [&](const JModel& frame) { return for_each_valuation(frame, opts.variables, visit); });
}

std::vector<JModel> enumerate_models(const EnumerationOptions& opts) {
  std::vector<JModel> out;
  for_each_model(opts, [&](const JModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

}  // namespace tglp
