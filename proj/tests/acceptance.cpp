// Acceptance run: criteria 1-7 with their runtime limits. Prints one line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tglp/decide.hpp"
#include "tglp/io.hpp"
#include "tglp/solovay.hpp"

using namespace tglp;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  Json record;  // deterministic structured output, compared by criterion 7
  std::vector<std::string> failures;

  void fail(std::string what) {
    pass = false;
    if (failures.size() < 10) failures.push_back(std::move(what));
  }
};

const ProofCorpus& corpus() {
  static const ProofCorpus c = load_corpus(TGLP_CORPUS_DIR);
  return c;
}

Formula parse(const std::string& s) { return parse_formula(s); }

std::string box(const Ordinal& i, const std::string& body) { return "[" + i.to_string() + "]" + body; }
std::string dia(const Ordinal& i, const std::string& body) { return "<" + i.to_string() + ">" + body; }
std::string imp(const std::string& a, const std::string& b) { return "(" + a + " -> " + b + ")"; }

Outcome axiom_sweep() {
  Outcome out;
  out.record = Json::array();
  const std::vector<std::pair<Ordinal, Ordinal>> pairs{
      {Ordinal::natural(0), Ordinal::natural(1)},
      {Ordinal::natural(1), Ordinal::omega()},
      {Ordinal::omega(), Ordinal::power(Ordinal::omega())},
  };
  std::size_t count = 0;
  for (const auto& [lo, hi] : pairs) {
    for (const std::string body : {"p", "q", "(p -> q)"}) {
      const std::vector<std::pair<std::string, std::string>> instances{
          {"tautology", imp(box(lo, body), imp(box(hi, "r"), box(lo, body)))},
          {"k-low", imp(box(lo, imp(body, "r")), imp(box(lo, body), box(lo, "r")))},
          {"k-high", imp(box(hi, imp(body, "r")), imp(box(hi, body), box(hi, "r")))},
          {"loeb-low", imp(box(lo, imp(box(lo, body), body)), box(lo, body))},
          {"loeb-high", imp(box(hi, imp(box(hi, body), body)), box(hi, body))},
          {"monotone", imp(dia(hi, body), dia(lo, body))},
          {"neg-introspect", imp(dia(lo, body), box(hi, dia(lo, body)))},
          {"box-monotone", imp(box(lo, body), box(hi, body))},
      };
      for (const auto& [schema, text] : instances) {
        ++count;
        const auto f = parse(text);
        const auto o = decide(f, 3, &corpus());
        const bool theorem = o.status == DecisionStatus::Theorem && verify_outcome(o, f);
        const bool no_model = !find_countermodel(o.condensed.formula, 3);
        if (!theorem) out.fail(text + ": not proved");
        if (!no_model) out.fail(text + ": countermodel found");
        out.record.push_back({{"schema", schema},
                              {"formula", f.to_string()},
                              {"status", to_string(o.status)},
                              {"source", o.proof_source},
                              {"countermodel", !no_model}});
      }
    }
  }
  out.summary = std::to_string(count) + " instances";
  return out;
}

Outcome refutations() {
  Outcome out;
  out.record = Json::array();
  const std::vector<std::pair<std::string, std::size_t>> cases{
      {"<0>T", 1}, {"[1]p -> [0]p", 2}, {"p -> [0]<0>p", 2}, {"~<1>T", 2}};
  for (const auto& [text, bound] : cases) {
    const auto f = parse(text);
    const auto o = decide(f, bound, &corpus());
    out.record.push_back(to_json(o));
    if (o.status != DecisionStatus::NonTheorem || !o.countermodel) {
      out.fail(text + ": not refuted within " + std::to_string(bound) + " worlds");
      continue;
    }
    const auto& [model, world] = *o.countermodel;
    const auto& g = o.condensed.formula;
    if (!verify_outcome(o, f)) out.fail(text + ": evidence rejected");
    if (!validate_j_frame(model).is_j_frame) out.fail(text + ": not a J-frame");
    if (model.world_count() > bound) out.fail(text + ": model too large");
    if (!contains(eval(model, Formula::conjunction(m_plus(g), Formula::negation(g))), world))
      out.fail(text + ": witness does not satisfy M+(g) & ~g");
  }
  out.summary = std::to_string(cases.size()) + " refutations";
  return out;
}

bool transitive_irreflexive(const Relation& r, std::size_t worlds) {
  for (std::size_t v = 0; v < worlds; ++v) {
    if (r.holds(v, v)) return false;
    for (std::size_t w = 0; w < worlds; ++w)
      if (r.holds(w, v) && (r.below[w] & ~r.below[v]) != 0) return false;
  }
  return true;
}

Outcome frame_theory() {
  Outcome out;
  EnumerationOptions opts;
  opts.max_worlds = 3;
  opts.relations = 2;
  std::size_t frames = 0, stratified = 0, checks = 0;
  for_each_frame(opts, [&](const JModel& m) {
    ++frames;
    const std::size_t worlds = m.world_count(), relations = m.relation_count();
    const auto name = to_json(m).dump();
    for (std::size_t n = 0; n < relations; ++n) {
      ++checks;
      if (!transitive_irreflexive(much_below(m, n), worlds)) out.fail(name + ": <<_" + std::to_string(n));
      if (n + 1 >= relations) continue;
      for (const WorldSet cls : approx_classes(m, n + 1)) {
        for (std::size_t w = 0; w < worlds; ++w)
          for (std::size_t v = 0; v < worlds; ++v)
            if (contains(cls, w) && contains(cls, v) && m.predecessors(n, w) != m.predecessors(n, v))
              out.fail(name + ": classmates " + std::to_string(w) + "," + std::to_string(v));
      }
    }
    if (is_stratified(m)) {
      ++stratified;
      for (std::size_t n = 0; n < relations; ++n)
        for (std::size_t k = n + 1; k < relations; ++k)
          for (std::size_t w = 0; w < worlds; ++w)
            for (std::size_t v = 0; v < worlds; ++v)
              for (std::size_t u = 0; u < worlds; ++u) {
                ++checks;
                if (m.below(n, w, v) && m.below(k, w, u) && !m.below(n, u, v))
                  out.fail(name + ": stratified descent " + std::to_string(w) + "," + std::to_string(v) + "," +
                           std::to_string(u));
              }
    }
    return true;
  });
  out.record = {{"frames", frames}, {"stratified", stratified}, {"checks", checks}};
  out.summary = std::to_string(frames) + " frames, " + std::to_string(stratified) + " stratified";
  return out;
}

// Replaces one line by a bare atom and expects the checker to stop exactly there.
void check_mutation(Outcome& out, const std::string& name, const HilbertProof& proof) {
  auto mutated = proof;
  const std::size_t line = proof.lines.size() / 2;
  mutated.lines[line].formula = Formula::var("mutated");
  const auto r = check_proof(mutated);
  if (r.accepted || r.line != line)
    out.fail(name + ": mutation at line " + std::to_string(line + 1) + " not caught there");
  out.record["mutations"].push_back({{"proof", name}, {"line", line + 1}, {"reason", r.reason}});
}

Outcome proof_corpus() {
  Outcome out;
  out.record = {{"accepted", Json::array()}, {"lifted", Json::array()}, {"mutations", Json::array()}};
  std::size_t lifted = 0;
  for (const auto& entry : corpus()) {
    const bool derivation = entry.name == "four-axiom" || entry.name == "box-monotone" ||
                            entry.name == "glblack-loeb-rule";
    const auto r = check_proof(entry.proof);
    if (!r) out.fail(entry.name + ": rejected at line " + std::to_string(r.line + 1) + " (" + r.reason + ")");
    out.record["accepted"].push_back({{"proof", entry.name}, {"accepted", r.accepted}});
    if (derivation) check_mutation(out, entry.name, entry.proof);
    if (entry.proof.system != ProofSystem::GlpOmega) continue;
    for (const auto& levels : {std::vector<Ordinal>{Ordinal::natural(1), Ordinal::omega()},
                               std::vector<Ordinal>{Ordinal::omega(), Ordinal::power(Ordinal::omega())}}) {
      const auto lifted_proof = lift_proof(entry.proof, CondensationMap(levels));
      const auto lr = check_proof(lifted_proof);
      const auto label = entry.name + " lifted to " + levels.back().to_string();
      if (!lr) out.fail(label + ": rejected at line " + std::to_string(lr.line + 1) + " (" + lr.reason + ")");
      out.record["lifted"].push_back({{"proof", entry.name},
                                      {"map", {levels[0].to_string(), levels[1].to_string()}},
                                      {"conclusion", lifted_proof.conclusion().to_string()},
                                      {"accepted", lr.accepted}});
      if (derivation) check_mutation(out, label, lifted_proof);
      ++lifted;
    }
  }
  for (const char* needed : {"four-axiom", "box-monotone", "glblack-loeb-rule"}) {
    bool found = false;
    for (const auto& e : corpus()) found = found || e.name == needed;
    if (!found) out.fail(std::string("missing corpus proof ") + needed);
  }
  out.summary = std::to_string(corpus().size()) + " proofs, " + std::to_string(lifted) + " lifts";
  return out;
}

Outcome solovay_properties() {
  Outcome out;
  EnumerationOptions opts;
  opts.max_worlds = 3;
  opts.relations = 2;
  opts.stratified_only = true;
  std::size_t models = 0, schedules = 0, runs = 0;
  for_each_frame(opts, [&](const JModel& frame) {
    const auto m = add_root(frame);
    ++models;
    const auto all = all_schedules(m, 2, 5);
    const auto report = check_path_properties(m, all, 6);
    schedules += report.schedules;
    runs += report.runs;
    for (const auto& v : report.violations) out.fail(to_json(m).dump() + ": " + v.property + " " + v.detail);
    if (limit_value(m, {}) != 0) out.fail(to_json(m).dump() + ": empty schedule leaves the root");
    return true;
  });
  out.record = {{"models", models}, {"schedules", schedules}, {"runs", runs}};
  out.summary = std::to_string(models) + " models, " + std::to_string(schedules) + " schedules, " +
                std::to_string(runs) + " runs";
  return out;
}

Ordinal random_ordinal(std::mt19937_64& rng, int rank) {
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  if (rank == 0) return Ordinal::natural(pick(0, 9));
  Ordinal out;
  const auto terms = pick(0, 3);
  for (std::uint64_t i = 0; i < terms; ++i) out = add(out, Ordinal::power(random_ordinal(rng, rank - 1), pick(1, 4)));
  return out;
}

Outcome ordinal_suite() {
  Outcome out;
  std::mt19937_64 rng(20261015);
  std::vector<Ordinal> sample;
  for (int i = 0; i < 1000; ++i) sample.push_back(random_ordinal(rng, static_cast<int>(rng() % 4)));

  std::size_t absorbing = 0;
  for (const auto& a : sample) {
    if (a.rank() > 3) out.fail(a.to_string() + ": rank above 3");
    if (parse_ordinal(a.to_string()) != a) out.fail(a.to_string() + ": round trip");
    const bool absorbs = is_omega_absorbing(a);
    absorbing += absorbs;
    if (absorbs != (compare(omega_left_multiply(a), a) == 0)) out.fail(a.to_string() + ": absorption");
  }
  for (const auto& a : sample)
    for (const auto& b : sample) {
      const auto ab = compare(a, b), ba = compare(b, a);
      const int outcomes = (ab < 0) + (ab == 0) + (ab > 0);
      if (outcomes != 1 || (ab < 0) != (ba > 0) || (ab == 0) != (a.to_string() == b.to_string()))
        out.fail(a.to_string() + " vs " + b.to_string() + ": trichotomy");
    }
  std::uniform_int_distribution<std::size_t> index(0, sample.size() - 1);
  for (int i = 0; i < 200000; ++i) {
    const auto& a = sample[index(rng)];
    const auto& b = sample[index(rng)];
    const auto& c = sample[index(rng)];
    if (compare(a, b) < 0 && compare(b, c) < 0 && !(compare(a, c) < 0)) out.fail("transitivity");
  }

  const auto w = Ordinal::omega();
  const auto w_to_w = Ordinal::power(w);
  if (omega_left_multiply(w_to_w) != w_to_w) out.fail("w * w^w");
  if (omega_left_multiply(add(w, Ordinal::natural(1))) != parse_ordinal("w^2+w")) out.fail("w * (w+1)");

  out.record = {{"samples", sample.size()},
                {"absorbing", absorbing},
                {"w*w^w", omega_left_multiply(w_to_w).to_string()},
                {"w*(w+1)", omega_left_multiply(add(w, Ordinal::natural(1))).to_string()},
                {"first", sample.front().to_string()},
                {"last", sample.back().to_string()}};
  out.summary = std::to_string(sample.size()) + " notations, " + std::to_string(absorbing) + " absorbing";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "axiom soundness sweep", 60, axiom_sweep},   {2, "refutation suite", 10, refutations},
      {3, "J-frame theory", 120, frame_theory},        {4, "proof corpus", 5, proof_corpus},
      {5, "Solovay path properties", 120, solovay_properties}, {6, "ordinal suite", 5, ordinal_suite},
  };

  bool all_pass = true;
  std::vector<std::string> first_run;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= c.limit_seconds) o.fail("over the " + std::to_string(c.limit_seconds) + " s limit");
    all_pass = all_pass && o.pass;
    first_run.push_back(o.record.dump());
    std::printf("criterion %d (%s): %s  [%.2f s, limit %.0f s] %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL",
                seconds, c.limit_seconds, o.summary.c_str());
    for (const auto& f : o.failures) std::printf("    %s\n", f.c_str());
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<int> differing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string again;
    try {
      again = criteria[i].run().record.dump();
    } catch (const std::exception& e) {
      again = e.what();
    }
    if (again != first_run[i]) differing.push_back(criteria[i].id);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::size_t bytes = 0;
  for (const auto& s : first_run) bytes += s.size();
  all_pass = all_pass && differing.empty();
  std::printf("criterion 7 (determinism): %s  [%.2f s] %zu bytes compared", differing.empty() ? "PASS" : "FAIL",
              seconds, bytes);
  for (int id : differing) std::printf(" differs:%d", id);
  std::printf("\n");
  return all_pass ? 0 : 1;
}
