#include "tglp/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tglp/error.hpp"

namespace tglp {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::size_t natural(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    throw FormatError(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

const std::string& text(const Json& j, const std::string& what) {
  if (!j.is_string()) throw FormatError(what + " must be a string");
  return j.get_ref<const std::string&>();
}

Json world_list(WorldSet s) {
  Json out = Json::array();
  for (std::size_t w = 0; w < 64; ++w)
    if (contains(s, w)) out.push_back(w);
  return out;
}

std::size_t parse_line_number(std::string_view token, const std::string& rule) {
  std::size_t n = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
  if (ec != std::errc{} || ptr != token.data() + token.size() || n == 0)
    throw FormatError("bad line reference '" + std::string(token) + "' in rule '" + rule + "'");
  return n - 1;
}

Ordinal bracketed_ordinal(std::string_view rest, const std::string& rule) {
  while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  while (!rest.empty() && rest.back() == ' ') rest.remove_suffix(1);
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
    throw FormatError("rule '" + rule + "' needs an index in brackets");
  return parse_ordinal(rest.substr(1, rest.size() - 2));
}

}  // namespace

Json to_json(const JModel& m) {
  Json relations = Json::array();
  for (std::size_t n = 0; n < m.relation_count(); ++n) {
    Json edges = Json::array();
    for (auto [u, w] : m.edges(n)) edges.push_back(Json::array({u, w}));
    relations.push_back(std::move(edges));
  }
  Json valuation = Json::object();
  for (const auto& [var, s] : m.valuation()) valuation[var] = world_list(s);
  return Json{{"worlds", m.world_count()}, {"relations", std::move(relations)}, {"valuation", std::move(valuation)}};
}

JModel model_from_json(const Json& j) {
  const std::size_t worlds = natural(field(j, "worlds", "model"), "\"worlds\"");
  const Json& rels = field(j, "relations", "model");
  if (!rels.is_array() || rels.empty()) throw FormatError("\"relations\" must be a non-empty array");
  JModel m(worlds, rels.size());
  for (std::size_t n = 0; n < rels.size(); ++n) {
    if (!rels[n].is_array()) throw FormatError("relation " + std::to_string(n) + " must be an array of pairs");
    for (const auto& edge : rels[n]) {
      if (!edge.is_array() || edge.size() != 2) throw FormatError("edges must be [u, w] pairs");
      m.add_edge(n, natural(edge[0], "edge world"), natural(edge[1], "edge world"));
    }
  }
  if (auto it = j.find("valuation"); it != j.end()) {
    if (!it->is_object()) throw FormatError("\"valuation\" must be an object");
    for (const auto& [var, worlds_json] : it->items()) {
      auto parsed = parse_formula(var);
      if (!parsed.is_var() || parsed.name() != var) throw FormatError("'" + var + "' is not a variable name");
      if (!worlds_json.is_array()) throw FormatError("valuation of '" + var + "' must be an array");
      WorldSet s = 0;
      for (const auto& w : worlds_json) {
        const std::size_t world = natural(w, "valuation world");
        if (world >= worlds) throw RangeError("valuation of '" + var + "' mentions world " + std::to_string(world));
        s |= singleton(world);
      }
      m.set_truth(var, s);
    }
  }
  return m;
}

Justification parse_justification(const std::string& rule) {
  std::istringstream in(rule);
  std::string head;
  in >> head;
  if (head.rfind("axiom:", 0) == 0) {
    std::string extra;
    auto schema = parse_schema(head.substr(6));
    if (!schema || (in >> extra)) throw FormatError("unknown axiom rule '" + rule + "'");
    return AxiomRule{*schema};
  }
  if (head == "hyp") {
    std::string extra;
    if (in >> extra) throw FormatError("unexpected text in rule '" + rule + "'");
    return HypothesisRule{};
  }
  std::string first;
  in >> first;
  if (first.empty()) throw FormatError("rule '" + rule + "' needs a line reference");
  const std::size_t premise = parse_line_number(first, rule);
  std::string rest;
  std::getline(in, rest);
  if (head == "mp") {
    std::istringstream tail(rest);
    std::string second, extra;
    if (!(tail >> second) || (tail >> extra)) throw FormatError("rule '" + rule + "' needs exactly two references");
    return ModusPonens{premise, parse_line_number(second, rule)};
  }
  if (head == "nec") return Necessitation{premise, bracketed_ordinal(rest, rule)};
  if (head == "loeb") {
    if (rest.find_first_not_of(' ') == std::string::npos) return LoebRule{premise, Ordinal::zero()};
    return LoebRule{premise, bracketed_ordinal(rest, rule)};
  }
  throw FormatError("unknown rule '" + rule + "'");
}

Json to_json(const HilbertProof& p) {
  Json out{{"system", std::string(to_string(p.system))}};
  if (!p.hypotheses.empty()) {
    Json hyps = Json::array();
    for (const auto& h : p.hypotheses) hyps.push_back(h.to_string());
    out["hypotheses"] = std::move(hyps);
  }
  Json lines = Json::array();
  for (const auto& line : p.lines) lines.push_back(Json{{"formula", line.formula.to_string()}, {"rule", to_string(line.rule)}});
  out["lines"] = std::move(lines);
  return out;
}

HilbertProof proof_from_json(const Json& j) {
  HilbertProof p;
  const std::string& system = text(field(j, "system", "proof"), "\"system\"");
  auto sys = parse_system(system);
  if (!sys) throw FormatError("unknown proof system '" + system + "'");
  p.system = *sys;
  if (auto it = j.find("hypotheses"); it != j.end()) {
    if (!it->is_array()) throw FormatError("\"hypotheses\" must be an array");
    for (const auto& h : *it) p.hypotheses.push_back(parse_formula(text(h, "hypothesis")));
  }
  const Json& lines = field(j, "lines", "proof");
  if (!lines.is_array()) throw FormatError("\"lines\" must be an array");
  for (const auto& line : lines) {
    const std::string& formula = text(field(line, "formula", "proof line"), "\"formula\"");
    const std::string& rule = text(field(line, "rule", "proof line"), "\"rule\"");
    p.lines.push_back({parse_formula(formula), parse_justification(rule)});
  }
  return p;
}

Json to_json(const SolovaySchedule& s) {
  Json events = Json::object();
  for (const auto& [step, e] : s.events) events[std::to_string(step)] = Json{{"level", e.level}, {"target", e.target}};
  return Json{{"events", std::move(events)}};
}

SolovaySchedule schedule_from_json(const Json& j) {
  SolovaySchedule s;
  const Json& events = field(j, "events", "schedule");
  if (!events.is_object()) throw FormatError("\"events\" must be an object keyed by step");
  for (const auto& [key, e] : events.items()) {
    std::uint64_t step = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), step);
    if (ec != std::errc{} || ptr != key.data() + key.size()) throw FormatError("bad step '" + key + "'");
    if (!s.events.emplace(step, SolovayEvent{natural(field(e, "level", "event"), "\"level\""),
                                             natural(field(e, "target", "event"), "\"target\"")})
             .second)
      throw FormatError("duplicate step '" + key + "'");
  }
  return s;
}

Json to_json(const DecisionOutcome& o) {
  Json levels = Json::array();
  for (const auto& l : o.condensed.map.levels()) levels.push_back(l.to_string());
  Json out{{"status", std::string(to_string(o.status))},
           {"condensed", o.condensed.formula.to_string()},
           {"levels", std::move(levels)}};
  Json evidence = Json::object();
  if (o.proof) {
    evidence["source"] = o.proof_source;
    evidence["proof"] = to_json(*o.proof);
  }
  if (o.countermodel) {
    evidence["model"] = to_json(o.countermodel->model);
    evidence["world"] = o.countermodel->world;
  }
  if (o.status == DecisionStatus::Unknown && o.bounds)
    evidence["bounds"] = Json{{"max_worlds", o.bounds->max_worlds},
                              {"relations", o.bounds->relations},
                              {"stratified_only", o.bounds->stratified_only}};
  out["evidence"] = std::move(evidence);
  return out;
}

Json to_json(const FrameReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back(Json{{"condition", v.condition}, {"relations", v.relations}, {"witness", v.witness}});
  Json out{{"is_j_frame", r.is_j_frame}, {"is_stratified", r.is_stratified}, {"violations", std::move(violations)}};
  if (r.stratification_witness) {
    const auto& w = *r.stratification_witness;
    out["stratification_witness"] = Json{{"relation", w.relation}, {"lower", w.lower}, {"upper", w.upper}};
  }
  return out;
}

Json to_json(const PathReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations)
    violations.push_back(Json{{"property", v.property}, {"schedule", v.schedule}, {"detail", v.detail}});
  return Json{{"schedules", r.schedules}, {"runs", r.runs}, {"violations", std::move(violations)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

ProofCorpus load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw FormatError("corpus directory " + dir.string() + " not found");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  ProofCorpus corpus;
  for (const auto& f : files) {
    try {
      corpus.push_back({f.stem().string(), proof_from_json(read_json_file(f))});
    } catch (const Error& e) {
      throw FormatError(f.filename().string() + ": " + e.what());
    }
  }
  return corpus;
}

}  // namespace tglp
