#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tglp/decide.hpp"
#include "tglp/hilbert.hpp"
#include "tglp/kripke.hpp"
#include "tglp/solovay.hpp"

namespace tglp {

using Json = nlohmann::ordered_json;

// Reading functions raise FormatError on documents that do not follow the format,
// and propagate ParseError / RangeError from embedded formulas, ordinals and worlds.

// {"worlds": k, "relations": [[[u, w], ...] per relation], "valuation": {"p": [worlds]}}
Json to_json(const JModel& m);
JModel model_from_json(const Json& j);

// {"system": name, "hypotheses": [formulas], "lines": [{"formula": text, "rule": text}]}
// Rules: "axiom:<schema>", "hyp", "mp i j", "nec i [ordinal]", "loeb i"; references are 1-based.
Json to_json(const HilbertProof& p);
HilbertProof proof_from_json(const Json& j);
Justification parse_justification(const std::string& text);

// {"events": {"<step>": {"level": m, "target": v}}}
Json to_json(const SolovaySchedule& s);
SolovaySchedule schedule_from_json(const Json& j);

Json to_json(const DecisionOutcome& o);
Json to_json(const FrameReport& r);
Json to_json(const PathReport& r);

Json read_json_file(const std::filesystem::path& path);
// Every *.json proof in `dir`, sorted by file name; entries are named by file stem.
ProofCorpus load_corpus(const std::filesystem::path& dir);

}  // namespace tglp
