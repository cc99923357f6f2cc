#include "tglp/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>

#include <CLI11.hpp>

#include "tglp/decide.hpp"
#include "tglp/error.hpp"
#include "tglp/io.hpp"
#include "tglp/solovay.hpp"

#ifndef TGLP_CORPUS_DIR
#define TGLP_CORPUS_DIR ""
#endif

namespace tglp {

namespace {

std::string show_worlds(WorldSet s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t w = 0; w < 64; ++w)
    if (contains(s, w)) {
      out += (first ? "" : ", ") + std::to_string(w);
      first = false;
    }
  return out + "}";
}

std::string show_order(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return "Less";
  if (o == std::strong_ordering::greater) return "Greater";
  return "Equal";
}

void print_proof(std::ostream& out, const HilbertProof& p) {
  out << "system: " << to_string(p.system) << "\n";
  for (const auto& h : p.hypotheses) out << "hypothesis: " << h.to_string() << "\n";
  for (std::size_t i = 0; i < p.lines.size(); ++i)
    out << (i + 1) << ". " << p.lines[i].formula.to_string() << "    " << to_string(p.lines[i].rule) << "\n";
}

struct Settings {
  bool json = false;
  // ordinal
  std::vector<std::string> ordinals;
  // formula commands
  std::string formula;
  // files
  std::string file;
  std::string schedule_file;
  std::string system;
  // decide
  std::size_t max_worlds = 4;
  bool stratified_only = false;
  std::string corpus;
  std::size_t parallel = 1;
  // solovay
  std::size_t steps = 0;
  std::size_t max_events = 0;
  std::size_t max_steps = 0;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decide, refute and certify formulas of transfinite provability logic", "tglp"};
  app.require_subcommand(1);
  Settings s;
  std::function<int()> action;
  auto json_flag = [&](CLI::App* cmd) { cmd->add_flag("--json", s.json, "Structured output"); };

  // ordinal
  auto* ordinal = app.add_subcommand("ordinal", "Ordinal notations below epsilon_0");
  ordinal->require_subcommand(1);
  auto* cmp = ordinal->add_subcommand("cmp", "Compare two ordinals");
  cmp->add_option("ordinals", s.ordinals)->required()->expected(2);
  json_flag(cmp);
  cmp->callback([&] {
    action = [&] {
      auto r = show_order(compare(parse_ordinal(s.ordinals[0]), parse_ordinal(s.ordinals[1])));
      if (s.json)
        out << Json{{"result", r}}.dump() << "\n";
      else
        out << r << "\n";
      return 0;
    };
  });
  auto* omul = ordinal->add_subcommand("omul", "Left-multiply by omega");
  omul->add_option("ordinals", s.ordinals)->required()->expected(1, 1 << 20);
  json_flag(omul);
  omul->callback([&] {
    action = [&] {
      Json results = Json::array();
      for (const auto& o : s.ordinals) {
        auto r = omega_left_multiply(parse_ordinal(o)).to_string();
        if (s.json)
          results.push_back(Json{{"input", parse_ordinal(o).to_string()}, {"result", r}});
        else
          out << r << "\n";
      }
      if (s.json) out << results.dump() << "\n";
      return 0;
    };
  });
  auto* absorbing = ordinal->add_subcommand("absorbing", "Whether omega * a == a");
  absorbing->add_option("ordinals", s.ordinals)->required()->expected(1, 1 << 20);
  json_flag(absorbing);
  absorbing->callback([&] {
    action = [&] {
      Json results = Json::array();
      for (const auto& o : s.ordinals) {
        const auto a = parse_ordinal(o);
        const bool r = is_omega_absorbing(a);
        if (s.json)
          results.push_back(Json{{"input", a.to_string()}, {"result", r}});
        else
          out << (r ? "true" : "false") << "\n";
      }
      if (s.json) out << results.dump() << "\n";
      return 0;
    };
  });

  // parse / condense / mplus
  auto* parse = app.add_subcommand("parse", "Print a formula in canonical form");
  parse->add_option("formula", s.formula)->required();
  json_flag(parse);
  parse->callback([&] {
    action = [&] {
      auto f = parse_formula(s.formula);
      if (s.json)
        out << Json{{"formula", f.to_string()}}.dump() << "\n";
      else
        out << f.to_string() << "\n";
      return 0;
    };
  });
  auto* cond = app.add_subcommand("condense", "Rename modalities to 0..N in order");
  cond->add_option("formula", s.formula)->required();
  json_flag(cond);
  cond->callback([&] {
    action = [&] {
      auto c = condense(parse_formula(s.formula));
      Json levels = Json::array();
      std::string text;
      for (std::size_t i = 0; i < c.map.size(); ++i) {
        levels.push_back(c.map[i].to_string());
        text += (i ? ", " : "") + std::to_string(i) + " -> " + c.map[i].to_string();
      }
      if (s.json)
        out << Json{{"formula", c.formula.to_string()}, {"levels", levels}}.dump() << "\n";
      else
        out << c.formula.to_string() << "\nlevels: " << text << "\n";
      return 0;
    };
  });
  auto* mplus = app.add_subcommand("mplus", "Print M+ of a formula with finite indices");
  mplus->add_option("formula", s.formula)->required();
  json_flag(mplus);
  mplus->callback([&] {
    action = [&] {
      auto f = m_plus(parse_formula(s.formula));
      if (s.json)
        out << Json{{"formula", f.to_string()}}.dump() << "\n";
      else
        out << f.to_string() << "\n";
      return 0;
    };
  });

  // check-proof
  auto* check = app.add_subcommand("check-proof", "Check a Hilbert proof file");
  check->add_option("file", s.file)->required();
  check->add_option("--system", s.system, "Override the proof system named in the file")
      ->check(CLI::IsMember({"GLP_prec", "GLP_omega", "J", "GLBlack"}));
  json_flag(check);
  check->callback([&] {
    action = [&] {
      auto proof = proof_from_json(read_json_file(s.file));
      if (!s.system.empty()) proof.system = *parse_system(s.system);
      auto r = check_proof(proof);
      if (s.json) {
        Json j{{"accepted", r.accepted}};
        if (!r.accepted) {
          j["line"] = r.line + 1;
          j["reason"] = r.reason;
          j["detail"] = r.detail;
        }
        out << j.dump() << "\n";
      } else if (r.accepted) {
        out << "accepted: " << proof.conclusion().to_string() << "\n";
      } else {
        out << "rejected at line " << (r.line + 1) << ": " << r.reason << (r.detail.empty() ? "" : " (" + r.detail + ")")
            << "\n";
      }
      return r.accepted ? 0 : 1;
    };
  });

  // decide
  auto* dec = app.add_subcommand("decide", "Prove or refute a formula");
  dec->add_option("formula", s.formula)->required();
  dec->add_option("--max-worlds", s.max_worlds, "Largest model searched")->check(CLI::Range(1, 6));
  dec->add_flag("--stratified-only", s.stratified_only, "Search stratified frames only");
  dec->add_option("--corpus", s.corpus, "Directory of proof files")->check(CLI::ExistingDirectory);
  dec->add_option("--parallel", s.parallel, "Search threads")->check(CLI::Range(1, 256));
  json_flag(dec);
  dec->callback([&] {
    action = [&] {
      const auto f = parse_formula(s.formula);
      std::string dir = s.corpus.empty() ? TGLP_CORPUS_DIR : s.corpus;
      ProofCorpus corpus;
      if (!dir.empty() && std::filesystem::is_directory(dir)) corpus = load_corpus(dir);
      auto o = decide(f, s.max_worlds, &corpus, {s.stratified_only, s.parallel});
      if (s.json) {
        out << to_json(o).dump() << "\n";
        return 0;
      }
      out << to_string(o.status);
      if (o.status == DecisionStatus::Theorem) {
        out << " (" << o.proof_source << ")\n";
        print_proof(out, *o.proof);
      } else if (o.status == DecisionStatus::NonTheorem) {
        out << "\ncondensed: " << o.condensed.formula.to_string() << "\nworld: " << o.countermodel->world
            << "\nmodel: " << to_json(o.countermodel->model).dump() << "\n";
      } else {
        out << " (no countermodel with at most " << o.bounds->max_worlds << " worlds and " << o.bounds->relations
            << " relations)\n";
      }
      return 0;
    };
  });

  // model
  auto* model = app.add_subcommand("model", "Inspect a model file");
  model->require_subcommand(1);
  auto* validate = model->add_subcommand("validate", "Check the J-frame conditions and stratification");
  validate->add_option("file", s.file)->required();
  json_flag(validate);
  validate->callback([&] {
    action = [&] {
      auto r = validate_j_frame(model_from_json(read_json_file(s.file)));
      if (s.json) {
        out << to_json(r).dump() << "\n";
      } else {
        out << "J-frame: " << (r.is_j_frame ? "yes" : "no") << "\n";
        for (const auto& v : r.violations) {
          out << "violation: condition " << v.condition << " relations";
          for (auto n : v.relations) out << " " << n;
          out << " worlds";
          for (auto w : v.witness) out << " " << w;
          out << "\n";
        }
        if (r.is_j_frame) {
          out << "stratified: " << (r.is_stratified ? "yes" : "no");
          if (auto w = r.stratification_witness)
            out << " (relation " << w->relation << ", worlds " << w->lower << " " << w->upper << ")";
          out << "\n";
        }
      }
      return r.is_j_frame ? 0 : 1;
    };
  });
  auto* mcheck = model->add_subcommand("check", "Evaluate a formula on a model");
  mcheck->add_option("file", s.file)->required();
  mcheck->add_option("formula", s.formula)->required();
  json_flag(mcheck);
  mcheck->callback([&] {
    action = [&] {
      auto m = model_from_json(read_json_file(s.file));
      auto f = parse_formula(s.formula);
      const WorldSet truth = eval(m, f);
      const bool valid = truth == m.all();
      if (s.json) {
        Json worlds = Json::array();
        for (std::size_t w = 0; w < m.world_count(); ++w)
          if (contains(truth, w)) worlds.push_back(w);
        out << Json{{"formula", f.to_string()}, {"truth", worlds}, {"valid", valid}}.dump() << "\n";
      } else {
        out << "truth: " << show_worlds(truth) << "\nvalid: " << (valid ? "yes" : "no") << "\n";
      }
      return 0;
    };
  });

  // solovay
  auto* solovay = app.add_subcommand("solovay", "Simulate Solovay paths");
  solovay->require_subcommand(1);
  auto* srun = solovay->add_subcommand("run", "Run one schedule");
  srun->add_option("model", s.file)->required();
  srun->add_option("schedule", s.schedule_file)->required();
  srun->add_option("--steps", s.steps, "Path length")->required()->check(CLI::Range(1, 1000000));
  json_flag(srun);
  srun->callback([&] {
    action = [&] {
      auto m = model_from_json(read_json_file(s.file));
      auto schedule = schedule_from_json(read_json_file(s.schedule_file));
      auto path = run_path(m, schedule, s.steps);
      auto limit = limit_value(m, schedule);
      if (s.json) {
        out << Json{{"path", path}, {"limit", limit}}.dump() << "\n";
      } else {
        out << "path:";
        for (auto w : path) out << " " << w;
        out << "\nlimit: " << limit << "\n";
      }
      return 0;
    };
  });
  auto* props = solovay->add_subcommand("props", "Check path properties over all small schedules");
  props->add_option("model", s.file)->required();
  props->add_option("--max-events", s.max_events, "Events per schedule")->required()->check(CLI::Range(0, 4));
  props->add_option("--max-steps", s.max_steps, "Events occur at steps below this")->required()->check(
      CLI::Range(1, 64));
  json_flag(props);
  props->callback([&] {
    action = [&] {
      auto m = model_from_json(read_json_file(s.file));
      auto report = check_path_properties(m, all_schedules(m, s.max_events, s.max_steps), s.max_steps + 1);
      if (s.json) {
        out << to_json(report).dump() << "\n";
      } else {
        out << "schedules: " << report.schedules << "\nruns: " << report.runs
            << "\nviolations: " << report.violations.size() << "\n";
        for (const auto& v : report.violations)
          out << "  " << v.property << " (schedule " << v.schedule << "): " << v.detail << "\n";
      }
      return report.ok() ? 0 : 1;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace tglp
