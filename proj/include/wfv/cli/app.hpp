#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfv/bsc/check.hpp"
#include "wfv/bsc/witness_json.hpp"
#include "wfv/cli/report.hpp"
#include "wfv/encoder/scenario_encoding.hpp"
#include "wfv/ltl/syntax.hpp"
#include "wfv/sat/dimacs.hpp"

namespace wfv::cli {

/// Environment variable naming the external SAT solver executable.
inline constexpr const char* kSolverEnv = "WFV_SAT_SOLVER";
inline constexpr std::size_t kDefaultBound = 20;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

inline sat::SolveResult from_solver_output(const std::string& text, int num_vars) {
  sat::SolverOutput o = sat::parse_solver_output(text, num_vars);
  sat::SolveResult r;
  switch (o.status) {
    case sat::ModelStatus::Satisfiable:
      r.status = sat::Status::Sat;
      r.model = *o.model;
      break;
    case sat::ModelStatus::Unsatisfiable: r.status = sat::Status::Unsat; break;
    case sat::ModelStatus::Unknown: r.status = sat::Status::Unknown; break;
  }
  return r;
}

struct CheckOptions {
  std::string scenario;
  std::string property;
  std::string reach;
  bool reach_accept = false;
  std::optional<std::size_t> bound;
  std::string solver = "internal";
  std::string dimacs_out;
  std::string model_in;
  std::string witness_out;
  bool recheck = false;
  bool json = false;
  std::uint64_t conflict_limit = 0;
  std::uint64_t seed = sat::SolverOptions{}.seed;
  bool literal_exclusion = false;
};

inline nlohmann::ordered_json stats_json(const bsc::CheckStats& s) {
  nlohmann::ordered_json j;
  j["variables"] = s.variables;
  j["clauses"] = s.clauses;
  j["decisions"] = s.decisions;
  j["conflicts"] = s.conflicts;
  j["propagations"] = s.propagations;
  j["encode_ms"] = s.encode_ms;
  j["solve_ms"] = s.solve_ms;
  j["peak_rss_kb"] = peak_rss_kb();
  return j;
}

inline std::string stats_line(const bsc::CheckStats& s) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "stats: variables=%d clauses=%zu decisions=%llu conflicts=%llu encode_ms=%.1f solve_ms=%.1f "
                "peak_rss_kb=%ld\n",
                s.variables, s.clauses, static_cast<unsigned long long>(s.decisions),
                static_cast<unsigned long long>(s.conflicts), s.encode_ms, s.solve_ms, peak_rss_kb());
  return buf;
}

/// Accepts "Act#j" or "A:Act#j"; the activity must belong to the scenario.
inline encoder::PropId reach_target(const encoder::Scenario& s, const std::string& text) {
  auto id = encoder::parse_propid(text.rfind("A:", 0) == 0 ? text : "A:" + text);
  const auto props = encoder::scenario_propositions(s);
  if (!id || id->kind != encoder::PropId::Kind::Activity || !props.count(id->render())) {
    throw UsageError("'" + text + "' is not an activity of the scenario (expected <Activity>#<instance>)");
  }
  return *id;
}

class CheckRun {
 public:
  CheckRun(CheckOptions opt, std::ostream& out, std::ostream& err) : opt_(std::move(opt)), out_(out), err_(err) {}

  int run() {
    const encoder::Scenario scn = encoder::load_scenario(opt_.scenario);
    encoder::EncodeOptions eo;
    eo.literal_exclusion = opt_.literal_exclusion;
    const ltl::Formula system = encoder::encode_scenario(scn, eo).formula();
    const std::size_t k = opt_.bound ? *opt_.bound : scn.bound.value_or(kDefaultBound);
    if (k < 1) throw UsageError("bound must be at least 1");
    warn_schedule(scn, k);

    const int modes = (!opt_.property.empty()) + (!opt_.reach.empty()) + (opt_.reach_accept ? 1 : 0);
    if (modes > 1) throw UsageError("--property, --reach and --reach-accept are mutually exclusive");

    report_["command"] = "check";
    report_["scenario"] = opt_.scenario;
    report_["bound"] = k;
    report_["solver"] = opt_.solver;

    if (!opt_.property.empty()) return check_property(scn, system, k);
    std::vector<encoder::PropId> targets;
    if (!opt_.reach.empty()) targets.push_back(reach_target(scn, opt_.reach));
    if (opt_.reach_accept) {
      targets = scn.accept_targets();
      if (targets.empty()) throw UsageError("scenario has no accept targets");
    }
    if (targets.empty()) return check_plain(system, k);
    int code = kOk;
    for (const auto& t : targets) code = std::max(code, check_reach(system, t, k, targets.size() > 1));
    finish(code);
    return code;
  }

 private:
  void warn_schedule(const encoder::Scenario& s, std::size_t k) {
    auto warn = [&](const std::string& what, std::size_t p) {
      if (p < k) return;
      const std::string msg = "warning: " + what + " at position " + std::to_string(p) +
                              " lies outside the analysed window 0.." + std::to_string(k - 1) + " of bound " +
                              std::to_string(k);
      err_ << msg << "\n";
      report_["warnings"].push_back(msg);
    };
    for (int j = 1; j <= s.instances(); ++j) {
      if (const auto& p = s.starts[static_cast<std::size_t>(j - 1)]) warn("start of instance " + std::to_string(j), *p);
    }
    if (s.reconfig_at) warn("reconfiguration", *s.reconfig_at);
  }

  bsc::SatBackend backend() {
    if (opt_.solver == "internal") {
      sat::SolverOptions so;
      so.conflict_limit = opt_.conflict_limit;
      so.seed = opt_.seed;
      return [this, so](const sat::Cnf& f) {
        export_if_requested(f);
        return sat::solve(f, so);
      };
    }
    if (opt_.solver == "dimacs") {
      if (opt_.model_in.empty() && opt_.dimacs_out.empty()) {
        throw UsageError("--solver dimacs needs --dimacs-out (export) and/or --model-in (import)");
      }
      return [this](const sat::Cnf& f) {
        export_if_requested(f);
        if (opt_.model_in.empty()) throw ExportOnly{};
        return from_solver_output(slurp(opt_.model_in), f.num_vars());
      };
    }
    if (opt_.solver == "external") {
      const char* exe = std::getenv(kSolverEnv);
      if (exe == nullptr || *exe == '\0') throw UsageError(std::string("--solver external needs ") + kSolverEnv);
      const std::string solver = exe;
      return [this, solver](const sat::Cnf& f) {
        std::string path = opt_.dimacs_out;
        if (path.empty()) path = (std::filesystem::temp_directory_path() / "wfv-check.cnf").string();
        spit(path, sat::export_dimacs(f, "wfv bounded encoding"));
        const std::string cmd = shell_quote(solver) + " " + shell_quote(path);
        FILE* pipe = popen(cmd.c_str(), "r");
        if (pipe == nullptr) throw bsc::SolverFailure("cannot start external solver '" + solver + "'");
        std::string text;
        char buf[4096];
        for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
        pclose(pipe);
        try {
          return from_solver_output(text, f.num_vars());
        } catch (const sat::DimacsError& e) {
          throw bsc::SolverFailure(std::string("unreadable external solver output: ") + e.what());
        }
      };
    }
    throw UsageError("unknown solver '" + opt_.solver + "' (internal, dimacs, external)");
  }

  struct ExportOnly {};

  void export_if_requested(const sat::Cnf& f) {
    if (!opt_.dimacs_out.empty()) spit(opt_.dimacs_out, sat::export_dimacs(f, "wfv bounded encoding"));
  }

  /// Runs a check; returns nullopt when only a DIMACS export was requested.
  std::optional<bsc::CheckResult> run_check(const ltl::Formula& phi, std::size_t k) {
    try {
      return bsc::check_sat(phi, k, backend());
    } catch (const ExportOnly&) {
      out_ << "exported CNF to " << opt_.dimacs_out << "; rerun with --model-in to read the solver's answer\n";
      report_["verdict"] = "exported";
      return std::nullopt;
    }
  }

  void show_witness(const ltl::Formula& phi, const ltl::LassoWord& w, nlohmann::ordered_json& rep) {
    if (opt_.recheck) {
      const bool ok = ltl::satisfiable_on(w, phi);
      rep["recheck"] = ok;
      if (!ok) throw bsc::ReplayFailure("recheck: witness does not satisfy the checked formula");
      if (!opt_.json) out_ << "recheck: witness satisfies the checked formula\n";
    }
    rep["witness"] = bsc::witness_to_json(w);
    if (!opt_.witness_out.empty()) spit(opt_.witness_out, bsc::witness_to_string(w));
    if (!opt_.json) out_ << render_trace(w);
  }

  int check_plain(const ltl::Formula& system, std::size_t k) {
    auto r = run_check(system, k);
    if (!r) return finish(kOk);
    report_["stats"] = stats_json(r->stats);
    if (!r->sat()) {
      say("verdict: unsatisfiable within bound " + std::to_string(k));
      report_["verdict"] = "unsat-within-bound";
      if (!opt_.json) out_ << stats_line(r->stats);
      return finish(kNegative);
    }
    say("verdict: satisfiable (witness within bound " + std::to_string(k) + ")");
    report_["verdict"] = "sat";
    if (!opt_.json) out_ << stats_line(r->stats);
    show_witness(system, *r->witness, report_);
    return finish(kOk);
  }

  int check_reach(const ltl::Formula& system, const encoder::PropId& target, std::size_t k, bool multi) {
    const ltl::Formula phi = ltl::conj(system, ltl::eventually(target.atom()));
    auto r = run_check(phi, k);
    if (!r) return kOk;
    nlohmann::ordered_json rep;
    rep["target"] = target.render();
    rep["stats"] = stats_json(r->stats);
    int code;
    if (r->sat()) {
      say("verdict: " + target.render() + " reachable (witness within bound " + std::to_string(k) + ")");
      rep["verdict"] = "reachable";
      if (!opt_.json) out_ << stats_line(r->stats);
      show_witness(phi, *r->witness, rep);
      code = kOk;
    } else {
      say("verdict: " + target.render() + " unreachable within bound " + std::to_string(k));
      rep["verdict"] = "unreachable-within-bound";
      if (!opt_.json) out_ << stats_line(r->stats);
      code = kNegative;
    }
    if (multi) {
      report_["checks"].push_back(std::move(rep));
    } else {
      for (auto& [key, v] : rep.items()) report_[key] = v;
    }
    return code;
  }

  int check_property(const encoder::Scenario& scn, const ltl::Formula& system, std::size_t k) {
    ltl::Formula p;
    try {
      p = ltl::parse(opt_.property);
    } catch (const ltl::SyntaxError& e) {
      throw UsageError(std::string("property: ") + e.what());
    }
    const auto props = encoder::scenario_propositions(scn);
    for (const auto& a : ltl::atoms(p)) {
      if (!props.count(a)) throw UsageError("property mentions unknown proposition '" + a + "'");
    }
    report_["property"] = ltl::to_string(p);
    const ltl::Formula phi = ltl::conj(system, ltl::neg(p));
    auto r = run_check(phi, k);
    if (!r) return finish(kOk);
    report_["stats"] = stats_json(r->stats);
    if (!r->sat()) {
      say("verdict: no counterexample within bound " + std::to_string(k) + " (property holds on all lasso models up to the bound)");
      report_["verdict"] = "no-counterexample-within-bound";
      if (!opt_.json) out_ << stats_line(r->stats);
      // A scenario without models at this bound makes every property hold.
      if (opt_.solver == "internal") {
        const bool vacuous = !bsc::check_sat(system, k, backend()).sat();
        report_["vacuous"] = vacuous;
        if (vacuous) {
          const std::string msg = "warning: the scenario itself has no model within bound " + std::to_string(k) +
                                  "; the verdict is vacuous (runs must end inside the bound, try a larger -k)";
          err_ << msg << "\n";
          report_["warnings"].push_back(msg);
        }
      }
      return finish(kOk);
    }
    say("verdict: counterexample found within bound " + std::to_string(k));
    report_["verdict"] = "counterexample";
    if (!opt_.json) out_ << stats_line(r->stats);
    show_witness(phi, *r->witness, report_);
    return finish(kNegative);
  }

  void say(const std::string& s) {
    if (!opt_.json) out_ << s << "\n";
  }

  int finish(int code) {
    report_["exit_code"] = code;
    if (opt_.json) out_ << report_.dump(2) << "\n";
    return code;
  }

  CheckOptions opt_;
  std::ostream& out_;
  std::ostream& err_;
  nlohmann::ordered_json report_;
};

inline int cmd_validate(const std::string& path, bool json, std::ostream& out) {
  const workflow::WorkflowGraph g = workflow::parse_workflow(slurp(path));
  const auto rep = workflow::validate(g);
  if (json) {
    nlohmann::ordered_json j;
    j["command"] = "validate";
    j["file"] = path;
    j["valid"] = rep.ok();
    j["violations"] = nlohmann::ordered_json::array();
    for (const auto& v : rep.violations) {
      j["violations"].push_back({{"rule", workflow::rule_id(v.rule)}, {"element", v.element}, {"message", v.message}});
    }
    j["exit_code"] = rep.ok() ? kOk : kNegative;
    out << j.dump(2) << "\n";
  } else if (rep.ok()) {
    out << path << ": valid (" << g.nodes().size() << " nodes, " << g.edges().size() << " transitions)\n";
  } else {
    for (const auto& v : rep.violations) out << path << ": " << workflow::rule_id(v.rule) << ": " << v.message << "\n";
  }
  return rep.ok() ? kOk : kNegative;
}

inline int cmd_compile(const std::string& path, const std::string& out_path, const encoder::EncodeOptions& eo,
                       std::ostream& out) {
  const encoder::Scenario scn = encoder::load_scenario(path);
  const auto enc = encoder::encode_scenario(scn, eo);
  std::string text = "# scenario " + std::filesystem::path(path).filename().string() + ": " +
                     std::to_string(scn.instances()) + " instance(s), " +
                     std::to_string(encoder::scenario_propositions(scn).size()) + " propositions, " +
                     std::to_string(enc.conjuncts.size()) + " conjuncts\n";
  text += enc.text();
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    spit(out_path, text);
    out << "wrote " << enc.conjuncts.size() << " conjuncts to " << out_path << "\n";
  }
  return kOk;
}

inline int cmd_trace(const std::string& path, bool json, std::ostream& out) {
  const ltl::LassoWord w = bsc::witness_from_json(slurp(path));
  if (json) {
    out << bsc::witness_to_json(w).dump(2) << "\n";
  } else {
    out << render_trace(w);
  }
  return kOk;
}

}  // namespace detail

/// Entry point shared by the tool and the tests. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Reconfigurable workflow verifier: validate, compile to LTL with past, bounded satisfiability checks",
               "wfv"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string file;
  bool json = false;

  auto* validate = app.add_subcommand("validate", "Check a workflow file for structural well-formedness");
  validate->add_option("workflow", file, "Workflow file")->required();
  validate->add_flag("--json", json, "Machine-readable report");

  std::string out_path;
  encoder::EncodeOptions eo;
  auto* compile = app.add_subcommand("compile", "Translate a scenario into an annotated LTL formula");
  compile->add_option("scenario", file, "Scenario file")->required();
  compile->add_option("-o,--out", out_path, "Output file (default: stdout)");
  compile->add_flag("--literal-exclusion", eo.literal_exclusion, "Use !(e1 && ... && en) for configuration exclusion");
  compile->add_flag("--verbatim-reconfig", eo.verbatim_reconfiguration,
                    "Emit the printed configuration-selection implications (comparison only)");

  detail::CheckOptions co;
  std::size_t bound = 0;
  auto* check = app.add_subcommand("check", "Bounded satisfiability / property check of a scenario");
  check->add_option("scenario", co.scenario, "Scenario file")->required();
  check->add_option("-p,--property", co.property, "Property P in LTL syntax; looks for a model of S && !P");
  check->add_option("--reach", co.reach, "Activity as <name>#<instance>; looks for a model of S && F activity");
  check->add_flag("--reach-accept", co.reach_accept, "Reachability of every accept target of the scenario");
  auto* bound_opt = check->add_option("-k,--bound", bound, "Bound k: positions 0..k (default: scenario, else 20)")
                        ->check(CLI::PositiveNumber);
  check->add_option("--solver", co.solver, "internal | dimacs | external (uses $" + std::string(kSolverEnv) + ")")
      ->check(CLI::IsMember({"internal", "dimacs", "external"}));
  check->add_option("--dimacs-out", co.dimacs_out, "Write the CNF in DIMACS format");
  check->add_option("--model-in", co.model_in, "Read a SAT-competition model (with --solver dimacs)");
  check->add_option("--witness-out", co.witness_out, "Write the witness as JSON");
  check->add_flag("--recheck", co.recheck, "Replay the witness through the reference evaluator once more");
  check->add_flag("--json", co.json, "Machine-readable report");
  check->add_option("--conflict-limit", co.conflict_limit, "Give up after this many conflicts (0 = none)");
  check->add_option("--seed", co.seed, "Seed of the internal solver's branching order");
  check->add_flag("--literal-exclusion", co.literal_exclusion, "As for compile");

  auto* trace = app.add_subcommand("trace", "Render a stored witness as a table");
  trace->add_option("witness", file, "Witness JSON file")->required();
  trace->add_flag("--json", json, "Re-emit the normalized witness JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "wfv: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << "run 'wfv " << app.get_subcommands().front()->get_name() << " --help'\n";
    return kUsage;
  }

  try {
    if (validate->parsed()) return detail::cmd_validate(file, json, out);
    if (compile->parsed()) return detail::cmd_compile(file, out_path, eo, out);
    if (check->parsed()) {
      if (bound_opt->count() > 0) co.bound = bound;
      return detail::CheckRun(co, out, err).run();
    }
    if (trace->parsed()) return detail::cmd_trace(file, json, out);
  } catch (const UsageError& e) {
    err << "wfv: " << e.what() << "\n";
    return kUsage;
  } catch (const encoder::ScenarioError& e) {
    err << "wfv: " << e.what() << "\n";
    return kUsage;
  } catch (const workflow::ParseError& e) {
    err << "wfv: " << file << ":" << e.what() << "\n";
    return kUsage;
  } catch (const bsc::WitnessFormatError& e) {
    err << "wfv: " << e.what() << "\n";
    return kUsage;
  } catch (const sat::DimacsError& e) {
    err << "wfv: model file: " << e.what() << "\n";
    return kUsage;
  } catch (const bsc::SolverFailure& e) {
    err << "wfv: solver failure: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "wfv: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace wfv::cli
