#include "qbst/pipeline.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "qbst/bcr.hpp"
#include "qbst/decompose.hpp"
#include "qbst/error.hpp"
#include "qbst/oracle.hpp"
#include "qbst/sampler.hpp"
#include "qbst/stp.hpp"

namespace qbst {

namespace {

using Json = nlohmann::ordered_json;

int log_level() {
  const char* env = std::getenv("QBST_LOG");
  if (env == nullptr) return 0;
  const std::string value(env);
  if (value == "debug" || value == "2") return 2;
  if (value == "info" || value == "1") return 1;
  return 0;
}

void log(int level, const std::string& message) {
  static const int configured = log_level();
  if (level <= configured) std::cerr << "[qbst] " << message << '\n';
}

// Report ids are 1-based, matching the STP input.
int ext(VertexId v) { return v + 1; }

Json ext_set(const VertexSet& s) {
  Json out = Json::array();
  for (VertexId v : s) out.push_back(ext(v));
  return out;
}

Json component_json(const DirectedFullComponent& k, const Rational& weight) {
  Json c;
  c["centre"] = k.centre ? Json(ext(*k.centre)) : Json(nullptr);
  c["sink"] = ext(k.sink);
  c["sources"] = ext_set(k.sources);
  c["weight"] = to_string(weight);
  c["cost"] = to_string(k.cost);
  return c;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ' ';
      out += scalar_text(e);
    }
    return "[" + out + "]";
  }
  return v.dump();
}

void render_text(const Json& node, const std::string& prefix, std::ostringstream& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      render_text(value, name, out);
    } else if (value.is_array() && !value.empty() && value.front().is_object()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        out << name << '[' << i << "]:";
        for (const auto& [k, v] : value[i].items()) out << ' ' << k << '=' << scalar_text(v);
        out << '\n';
      }
    } else {
      out << name << ": " << scalar_text(value) << '\n';
    }
  }
}

std::string read_input(const RunConfig& config) {
  if (config.input_text) return *config.input_text;
  if (config.input_path.empty() || config.input_path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(config.input_path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + config.input_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json trace_lines(const std::string& text) {
  Json out = Json::array();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json rec = Json::parse(line);
    Json shifted;
    shifted["centre"] = rec["centre"].is_null() ? Json(nullptr) : Json(rec["centre"].get<int>() + 1);
    shifted["sink"] = rec["sink"].get<int>() + 1;
    Json sources = Json::array();
    for (const auto& s : rec["sources"]) sources.push_back(s.get<int>() + 1);
    shifted["sources"] = sources;
    shifted["lambda"] = rec["lambda"];
    shifted["kind"] = rec["kind"];
    out.push_back(shifted);
  }
  return out;
}

struct Breach {
  std::string what;
};

void run_pipeline(const RunConfig& config, Json& report) {
  const Instance inst = parse_stp(read_input(config));
  const Digraph dg = bidirect(inst);
  report["instance"] = Json{{"vertices", inst.vertex_count()},
                            {"edges", inst.edges().size()},
                            {"terminals", inst.terminals().size()},
                            {"root", ext(inst.root())}};
  log(1, "instance: " + std::to_string(inst.vertex_count()) + " vertices, " +
             std::to_string(inst.edges().size()) + " edges");

  const bool wants_oracle = config.command == Command::oracle_check ||
                            config.command == Command::full_pipeline;
  const auto terminal_count = static_cast<int>(inst.terminals().size());
  if (config.command == Command::oracle_check && terminal_count > config.oracle_limit) {
    throw Error(ErrorCode::TooLarge, std::to_string(terminal_count) +
                                         " terminals exceed the oracle limit of " +
                                         std::to_string(config.oracle_limit));
  }

  BcrOptions bcr_options;
  bcr_options.execution = config.execution;
  const BcrSolution bcr = solve_bcr(dg, bcr_options);
  log(1, "bcr value " + to_string(bcr.objective_value) + " after " + std::to_string(bcr.lp_rounds) +
             " LP rounds");
  Json arcs = Json::array();
  for (const auto& [a, value] : bcr.x.entries()) {
    arcs.push_back(Json{{"tail", ext(dg.arc(a).tail)}, {"head", ext(dg.arc(a).head)}, {"x", to_string(value)}});
  }
  report["bcr"] = Json{{"value", to_string(bcr.objective_value)},
                       {"lp_rounds", bcr.lp_rounds},
                       {"cuts", bcr.generated_cuts.size()},
                       {"minimal", bcr.is_minimal},
                       {"arcs", arcs}};
  if (config.command == Command::solve_bcr) return;

  std::optional<DecomposeResult> deco;
  if (config.command != Command::sample) {
    std::ostringstream trace;
    DecomposeOptions options;
    options.execution = config.execution;
    if (config.trace) options.trace = &trace;
    deco = decompose(bcr.x, dg, options);
    Json comps = Json::array();
    for (const auto& [k, weight] : deco->y.entries()) comps.push_back(component_json(k, weight));
    const auto m = inst.edges().size();
    const auto n = static_cast<std::size_t>(inst.vertex_count());
    report["decomposition"] = Json{{"components", comps},
                                   {"component_count", deco->y.size()},
                                   {"cost", to_string(deco->y.cost())},
                                   {"iterations", deco->iterations},
                                   {"saturating_steps", deco->saturating_steps},
                                   {"step_bound", 10 * m * n}};
    if (config.trace) report["trace"] = trace_lines(trace.str());
    log(1, "decomposition: " + std::to_string(deco->y.size()) + " components in " +
               std::to_string(deco->iterations) + " steps");
  }

  if (wants_oracle) {
    if (terminal_count > config.oracle_limit) {
      report["oracle"] = Json{{"verdict", "SKIPPED"},
                              {"reason", "terminal count above oracle limit"}};
    } else {
      const DcrSolution dcr = solve_dcr_bruteforce(dg);
      const bool value_equal = dcr.value == bcr.objective_value;
      const bool phi_equal = phi(deco->y, dg) == bcr.x;
      const bool cost_equal = deco->y.cost() == bcr.x.cost(dg);
      const FeasibilityReport feas = check_feasible_dcr(dg, deco->y);
      const bool distribution = verify_distribution(bcr.x, deco->y, dg);
      const bool pass = value_equal && phi_equal && cost_equal && feas.feasible && distribution;
      Json oracle{{"dcr_value", to_string(dcr.value)},
                  {"value_equal", value_equal},
                  {"phi_equal", phi_equal},
                  {"cost_equal", cost_equal},
                  {"dcr_feasible", feas.feasible},
                  {"distribution_identity", distribution},
                  {"verdict", pass ? "PASS" : "FAIL"}};
      if (feas.violated) oracle["violated_set"] = ext_set(*feas.violated);
      report["oracle"] = oracle;
      if (!pass) throw Breach{"oracle verdict FAIL"};
    }
  }

  if (config.command == Command::sample || config.command == Command::full_pipeline) {
    const SamplingPlan plan = build_plan(bcr.x, inst, dg, config.seed);
    const auto trees = sample_trials(plan, inst, static_cast<std::size_t>(config.trials), config.execution);
    Rational total = 0;
    Rational best;
    Rational worst;
    int retries = 0;
    Json rows = Json::array();
    for (std::size_t i = 0; i < trees.size(); ++i) {
      const SampledTree& t = trees[i];
      total += t.cost;
      if (i == 0 || t.cost < best) best = t.cost;
      if (i == 0 || t.cost > worst) worst = t.cost;
      retries += t.retries;
      Json sampled = Json::array();
      for (VertexId v : t.sampled_vertices) sampled.push_back(ext(v));
      Json row{{"trial", i}, {"rounds", plan.rounds}, {"retries", t.retries},
               {"sampled", sampled}, {"cost", to_string(t.cost)}};
      row["ratio_display"] = bcr.objective_value > 0 ? to_decimal(t.cost / bcr.objective_value, 6) : "-";
      rows.push_back(row);
    }
    const Rational mean = trees.empty() ? Rational(0) : Rational(total / static_cast<long>(trees.size()));
    Json masses = Json::array();
    for (const auto& [v, mass] : plan.mass_per_centre) masses.push_back(Json{{"centre", ext(v)}, {"mass", to_string(mass)}});
    Json sampling{{"seed", plan.seed},
                  {"total_mass", to_string(plan.total_mass)},
                  {"rounds", plan.rounds},
                  {"trials", trees.size()},
                  {"mean_cost", to_string(mean)},
                  {"min_cost", trees.empty() ? "-" : to_string(best)},
                  {"max_cost", trees.empty() ? "-" : to_string(worst)},
                  {"retries", retries}};
    sampling["mean_ratio_display"] =
        bcr.objective_value > 0 ? to_decimal(mean / bcr.objective_value, 6) : "-";
    sampling["masses"] = masses;
    sampling["trial_rows"] = rows;
    report["sampling"] = sampling;
  }
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "solve-bcr") return Command::solve_bcr;
  if (name == "decompose") return Command::decompose;
  if (name == "sample") return Command::sample;
  if (name == "oracle-check") return Command::oracle_check;
  if (name == "full-pipeline") return Command::full_pipeline;
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + std::string(name) + "'");
}

std::string_view command_name(Command command) {
  switch (command) {
    case Command::solve_bcr: return "solve-bcr";
    case Command::decompose: return "decompose";
    case Command::sample: return "sample";
    case Command::oracle_check: return "oracle-check";
    case Command::full_pipeline: return "full-pipeline";
  }
  return "unknown";
}

RunOutcome run(const RunConfig& config) {
  Json report;
  report["command"] = std::string(command_name(config.command));
  report["status"] = "ok";
  RunOutcome outcome;
  try {
    if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
    if (config.oracle_limit < 0 || config.oracle_limit > kMaxOracleLimit) {
      throw Error(ErrorCode::InvalidArgument,
                  "oracle limit must lie in [0, " + std::to_string(kMaxOracleLimit) + "]");
    }
    run_pipeline(config, report);
  } catch (const Error& e) {
    const bool breach = e.code() == ErrorCode::NoFeasibleComponent || e.code() == ErrorCode::InvariantBreach;
    outcome.exit_code = breach ? 2 : 1;
    report["status"] = "error";
    report["error"] = Json{{"code", std::string(code_name(e.code()))}, {"message", e.what()}};
  } catch (const Breach& b) {
    outcome.exit_code = 2;
    report["status"] = "error";
    report["error"] = Json{{"code", "InvariantBreach"}, {"message", b.what}};
  }
  report["exit_code"] = outcome.exit_code;

  if (config.json) {
    outcome.report = report.dump(2) + "\n";
  } else {
    std::ostringstream out;
    render_text(report, "", out);
    outcome.report = out.str();
  }
  return outcome;
}

}  // namespace qbst
