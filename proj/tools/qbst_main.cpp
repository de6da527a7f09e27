#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "qbst/error.hpp"
#include "qbst/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact BCR/DCR solver and decomposer for quasi-bipartite Steiner tree instances"};

  std::string command = "full-pipeline";
  std::string output;
  bool serial = false;
  qbst::RunConfig config;
  app.add_option("--command", command, "solve-bcr | decompose | sample | oracle-check | full-pipeline")
      ->check(CLI::IsMember({"solve-bcr", "decompose", "sample", "oracle-check", "full-pipeline"}));
  app.add_option("--input", config.input_path, "STP instance file ('-' for stdin)")->required();
  app.add_option("--seed", config.seed, "sampler seed");
  app.add_option("--trials", config.trials, "sampling trials")->check(CLI::PositiveNumber);
  app.add_option("--oracle-limit", config.oracle_limit, "max terminals for exhaustive checks")
      ->check(CLI::Range(0, qbst::kMaxOracleLimit));
  app.add_flag("--trace", config.trace, "include the per-step decomposition trace");
  app.add_option("--output", output, "report path (default stdout)");
  app.add_flag("--json", config.json, "emit the report as JSON");
  app.add_flag("--serial", serial, "use the serial reference kernels");

  CLI11_PARSE(app, argc, argv);
  config.command = qbst::parse_command(command);
  config.execution = serial ? qbst::Execution::serial : qbst::Execution::parallel;

  const qbst::RunOutcome outcome = qbst::run(config);
  if (output.empty()) {
    std::cout << outcome.report;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write '" << output << "'\n";
      return 1;
    }
    out << outcome.report;
  }
  return outcome.exit_code;
}
