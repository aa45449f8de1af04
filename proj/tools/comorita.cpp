#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "comorita/cli.hpp"

namespace cli = comorita::cli;

int main(int argc, char** argv) {
  CLI::App app{"Batch verifier for coalgebras, comodules and Morita contexts"};
  std::string command, file, report;
  std::vector<std::string> args;
  long seed = 0;
  bool render = false;
  cli::Options opt;

  std::string names;
  for (const auto& c : cli::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("file", file, "definition file (.ct)")->required()->check(CLI::ExistingFile);
  app.add_option("names", args, "entities the command acts on");
  app.add_option("--report", report, "write the JSON report to this path");
  app.add_option("--probes", opt.probes, "probe family: standard, standard:k or none")->capture_default_str();
  app.add_option("--tests", opt.tests, "extra test comodules for equivalence")->delimiter(',');
  auto* seed_opt = app.add_option("--seed", seed, "recorded in the report");
  app.add_option("--max-rank", opt.max_rank, "reject entities larger than this")->capture_default_str();
  app.add_flag("--timings", opt.timings, "include wall-clock timings in the report");
  app.add_flag("--render", render, "print the canonical form of the file and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*seed_opt) opt.seed = seed;

  std::ifstream in(file);
  std::stringstream buf;
  buf << in.rdbuf();

  if (render) {
    try {
      std::cout << cli::render(cli::parse(buf.str()));
      return 0;
    } catch (const comorita::Error& e) {
      std::cerr << file << ": " << e.what() << "\n";
      return 2;
    }
  }

  cli::Outcome out = cli::run(command, buf.str(), file, args, opt);
  std::cout << out.summary;
  if (!report.empty()) {
    std::ofstream o(report);
    if (!o) {
      std::cerr << "cannot write report to " << report << "\n";
      return 2;
    }
    o << out.report.dump(2) << "\n";
  }
  return out.exit_code;
}
