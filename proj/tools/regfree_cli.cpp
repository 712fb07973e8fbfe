#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "regfree/error.hpp"
#include "regfree/job.hpp"

using namespace regfree;

int main(int argc, char** argv) {
  CLI::App app{"Regular subsets of free groups: Stallings graphs, transversals, measures"};
  app.require_subcommand(0, 1);
  JobSpec job;
  std::string job_file, k_range;
  bool compact = false;
  std::vector<std::string> relative;

  app.add_option("--job", job_file, "Run a JSON job file");
  app.add_option("-m,--rank", job.rank, "Rank of the free group")->capture_default_str();
  app.add_option("--k", k_range, "Length range A..B");
  app.add_option("--s", job.s_values, "Stopping probabilities, comma separated")->delimiter(',');
  app.add_option("--seed", job.seed, "RNG seed")->capture_default_str();
  app.add_flag("--json", compact, "Print JSON on one line");
  app.add_option("--dot", job.dot, "Write a Graphviz file");
  app.add_option("--limit", job.limit, "Maximum number of listed items")->capture_default_str();

  auto* stallings = app.add_subcommand("stallings", "Stallings graph of a subgroup");
  stallings->add_option("generators", job.generators, "Generators")->required();

  auto* transversal = app.add_subcommand("transversal", "Schreier transversal representatives");
  transversal->add_option("generators", job.generators, "Generators")->required();
  transversal->add_option("--tree-index", job.tree_index, "Spanning tree index instead of the geodesic tree");
  transversal->add_option("--max-len", job.max_len, "Maximum representative length");

  auto* classify = app.add_subcommand("classify", "Thick or exponentially negligible");
  classify->add_option("set", job.set, "Set expression");
  classify->add_option("--relative", relative, "L=expr R=expr")->expected(2);

  auto* measure = app.add_subcommand("measure", "fk | mu | lambda | mu01 | lambdaL | star");
  measure->add_option("which", job.which, "Quantity")->required();
  measure->add_option("set", job.set, "Set expression")->required();
  measure->add_option("--ambient", job.ambient, "Ambient prefix-closed set L");

  auto* sample = app.add_subcommand("sample", "ws | w0 random walks");
  sample->add_option("which", job.which, "Walk")->required();
  sample->add_option("-N,--samples", job.samples, "Number of samples");
  sample->add_option("--max-len", job.max_len, "Cut-off for w0");

  for (auto* sub : {stallings, transversal, classify, measure, sample}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!job_file.empty()) {
      std::ifstream in(job_file);
      if (!in) throw InputError("cannot open " + job_file);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(job_file + ": " + e.what(), e.byte);
      }
      job = job_from_json(j);
    } else {
      if (!app.get_subcommands().empty()) job.command = app.get_subcommands().front()->get_name();
      if (job.command.empty()) throw InputError("no command given (see --help)");
      if (!k_range.empty()) std::tie(job.k_min, job.k_max) = parse_k_range(k_range);
      for (const auto& r : relative) {
        if (r.rfind("L=", 0) == 0) job.ambient = r.substr(2);
        else if (r.rfind("R=", 0) == 0) job.set = r.substr(2);
        else throw ParseError("--relative expects L=expr and R=expr", 0);
      }
      if (job.command == "classify" && job.set.empty()) throw InputError("classify needs a set expression");
    }
    nlohmann::json report = run_job(job);
    std::cout << (compact ? report.dump() : report.dump(2)) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
