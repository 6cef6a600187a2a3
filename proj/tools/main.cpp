// otm-experiments: reproducible checks for the QRAC one-time-memory construction.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "otm/error.hpp"
#include "otm/experiments.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::vector<std::size_t> n_values;
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> generations_max;
  std::optional<double> grid_step;
  std::optional<std::size_t> trials;
  std::optional<double> constraint_threshold;
  std::optional<std::string> output_dir;
};

void add_config_flags(CLI::App* sub, std::string& config_path, Overrides& o, otm::RunOptions& run) {
  sub->add_option("--config", config_path, "JSON config file");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--n-values", o.n_values, "Qubit counts")->delimiter(',');
  sub->add_option("--restarts", o.restarts, "Multistart restarts");
  sub->add_option("--generations-max", o.generations_max, "Differential evolution generation cap");
  sub->add_option("--grid-step", o.grid_step, "Certification grid step");
  sub->add_option("--trials", o.trials, "Monte Carlo trials");
  sub->add_option("--constraint-threshold", o.constraint_threshold, "Recovery threshold for the first bit");
  sub->add_option("--output-dir", o.output_dir, "Output directory");
  sub->add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);
  sub->add_flag("--timing", run.timing, "Record wall times in outputs");
}

otm::ExperimentConfig build_config(const std::string& config_path, const Overrides& o) {
  otm::ExperimentConfig c;
  if (const char* env = std::getenv(otm::kOutputDirEnv); env && *env) c.output_dir = env;
  if (!config_path.empty()) {
    otm::Json j;
    try {
      j = otm::Json::parse(otm::read_text_file(config_path));
    } catch (const nlohmann::json::exception& e) {
      throw otm::Error(otm::ErrorCode::InvalidArgument, config_path + ": " + e.what());
    }
    c = otm::config_from_json(j, c);
  }
  if (o.seed) c.seed = *o.seed;
  if (!o.n_values.empty()) c.n_values = o.n_values;
  if (o.restarts) c.restarts = *o.restarts;
  if (o.generations_max) c.generations_max = *o.generations_max;
  if (o.grid_step) c.grid_step = *o.grid_step;
  if (o.trials) c.trials = *o.trials;
  if (o.constraint_threshold) c.constraint_threshold = *o.constraint_threshold;
  if (o.output_dir) c.output_dir = *o.output_dir;
  otm::validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducible checks for the QRAC one-time-memory construction"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  otm::RunOptions run;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"qrac-check", "Decode probabilities of the 2-to-1 QRAC"},
      {"optimize", "Solve the disturbance program with both solvers"},
      {"certify", "Grid search and random sampling of the disturbance bound"},
      {"correctness", "Exact and simulated honest-read success"},
      {"adversary", "Product attacks, proof constants and simulator experiment"},
      {"tails", "Monte Carlo check of the supermartingale tail bound"},
      {"report", "Aggregate statuses into manifest.json and report.txt"},
  };
  for (const auto& [name, help] : commands) add_config_flags(app.add_subcommand(name, help), config_path, overrides, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : otm::kExitIo;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    const otm::ExperimentConfig config = build_config(config_path, overrides);
    const otm::CommandResult r = otm::run_command(name, config, run);
    for (const auto& f : r.findings) std::cerr << "FINDING: " << f << "\n";
    for (const auto& n : r.notes) std::cout << n << "\n";
    for (const auto& o : r.outputs) std::cout << "wrote " << config.output_dir << "/" << o << "\n";
    std::cout << name << ": " << (r.exit_code == otm::kExitPass ? "PASS" : "FAIL") << "\n";
    return r.exit_code;
  } catch (const otm::Error& e) {
    std::cerr << name << ": error: " << e.what() << "\n";
    return otm::kExitIo;
  } catch (const std::exception& e) {
    std::cerr << name << ": error: " << e.what() << "\n";
    return otm::kExitIo;
  }
}
