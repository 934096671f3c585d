#include <rwre/harness/run.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t trials = 0;
  bool trials_set = false;
  std::uint64_t env_trials = 0;
  bool env_trials_set = false;
  std::uint64_t step_cap = 0;
  bool step_cap_set = false;
  int threads = 0;
  bool threads_set = false;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment config");
  cmd->add_option("--out", f.out_path, "output file path");
  cmd->add_option("--format", f.format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--seed", f.seed, "master seed")->each([&](const std::string&) { f.seed_set = true; });
  cmd->add_option("--trials", f.trials, "Monte Carlo trials")
      ->each([&](const std::string&) { f.trials_set = true; });
  cmd->add_option("--env-trials", f.env_trials, "environments sampled")
      ->each([&](const std::string&) { f.env_trials_set = true; });
  cmd->add_option("--step-cap", f.step_cap, "walk step cap")
      ->each([&](const std::string&) { f.step_cap_set = true; });
  cmd->add_option("--threads", f.threads, "worker threads")
      ->each([&](const std::string&) { f.threads_set = true; });
  cmd->add_flag("--strict", f.strict, "exit 2 when a checked condition fails");
}

int run_command(const std::string& name, const CommonFlags& f) {
  nlohmann::json doc = nlohmann::json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << f.config_path << "\n";
      return 1;
    }
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: config parse: " << e.what() << "\n";
      return 1;
    }
  }
  // CLI flags override config fields.
  if (f.seed_set) doc["seed"] = f.seed;
  if (f.trials_set) doc["trials"] = f.trials;
  if (f.env_trials_set) doc["env_trials"] = f.env_trials;
  if (f.step_cap_set) doc["step_cap"] = f.step_cap;
  if (f.threads_set) doc["threads"] = f.threads;
  if (f.strict) doc["strict"] = true;

  try {
    const rwre::harness::ExperimentConfig config = rwre::harness::parse_config(name, doc);
    const rwre::harness::RunOutcome outcome = rwre::harness::run(config);

    if (!f.out_path.empty()) {
      if (f.format == "jsonl") {
        rwre::harness::export_jsonl(outcome.records, f.out_path);
      } else {
        rwre::harness::export_csv(outcome.records, f.out_path);
      }
    }
    std::cout << rwre::harness::csv_header() << "\n";
    for (const auto& r : outcome.records) std::cout << rwre::harness::csv_row(r) << "\n";

    if (config.strict && outcome.verdict_failure) {
      std::cerr << "strict: a checked condition did not pass\n";
      return 2;
    }
    return 0;
  } catch (const rwre::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const rwre::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-scale toolkit for random walks in random environments"};
  app.require_subcommand(1);

  std::vector<std::pair<std::string, std::string>> subs = {
      {"solomon", "1D transience/speed classification from closed-form moments"},
      {"simulate", "quenched trajectory simulation summary"},
      {"exit-prob", "exact quenched exit split on a finite region"},
      {"check-pbox", "finite-box polynomial condition check"},
      {"decay", "backtracking probability curve over L"},
      {"slab-decay", "wide-slab non-frontal exit estimate and effective exponent"},
      {"rho", "E[rho^a] over sampled environments (optional decomposition)"},
      {"effective-criterion", "finite-box criterion minimization"},
      {"schedule", "scale-dependent parameter schedule"},
      {"audit-constants", "constant recursion audit"},
      {"renorm", "good-box probability experiment"},
      {"coloring", "anchor colouring with disjointness verification"},
      {"quenched-tail", "atypical quenched exit tail experiment"},
      {"binomial-bound", "exact binomial tail against e/k!"},
  };

  std::vector<std::unique_ptr<CommonFlags>> flags;
  for (const auto& [name, desc] : subs) {
    auto f = std::make_unique<CommonFlags>();
    CLI::App* cmd = app.add_subcommand(name, desc);
    add_common(cmd, *f);
    CommonFlags* fp = f.get();
    const std::string cmd_name = name;
    cmd->callback([cmd_name, fp] { std::exit(run_command(cmd_name, *fp)); });
    flags.push_back(std::move(f));
  }

  CLI11_PARSE(app, argc, argv);
  return 0;
}
