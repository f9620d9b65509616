#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rsopt/config.hpp"
#include "rsopt/csv.hpp"
#include "rsopt/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int reps = 0;
  int threads = -1;
  bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--seed", opts.seed, "base seed override")
      ->each([&](const std::string&) { opts.has_seed = true; });
  cmd->add_option("--reps", opts.reps, "replication count override");
  cmd->add_option("--threads", opts.threads,
                  "worker threads (1 = serial, 0 = all cores)");
}

void apply_overrides(rsopt::RunConfig& run, const CommonOptions& opts) {
  if (opts.has_seed) run.seed = opts.seed;
  if (opts.reps > 0) run.replications = opts.reps;
  if (opts.threads >= 0) run.threads = opts.threads;
}

void print_results(const std::vector<rsopt::AlgorithmResult>& results) {
  for (const rsopt::AlgorithmResult& r : results) {
    std::cout << r.label << ": mean efficiency loss "
              << rsopt::format_g9(r.mean_eff_loss) << " (se "
              << rsopt::format_g9(r.se_eff_loss) << "), estimate outside optima "
              << rsopt::format_g9(r.mean_est_loss) << " of the time\n";
    for (const rsopt::CheckpointStat& s : r.convergence) {
      std::cout << "  n=" << s.checkpoint << ": " << rsopt::format_g9(s.pct)
                << "% converged [" << rsopt::format_g9(s.ci_lo) << ", "
                << rsopt::format_g9(s.ci_hi) << "]\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regime-switching discrete stochastic optimization harness"};
  app.require_subcommand(1);

  CommonOptions run_opts, table_opts, ex2_opts, ode_opts;
  CLI::App* cmd_run = app.add_subcommand("run", "run a configured experiment");
  add_common(cmd_run, run_opts);
  CLI::App* cmd_table = app.add_subcommand("table1", "convergence-rate table");
  add_common(cmd_table, table_opts);
  CLI::App* cmd_ex2 = app.add_subcommand(
      "example2", "regime-switching scenario and epsilon sweep");
  add_common(cmd_ex2, ex2_opts);
  bool sweep_only = false;
  cmd_ex2->add_flag("--sweep-only", sweep_only, "skip the scripted-jump run");
  CLI::App* cmd_ode =
      app.add_subcommand("ode-check", "tracking check against limit dynamics");
  add_common(cmd_ode, ode_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      rsopt::ExperimentConfig cfg =
          rsopt::load_experiment_config(run_opts.config_path);
      apply_overrides(cfg.run, run_opts);
      const auto results = rsopt::run_experiment_to(cfg, run_opts.out_dir);
      print_results(results);
    } else if (cmd_table->parsed()) {
      rsopt::Table1Config cfg =
          rsopt::load_table1_config(table_opts.config_path);
      apply_overrides(cfg.run, table_opts);
      const auto results = rsopt::run_table1(cfg);
      rsopt::write_table1_csv(results, table_opts.out_dir);
      std::cout << rsopt::format_table1(results);
    } else if (cmd_ex2->parsed()) {
      if (!sweep_only) {
        rsopt::ExperimentConfig cfg =
            rsopt::load_experiment_config(ex2_opts.config_path);
        apply_overrides(cfg.run, ex2_opts);
        const auto results = rsopt::run_experiment_to(cfg, ex2_opts.out_dir);
        print_results(results);
      }
      rsopt::SweepConfig sweep =
          rsopt::sweep_from_experiment_file(ex2_opts.config_path);
      if (ex2_opts.threads >= 0) sweep.run.threads = ex2_opts.threads;
      if (ex2_opts.has_seed) sweep.run.seed = ex2_opts.seed;
      const auto points = rsopt::run_epsilon_sweep(sweep);
      rsopt::write_fig4_csvs(points, ex2_opts.out_dir);
      for (const rsopt::SweepPoint& p : points) {
        std::cout << "epsilon=" << rsopt::format_g9(p.epsilon) << ":";
        for (const rsopt::AlgorithmResult& r : p.algorithms)
          std::cout << "  " << r.label << " "
                    << rsopt::format_g9(r.mean_eff_loss);
        std::cout << '\n';
      }
    } else if (cmd_ode->parsed()) {
      rsopt::OdeCheckConfig cfg =
          rsopt::load_ode_check_config(ode_opts.config_path);
      if (ode_opts.has_seed) cfg.seed = ode_opts.seed;
      if (ode_opts.reps > 0) cfg.replications = ode_opts.reps;
      if (ode_opts.threads >= 0) cfg.threads = ode_opts.threads;
      const auto points = rsopt::run_ode_check(cfg);
      rsopt::write_ode_check_csv(points, ode_opts.out_dir);
      bool decreasing = true;
      for (std::size_t i = 1; i < points.size(); ++i)
        decreasing = decreasing && points[i].sup_gap < points[i - 1].sup_gap;
      for (const rsopt::OdeCheckPoint& p : points)
        std::cout << "mu=" << rsopt::format_g9(p.mu) << ": sup gap "
                  << rsopt::format_g9(p.sup_gap) << " at t="
                  << rsopt::format_g9(p.gap_time) << '\n';
      std::cout << (decreasing ? "PASS" : "FAIL")
                << ": sup gap decreasing across the mu sweep\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
