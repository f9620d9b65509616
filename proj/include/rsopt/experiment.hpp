#pragma once

#include <string>
#include <vector>

#include "rsopt/config.hpp"
#include "rsopt/metrics.hpp"
#include "rsopt/switched_ode.hpp"

namespace rsopt {

struct TraceRow {
  long iteration;
  int replication;
  int theta;
  int sampled;
  int estimate;
  double regret;
  double efficiency;  // efficiency loss, 1 - optimal share of occupation
};

struct CheckpointStat {
  long checkpoint = 0;
  double pct = 0.0;  // percentage of replications converged
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

struct AlgorithmResult {
  std::string label;
  std::vector<CheckpointStat> convergence;
  // Time-averaged diagnostics, averaged over replications (+ standard error
  // of the replication mean).
  double mean_eff_loss = 0.0;
  double se_eff_loss = 0.0;
  double mean_est_loss = 0.0;
  double se_est_loss = 0.0;
  long evaluations_per_replication = 0;
  std::vector<TraceRow> trace;  // ordered by (replication, iteration)
};

/// Run every configured algorithm over the configured replications.
/// Deterministic in (config, seed); thread count does not affect results.
std::vector<AlgorithmResult> run_experiment(const ExperimentConfig& cfg);

/// run_experiment plus CSV output. Writes trace.csv (single algorithm) or
/// <label>/trace.csv (several), and convergence.csv when checkpoints exist.
std::vector<AlgorithmResult> run_experiment_to(const ExperimentConfig& cfg,
                                               const std::string& out_dir);

struct Table1CellResult {
  Table1Cell cell;
  std::vector<AlgorithmResult> algorithms;  // AS, RS, UCB in static mode
};

std::vector<Table1CellResult> run_table1(const Table1Config& cfg);
void write_table1_csv(const std::vector<Table1CellResult>& results,
                      const std::string& out_dir);
std::string format_table1(const std::vector<Table1CellResult>& results);

struct SweepPoint {
  double epsilon;
  std::vector<AlgorithmResult> algorithms;
};

std::vector<SweepPoint> run_epsilon_sweep(const SweepConfig& cfg);
/// fig4.csv holds the occupation-based efficiency loss; fig4_estimate.csv
/// the fraction of time the estimate sat outside the optima set.
void write_fig4_csvs(const std::vector<SweepPoint>& points,
                     const std::string& out_dir);

struct OdeCheckPoint {
  double mu;
  double sup_gap;
  double gap_time;
};

/// Ensemble tracking check: interpolated mean regret of the constant-step
/// search against the limit dynamics, one sup-norm gap per step size.
std::vector<OdeCheckPoint> run_ode_check(const OdeCheckConfig& cfg);
void write_ode_check_csv(const std::vector<OdeCheckPoint>& points,
                         const std::string& out_dir);

}  // namespace rsopt
