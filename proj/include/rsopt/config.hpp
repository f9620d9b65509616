#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rsopt/algorithms.hpp"
#include "rsopt/problems.hpp"

namespace rsopt {

struct ProblemConfig {
  enum class Type { kPoisson, kTable };
  Type type = Type::kPoisson;

  // Poisson order sizing.
  std::vector<double> lambda{1.0};
  int states = 11;

  // Mean table with optional AR(1) noise.
  std::vector<std::vector<double>> means;
  double phi = 0.0;
  double sigma_w = 0.0;

  int num_states() const;
  int num_regimes() const;
  std::unique_ptr<ObjectiveModel> make() const;
};

/// Deterministic regime script: regime of segment k applies to 0-based
/// iterations n < until; the last segment is open-ended.
struct ScriptSegment {
  long until = -1;  // -1 = open
  int regime = 0;
};

struct HypermodelConfig {
  std::vector<std::vector<double>> generator;
  double epsilon = 0.01;
  std::vector<double> initial_dist;  // empty = uniform
  std::vector<ScriptSegment> script; // non-empty = scripted path, no sampling

  bool scripted() const { return !script.empty(); }
  int scripted_regime(long n) const;
};

struct AlgorithmConfig {
  enum class Name { kAdaptiveSearch, kRandomSearch, kUcb };
  enum class Mode {
    kConstant,    // AS: fixed mu and gamma
    kDecreasing,  // AS: mu_n = 1/(n+1); gamma_n = n^-alpha or fixed_gamma
    kStatic,      // RS/UCB: undiscounted counts
    kAdaptive     // RS/UCB: weights discounted by (1 - mu)
  };

  Name name = Name::kAdaptiveSearch;
  Mode mode = Mode::kConstant;
  double mu = 0.01;
  double gamma = 0.1;
  double alpha = 0.2;
  double fixed_gamma = 0.0;  // decreasing AS: pin gamma when > 0
  std::string label;

  std::unique_ptr<Sampler> make(int num_states) const;
  /// Diagnostics averaging weight for 0-based iteration n.
  double metric_mu(long n) const;
};

struct RunConfig {
  long horizon = 10000;
  int replications = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  bool budget_by_evaluations = false;
};

struct ReportConfig {
  std::vector<long> checkpoints;
  long trace_stride = 0;       // 0 = no trace rows
  int trace_replications = 1;  // how many replications emit trace rows
  double tie_tol = 1e-12;
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::optional<HypermodelConfig> hypermodel;
  std::vector<AlgorithmConfig> algorithms;
  RunConfig run;
  ReportConfig report;
};

struct Table1Cell {
  double lambda = 1.0;
  int states = 11;
  long horizon = 10000;
  std::vector<long> checkpoints;
};

struct Table1Config {
  std::vector<Table1Cell> cells;
  double alpha = 0.2;
  RunConfig run;
};

struct SweepConfig {
  ProblemConfig problem;
  std::vector<std::vector<double>> generator;
  std::vector<double> epsilons;
  std::vector<AlgorithmConfig> algorithms;
  RunConfig run;
  double tie_tol = 1e-12;
};

struct OdeCheckConfig {
  ProblemConfig problem;  // evaluated at regime 0, zero-variance recommended
  double gamma = 0.1;
  std::vector<double> mus{0.05, 0.01, 0.001};
  double horizon_time = 5.0;
  int replications = 300;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Parsers for the JSON config documents described in the README. Throw
/// std::runtime_error naming the offending field.
ExperimentConfig load_experiment_config(const std::string& path);
Table1Config load_table1_config(const std::string& path);
SweepConfig load_sweep_config(const std::string& path);
OdeCheckConfig load_ode_check_config(const std::string& path);

/// example2-style documents carry both a scripted-jump experiment and an
/// epsilon sweep; this reads the sweep section of such a file.
SweepConfig sweep_from_experiment_file(const std::string& path);

}  // namespace rsopt
