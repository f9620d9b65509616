#include "rsopt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "rsopt/csv.hpp"
#include "rsopt/hypermodel.hpp"
#include "rsopt/parallel.hpp"

namespace rsopt {
namespace {

// Stream salts so that the regime path of replication k is shared by every
// algorithm run on it, while sampler and objective draws stay independent.
constexpr std::uint64_t kHyperStream = 1;
constexpr std::uint64_t kSamplerStream = 2;
constexpr std::uint64_t kObjectiveStream = 3;

class CountingChannel final : public EvaluationChannel {
 public:
  CountingChannel(ObjectiveModel& objective, int regime, RandomSource& rng,
                  long& evaluations)
      : objective_(objective), regime_(regime), rng_(rng),
        evaluations_(evaluations) {}

  void set_regime(int regime) { regime_ = regime; }

  double evaluate(int state) override {
    ++evaluations_;
    return objective_.sample(state, regime_, rng_);
  }

 private:
  ObjectiveModel& objective_;
  int regime_;
  RandomSource& rng_;
  long& evaluations_;
};

struct ReplicationOutput {
  std::vector<char> converged;  // per checkpoint
  double mean_eff_loss = 0.0;
  double mean_est_loss = 0.0;
  long evaluations = 0;
  std::vector<TraceRow> trace;
};

ReplicationOutput run_replication(const ExperimentConfig& cfg,
                                  const AlgorithmConfig& alg,
                                  const std::vector<Optima>& optima, int rep) {
  const int num_states = cfg.problem.num_states();
  const RandomSource base(cfg.run.seed, static_cast<std::uint64_t>(rep));
  RandomSource hyper_rng = base.derive(kHyperStream);
  RandomSource sampler_rng = base.derive(kSamplerStream);
  RandomSource objective_rng = base.derive(kObjectiveStream);

  std::unique_ptr<ObjectiveModel> objective = cfg.problem.make();
  std::unique_ptr<Sampler> sampler = alg.make(num_states);

  std::optional<Hypermodel> chain;
  int theta = 0;
  if (cfg.hypermodel && !cfg.hypermodel->scripted()) {
    chain.emplace(GeneratorMatrix(cfg.hypermodel->generator),
                  cfg.hypermodel->epsilon, cfg.hypermodel->initial_dist);
    chain->reset(hyper_rng);
    theta = chain->current();
  } else if (cfg.hypermodel) {
    theta = cfg.hypermodel->scripted_regime(0);
  }

  MetricsState metrics(num_states);
  ReplicationOutput out;
  out.converged.assign(cfg.report.checkpoints.size(), 0);

  CountingChannel channel(*objective, theta, objective_rng, out.evaluations);

  std::size_t next_checkpoint = 0;
  double eff_sum = 0.0;
  double est_sum = 0.0;
  long n = 0;  // completed iterations
  while (true) {
    const long budget_used = cfg.run.budget_by_evaluations ? out.evaluations : n;
    if (budget_used >= cfg.run.horizon) break;

    channel.set_regime(theta);
    const int sampled = sampler->propose(sampler_rng);
    const double value = channel.evaluate(sampled);
    sampler->observe(sampled, value, channel);

    const Optima& opt = optima[static_cast<std::size_t>(theta)];
    metrics.update(sampled, value, opt.f_min, alg.metric_mu(n));
    ++n;

    const int estimate = sampler->estimate();
    const double eff = efficiency_loss(metrics, opt);
    eff_sum += eff;
    est_sum += opt.contains(estimate) ? 0.0 : 1.0;

    const long budget_now = cfg.run.budget_by_evaluations ? out.evaluations : n;
    while (next_checkpoint < cfg.report.checkpoints.size() &&
           budget_now >= cfg.report.checkpoints[next_checkpoint]) {
      out.converged[next_checkpoint] = opt.contains(estimate) ? 1 : 0;
      ++next_checkpoint;
    }

    if (cfg.report.trace_stride > 0 && rep < cfg.report.trace_replications &&
        n % cfg.report.trace_stride == 0) {
      out.trace.push_back(
          {n, rep, theta, sampled, estimate, metrics.regret(), eff});
    }

    // Regime for the next iteration.
    if (chain) {
      theta = chain->step(hyper_rng);
    } else if (cfg.hypermodel) {
      theta = cfg.hypermodel->scripted_regime(n);
    }
  }

  if (n > 0) {
    out.mean_eff_loss = eff_sum / static_cast<double>(n);
    out.mean_est_loss = est_sum / static_cast<double>(n);
  }
  return out;
}

CheckpointStat binomial_stat(long checkpoint, double successes, int trials) {
  CheckpointStat s;
  s.checkpoint = checkpoint;
  const double p = trials > 0 ? successes / trials : 0.0;
  const double half =
      trials > 0 ? 1.96 * std::sqrt(p * (1.0 - p) / trials) : 0.0;
  s.pct = 100.0 * p;
  s.ci_lo = 100.0 * std::max(0.0, p - half);
  s.ci_hi = 100.0 * std::min(1.0, p + half);
  return s;
}

AlgorithmResult reduce(const ExperimentConfig& cfg, const AlgorithmConfig& alg,
                       std::vector<ReplicationOutput>& reps) {
  AlgorithmResult result;
  result.label = alg.label;
  const int r = static_cast<int>(reps.size());

  for (std::size_t c = 0; c < cfg.report.checkpoints.size(); ++c) {
    double hits = 0.0;
    for (const ReplicationOutput& rep : reps) hits += rep.converged[c];
    result.convergence.push_back(
        binomial_stat(cfg.report.checkpoints[c], hits, r));
  }

  double eff_sum = 0.0, eff_sq = 0.0, est_sum = 0.0, est_sq = 0.0;
  for (const ReplicationOutput& rep : reps) {
    eff_sum += rep.mean_eff_loss;
    eff_sq += rep.mean_eff_loss * rep.mean_eff_loss;
    est_sum += rep.mean_est_loss;
    est_sq += rep.mean_est_loss * rep.mean_est_loss;
  }
  result.mean_eff_loss = eff_sum / r;
  result.mean_est_loss = est_sum / r;
  if (r > 1) {
    const double eff_var =
        std::max(0.0, (eff_sq - eff_sum * eff_sum / r) / (r - 1));
    const double est_var =
        std::max(0.0, (est_sq - est_sum * est_sum / r) / (r - 1));
    result.se_eff_loss = std::sqrt(eff_var / r);
    result.se_est_loss = std::sqrt(est_var / r);
  }
  result.evaluations_per_replication = reps.empty() ? 0 : reps[0].evaluations;

  for (int k = 0; k < r; ++k)
    for (const TraceRow& row : reps[static_cast<std::size_t>(k)].trace)
      result.trace.push_back(row);
  return result;
}

void write_trace_csv(const std::string& path,
                     const std::vector<TraceRow>& rows) {
  CsvWriter csv(path, {"iteration", "replication", "theta", "sampled",
                       "estimate", "regret", "efficiency"});
  for (const TraceRow& r : rows)
    csv.write_row({std::to_string(r.iteration), std::to_string(r.replication),
                   std::to_string(r.theta), std::to_string(r.sampled),
                   std::to_string(r.estimate), format_g9(r.regret),
                   format_g9(r.efficiency)});
}

std::vector<Optima> per_regime_optima(const ProblemConfig& problem,
                                      double tie_tol) {
  std::unique_ptr<ObjectiveModel> model = problem.make();
  std::vector<Optima> optima;
  for (int t = 0; t < model->num_regimes(); ++t)
    optima.push_back(true_optima(*model, t, tie_tol));
  return optima;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty())
    throw std::runtime_error("config error at 'algorithms': empty");
  if (cfg.run.replications < 1)
    throw std::runtime_error("config error at 'run.replications': must be >= 1");
  for (long c : cfg.report.checkpoints)
    if (c < 1 || c > cfg.run.horizon)
      throw std::runtime_error(
          "config error at 'report.checkpoints': must lie in [1, horizon]");
  if (cfg.hypermodel && !cfg.hypermodel->scripted()) {
    // Constructing validates the generator/epsilon pair.
    Hypermodel probe(GeneratorMatrix(cfg.hypermodel->generator),
                     cfg.hypermodel->epsilon, cfg.hypermodel->initial_dist);
    if (probe.generator().num_regimes() != cfg.problem.num_regimes())
      throw std::runtime_error(
          "config error at 'hypermodel.generator': regime count does not "
          "match the problem");
  }
  if (cfg.hypermodel && cfg.hypermodel->scripted()) {
    for (const ScriptSegment& seg : cfg.hypermodel->script)
      if (seg.regime < 0 || seg.regime >= cfg.problem.num_regimes())
        throw std::runtime_error(
            "config error at 'hypermodel.script': regime out of range");
  }
}

}  // namespace

std::vector<AlgorithmResult> run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const std::vector<Optima> optima =
      per_regime_optima(cfg.problem, cfg.report.tie_tol);

  std::vector<AlgorithmResult> results;
  for (const AlgorithmConfig& alg : cfg.algorithms) {
    std::vector<ReplicationOutput> reps(
        static_cast<std::size_t>(cfg.run.replications));
    for_each_replication(cfg.run.replications, cfg.run.threads, [&](int k) {
      reps[static_cast<std::size_t>(k)] = run_replication(cfg, alg, optima, k);
    });
    results.push_back(reduce(cfg, alg, reps));
  }
  return results;
}

std::vector<AlgorithmResult> run_experiment_to(const ExperimentConfig& cfg,
                                               const std::string& out_dir) {
  std::vector<AlgorithmResult> results = run_experiment(cfg);
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir))
    throw std::runtime_error("cannot create output directory: " + out_dir);

  if (cfg.report.trace_stride > 0) {
    if (results.size() == 1) {
      write_trace_csv(out_dir + "/trace.csv", results[0].trace);
    } else {
      for (const AlgorithmResult& r : results) {
        const std::string dir = out_dir + "/" + r.label;
        fs::create_directories(dir, ec);
        write_trace_csv(dir + "/trace.csv", r.trace);
      }
    }
  }

  if (!cfg.report.checkpoints.empty()) {
    CsvWriter csv(out_dir + "/convergence.csv",
                  {"checkpoint", "algorithm", "pct", "ci_lo", "ci_hi"});
    for (const AlgorithmResult& r : results)
      for (const CheckpointStat& s : r.convergence)
        csv.write_row({std::to_string(s.checkpoint), r.label, format_g9(s.pct),
                       format_g9(s.ci_lo), format_g9(s.ci_hi)});
  }
  return results;
}

std::vector<Table1CellResult> run_table1(const Table1Config& cfg) {
  std::vector<Table1CellResult> results;
  for (const Table1Cell& cell : cfg.cells) {
    ExperimentConfig exp;
    exp.problem.type = ProblemConfig::Type::kPoisson;
    exp.problem.lambda = {cell.lambda};
    exp.problem.states = cell.states;
    exp.run = cfg.run;
    exp.run.horizon = cell.horizon;
    exp.report.checkpoints = cell.checkpoints;

    AlgorithmConfig as;
    as.name = AlgorithmConfig::Name::kAdaptiveSearch;
    as.mode = AlgorithmConfig::Mode::kDecreasing;
    as.alpha = cfg.alpha;
    as.label = "AS";
    AlgorithmConfig rs;
    rs.name = AlgorithmConfig::Name::kRandomSearch;
    rs.mode = AlgorithmConfig::Mode::kStatic;
    rs.label = "RS";
    AlgorithmConfig ucb;
    ucb.name = AlgorithmConfig::Name::kUcb;
    ucb.mode = AlgorithmConfig::Mode::kStatic;
    ucb.label = "UCB";
    exp.algorithms = {as, rs, ucb};

    Table1CellResult cell_result;
    cell_result.cell = cell;
    cell_result.algorithms = run_experiment(exp);
    results.push_back(std::move(cell_result));
  }
  return results;
}

void write_table1_csv(const std::vector<Table1CellResult>& results,
                      const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  CsvWriter csv(out_dir + "/table1.csv", {"lambda", "S", "checkpoint",
                                          "algorithm", "pct", "ci_lo", "ci_hi"});
  for (const Table1CellResult& cell : results)
    for (const AlgorithmResult& alg : cell.algorithms)
      for (const CheckpointStat& s : alg.convergence)
        csv.write_row({format_g9(cell.cell.lambda),
                       std::to_string(cell.cell.states),
                       std::to_string(s.checkpoint), alg.label,
                       format_g9(s.pct), format_g9(s.ci_lo),
                       format_g9(s.ci_hi)});
}

std::string format_table1(const std::vector<Table1CellResult>& results) {
  std::ostringstream out;
  for (const Table1CellResult& cell : results) {
    out << "lambda = " << format_g9(cell.cell.lambda)
        << ", states = " << cell.cell.states
        << " (percent converged, " << "95% CI in brackets)\n";
    out << "      n";
    for (const AlgorithmResult& alg : cell.algorithms)
      out << "  " << alg.label << "                  ";
    out << '\n';
    for (std::size_t c = 0; c < cell.cell.checkpoints.size(); ++c) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%7ld", cell.cell.checkpoints[c]);
      out << buf;
      for (const AlgorithmResult& alg : cell.algorithms) {
        const CheckpointStat& s = alg.convergence[c];
        std::snprintf(buf, sizeof(buf), "  %5.1f [%5.1f,%5.1f]", s.pct, s.ci_lo,
                      s.ci_hi);
        out << buf;
      }
      out << '\n';
    }
    out << '\n';
  }
  return out.str();
}

std::vector<SweepPoint> run_epsilon_sweep(const SweepConfig& cfg) {
  std::vector<SweepPoint> points;
  for (double eps : cfg.epsilons) {
    ExperimentConfig exp;
    exp.problem = cfg.problem;
    HypermodelConfig hyper;
    hyper.generator = cfg.generator;
    hyper.epsilon = eps;
    exp.hypermodel = hyper;
    exp.algorithms = cfg.algorithms;
    exp.run = cfg.run;
    exp.report.tie_tol = cfg.tie_tol;

    SweepPoint point;
    point.epsilon = eps;
    point.algorithms = run_experiment(exp);
    points.push_back(std::move(point));
  }
  return points;
}

void write_fig4_csvs(const std::vector<SweepPoint>& points,
                     const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  CsvWriter eff(out_dir + "/fig4.csv",
                {"epsilon", "algorithm", "mean_efficiency_loss", "stderr"});
  CsvWriter est(out_dir + "/fig4_estimate.csv",
                {"epsilon", "algorithm", "mean_estimate_loss", "stderr"});
  for (const SweepPoint& p : points) {
    for (const AlgorithmResult& alg : p.algorithms) {
      eff.write_row({format_g9(p.epsilon), alg.label,
                     format_g9(alg.mean_eff_loss), format_g9(alg.se_eff_loss)});
      est.write_row({format_g9(p.epsilon), alg.label,
                     format_g9(alg.mean_est_loss), format_g9(alg.se_est_loss)});
    }
  }
}

std::vector<OdeCheckPoint> run_ode_check(const OdeCheckConfig& cfg) {
  if (cfg.problem.num_regimes() != 1)
    throw std::runtime_error(
        "ode-check expects a single-regime (fixed-theta) problem");
  std::unique_ptr<ObjectiveModel> model = cfg.problem.make();
  const int num_states = model->num_states();
  std::vector<double> means(static_cast<std::size_t>(num_states));
  for (int s = 0; s < num_states; ++s) means[s] = model->true_mean(s, 0);
  const double f_min = *std::min_element(means.begin(), means.end());

  SwitchedOde ode({means}, cfg.gamma);
  GeneratorMatrix trivial({{0.0}});

  std::vector<OdeCheckPoint> points;
  for (double mu : cfg.mus) {
    const long steps = static_cast<long>(std::llround(cfg.horizon_time / mu));

    // Ensemble of constant-step runs; interpolated regret on t_n = n mu.
    std::vector<std::vector<double>> regret_paths(
        static_cast<std::size_t>(cfg.replications));
    for_each_replication(cfg.replications, cfg.threads, [&](int k) {
      const RandomSource base(cfg.seed, static_cast<std::uint64_t>(k));
      RandomSource sampler_rng = base.derive(kSamplerStream);
      RandomSource objective_rng = base.derive(kObjectiveStream);
      std::unique_ptr<ObjectiveModel> objective = cfg.problem.make();
      AdaptiveSearch as =
          AdaptiveSearch::constant_step(num_states, mu, cfg.gamma);
      MetricsState metrics(num_states);
      long evaluations = 0;
      CountingChannel channel(*objective, 0, objective_rng, evaluations);
      std::vector<double>& path = regret_paths[static_cast<std::size_t>(k)];
      path.reserve(static_cast<std::size_t>(steps) + 1);
      path.push_back(0.0 - f_min);  // regret before any update
      for (long n = 0; n < steps; ++n) {
        const int sampled = as.propose(sampler_rng);
        const double value = channel.evaluate(sampled);
        as.observe(sampled, value, channel);
        metrics.update(sampled, value, f_min, mu);
        path.push_back(metrics.regret());
      }
    });

    std::vector<double> mean_regret(static_cast<std::size_t>(steps) + 1, 0.0);
    for (const std::vector<double>& path : regret_paths)
      for (std::size_t i = 0; i < mean_regret.size(); ++i)
        mean_regret[i] += path[i];
    for (double& v : mean_regret) v /= cfg.replications;

    // Limit dynamics from the matched initial condition: beliefs start at
    // zero, so the deviation starts at -F and the regret at -F_min.
    SwitchedOdeState initial;
    initial.deviation.resize(static_cast<std::size_t>(num_states));
    for (int s = 0; s < num_states; ++s) initial.deviation[s] = -means[s];
    initial.regret = 0.0 - f_min;

    CtmcPath constant_path;
    constant_path.jump_times = {0.0};
    constant_path.regimes = {0};
    constant_path.horizon = cfg.horizon_time;

    const double dt = std::min(0.01, mu);
    const std::vector<OdePoint> trajectory =
        ode.integrate(initial, constant_path, cfg.horizon_time, dt);
    const long per_grid = std::llround(mu / dt);

    std::vector<double> grid_times, ode_values;
    for (long n = 0; n <= steps; ++n) {
      grid_times.push_back(mu * static_cast<double>(n));
      ode_values.push_back(
          trajectory[static_cast<std::size_t>(n * per_grid)].state.regret);
    }

    const TrackingGap gap = sup_deviation(grid_times, mean_regret, ode_values);
    points.push_back({mu, gap.sup_gap, gap.at_time});
  }
  return points;
}

void write_ode_check_csv(const std::vector<OdeCheckPoint>& points,
                         const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  CsvWriter csv(out_dir + "/ode_check.csv", {"mu", "sup_gap", "gap_time"});
  for (const OdeCheckPoint& p : points)
    csv.write_row({format_g9(p.mu), format_g9(p.sup_gap),
                   format_g9(p.gap_time)});
}

}  // namespace rsopt
