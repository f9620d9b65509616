#pragma once

#include <memory>
#include <vector>

#include "rsopt/rng.hpp"

namespace rsopt {

/// A stochastic objective with known per-regime truth. Samples must lie in
/// [-1, 1] and average to true_mean(s, theta); internal noise state (if any)
/// belongs to exactly one run.
class ObjectiveModel {
 public:
  virtual ~ObjectiveModel() = default;
  virtual int num_states() const = 0;
  virtual int num_regimes() const = 0;
  virtual double true_mean(int state, int regime) const = 0;
  virtual double sample(int state, int regime, RandomSource& rng) = 0;
  virtual std::unique_ptr<ObjectiveModel> clone() const = 0;
};

/// Order-sizing objective: demand is Poisson(lambda(regime)), the payoff of
/// ordering s units is -1{demand == s}. Means are -pmf(s; lambda), evaluated
/// in log space.
class PoissonOrderSize final : public ObjectiveModel {
 public:
  PoissonOrderSize(std::vector<double> lambda_per_regime, int num_states);

  int num_states() const override { return num_states_; }
  int num_regimes() const override {
    return static_cast<int>(lambda_.size());
  }
  double true_mean(int state, int regime) const override;
  double sample(int state, int regime, RandomSource& rng) override;
  std::unique_ptr<ObjectiveModel> clone() const override;

  /// Demand draw by inversion with sequential search; exactly one uniform.
  static int poisson_draw(double lambda, RandomSource& rng);

 private:
  std::vector<double> lambda_;
  int num_states_;
};

/// Table of base means observed through additive AR(1) noise:
/// x_n = phi x_{n-1} + w_n with w_n ~ N(0, sigma_w^2), one noise chain per
/// (state, regime), started at its stationary law. Samples are clamped to
/// [-1, 1]. With phi = 0 and sigma_w = 0 this is a deterministic objective.
class CorrelatedNoiseObjective final : public ObjectiveModel {
 public:
  /// means[regime][state], each in [-1, 1]; phi in [0, 0.9]; sigma_w >= 0.
  CorrelatedNoiseObjective(std::vector<std::vector<double>> means, double phi,
                           double sigma_w);

  int num_states() const override { return num_states_; }
  int num_regimes() const override {
    return static_cast<int>(means_.size());
  }
  double true_mean(int state, int regime) const override;
  double sample(int state, int regime, RandomSource& rng) override;
  std::unique_ptr<ObjectiveModel> clone() const override;

 private:
  std::vector<std::vector<double>> means_;
  double phi_;
  double sigma_w_;
  int num_states_;
  std::vector<double> noise_;          // AR(1) state per (regime, state)
  std::vector<char> noise_started_;
};

/// Set of global minimizers of true_mean(., regime) with the minimum value.
struct Optima {
  std::vector<int> states;
  double f_min = 0.0;

  bool contains(int state) const;
};

/// States within tie_tol of the per-regime minimum mean. Exact ties belong
/// to the set, hence the small default tolerance.
Optima true_optima(const ObjectiveModel& model, int regime,
                   double tie_tol = 1e-12);

}  // namespace rsopt
