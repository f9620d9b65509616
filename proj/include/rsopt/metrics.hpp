#pragma once

#include <vector>

#include "rsopt/problems.hpp"

namespace rsopt {

/// Discounted tracking diagnostics kept by the harness, invisible to the
/// samplers: realized-objective average, per-iteration regret against the
/// current regime's true minimum, and the empirical sampling distribution.
class MetricsState {
 public:
  explicit MetricsState(int num_states);

  /// Fold in one iteration. `mu` is the averaging weight for this step (the
  /// algorithm's step size; 1/(n+1) under decreasing-step runs).
  void update(int sampled, double observation, double f_min_now, double mu);

  long iterations() const { return iterations_; }
  double realized_average() const { return bar_f_; }
  double regret() const { return regret_; }

  /// Raw discounted occupation frequencies; entries sum to the accumulated
  /// weight, 1 - (1-mu)^n under a constant step.
  const std::vector<double>& occupation() const { return occupation_; }
  /// Total discount weight accumulated so far.
  double occupation_weight() const { return weight_; }
  /// Occupation rescaled to sum to one (zero vector before any update).
  std::vector<double> normalized_occupation() const;

 private:
  long iterations_ = 0;
  double bar_f_ = 0.0;
  double regret_ = 0.0;
  double weight_ = 0.0;
  std::vector<double> occupation_;
};

/// Fraction of (normalized) sampling effort spent outside the optima set.
double efficiency_loss(const MetricsState& metrics, const Optima& optima);

/// Same quantity for an arbitrary occupation vector.
double efficiency_loss(const std::vector<double>& normalized_occupation,
                       const Optima& optima);

/// Target set membership: does the simplex point pi keep the mean optimality
/// gap at or below eta?
class EfficiencyTarget {
 public:
  EfficiencyTarget(double eta, std::vector<double> means, double f_min);

  bool contains(const std::vector<double>& pi) const;
  double gap(const std::vector<double>& pi) const;

 private:
  double eta_;
  std::vector<double> means_;
  double f_min_;
};

}  // namespace rsopt
