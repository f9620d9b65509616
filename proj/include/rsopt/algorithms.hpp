#pragma once

#include <memory>
#include <vector>

#include "rsopt/rng.hpp"
#include "rsopt/strategy.hpp"

namespace rsopt {

/// Index of the largest entry, ties resolved to the smallest index. The
/// estimate rule shared by every sampler's visit statistics.
int argmax_smallest_index(const std::vector<double>& values);

/// Extra simulation budget a sampler may spend while digesting an
/// observation. Needed by pairwise-comparison rules that evaluate a second
/// state per iteration; every call is one objective evaluation.
class EvaluationChannel {
 public:
  virtual ~EvaluationChannel() = default;
  virtual double evaluate(int state) = 0;
};

/// Uniform sequential-sampler contract. Each iteration the sampler proposes
/// one state to simulate, then receives the realized value. propose/observe
/// strictly alternate; estimate() is valid at any point.
class Sampler {
 public:
  virtual ~Sampler() = default;

  int propose(RandomSource& rng);
  void observe(int state, double value, EvaluationChannel& extra);
  virtual int estimate() const = 0;

  /// Objective evaluations consumed per iteration (including extras).
  virtual int evaluations_per_iteration() const { return 1; }

 protected:
  virtual int do_propose(RandomSource& rng) = 0;
  virtual void do_observe(int state, double value, EvaluationChannel& extra) = 0;

 private:
  bool awaiting_observe_ = false;
  int proposed_ = -1;
};

/// Smooth best-response adaptive search. Beliefs start at zero; proposals
/// are logit draws from the beliefs; observations are importance-weighted
/// into the beliefs; the estimate is the most frequently visited state.
class AdaptiveSearch final : public Sampler {
 public:
  /// Tracking configuration: fixed step size and exploration weight.
  static AdaptiveSearch constant_step(int num_states, double mu, double gamma);
  /// Static-problem configuration: mu_n = 1/(n+1), gamma_n = n^-alpha.
  static AdaptiveSearch decreasing_step(int num_states, double alpha);
  /// Decreasing step size with the exploration weight pinned.
  static AdaptiveSearch decreasing_step_fixed_gamma(int num_states,
                                                    double alpha, double gamma);

  int estimate() const override;

  const BeliefVector& beliefs() const { return beliefs_; }
  const std::vector<double>& occupation() const { return occupation_; }
  const SamplingDistribution& last_distribution() const { return last_dist_; }

 protected:
  int do_propose(RandomSource& rng) override;
  void do_observe(int state, double value, EvaluationChannel& extra) override;

 private:
  AdaptiveSearch() = default;

  void refresh_schedule();

  bool decreasing_ = false;
  double alpha_ = 0.0;
  double fixed_gamma_ = 0.0;  // <= 0 means scheduled
  long iteration_ = 0;
  BeliefVector beliefs_;
  SamplingDistribution last_dist_;
  std::vector<double> occupation_;  // discounted visit frequencies z
};

/// Pairwise-comparison random search: draw a uniform candidate, evaluate it
/// and the incumbent independently, move if the candidate looks better, and
/// estimate by the most visited incumbent. Two evaluations per iteration.
class RandomSearch final : public Sampler {
 public:
  /// Static mode: plain visit counts.
  static RandomSearch static_mode(int num_states);
  /// Adaptive mode: visit weights discounted by (1 - mu) per iteration.
  static RandomSearch adaptive_mode(int num_states, double mu);

  int estimate() const override;
  int evaluations_per_iteration() const override { return 2; }

  int current() const { return current_; }
  const std::vector<double>& visit_weights() const { return weights_; }

 protected:
  int do_propose(RandomSource& rng) override;
  void do_observe(int state, double value, EvaluationChannel& extra) override;

 private:
  RandomSearch() = default;

  bool adaptive_ = false;
  double mu_ = 0.0;
  int num_states_ = 0;
  int current_ = -1;  // incumbent; drawn uniformly on first proposal
  std::vector<double> weights_;
};

/// UCB1 on rewards -f: after a one-pull-per-state sweep, pull the state with
/// the largest mean reward plus sqrt(2 ln t / n_i) bonus, ties to the
/// smallest index. The adaptive mode discounts counts and reward sums by
/// (1 - mu) per iteration and uses the discounted total in the bonus. The
/// estimate is the state with the best observed mean.
class UpperConfidenceBound final : public Sampler {
 public:
  static UpperConfidenceBound static_mode(int num_states);
  static UpperConfidenceBound adaptive_mode(int num_states, double mu);

  int estimate() const override;

  const std::vector<double>& pull_counts() const { return counts_; }

 protected:
  int do_propose(RandomSource& rng) override;
  void do_observe(int state, double value, EvaluationChannel& extra) override;

 private:
  UpperConfidenceBound() = default;

  bool adaptive_ = false;
  double mu_ = 0.0;
  int num_states_ = 0;
  long iteration_ = 0;
  std::vector<double> counts_;       // pulls (discounted in adaptive mode)
  std::vector<double> reward_sums_;  // sums of -value (discounted likewise)
};

}  // namespace rsopt
