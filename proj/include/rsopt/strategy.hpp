#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rsopt/rng.hpp"

namespace rsopt {

/// Weighted-average objective estimates for every state, together with the
/// step size and exploration weight that drive the sampling strategy.
struct BeliefVector {
  std::vector<double> values;  // one entry per state, objective units
  double step_size = 0.01;     // in (0, 1]
  double exploration = 0.1;    // gamma > 0
};

/// A strictly interior point of the probability simplex over states.
struct SamplingDistribution {
  std::vector<double> probs;
};

/// Strictly concave penalty on the simplex interior; the exploration term of
/// the sampling strategy. Implementations must blow up in gradient norm at
/// the simplex boundary so the resulting strategy stays interior.
class PerturbationFunction {
 public:
  virtual ~PerturbationFunction() = default;
  virtual double evaluate(const std::vector<double>& point) const = 0;
};

/// Entropy perturbation, -sum p_i ln p_i. Bounded by ln(S) on the simplex.
class EntropyPerturbation final : public PerturbationFunction {
 public:
  double evaluate(const std::vector<double>& point) const override;
};

/// Numeric-degeneracy guard raised when an importance weight would divide by
/// a probability that is numerically zero.
class DegenerateProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Logit sampling strategy: probs_i proportional to exp(-values_i / gamma),
/// evaluated shift-invariantly (max subtraction) so it never overflows.
/// Throws std::invalid_argument on non-finite beliefs or gamma <= 0.
SamplingDistribution smooth_best_response(const BeliefVector& beliefs);

/// Inverse-CDF draw from `dist`; consumes exactly one uniform variate.
int sample_state(const SamplingDistribution& dist, RandomSource& rng);

/// The state the inverse CDF maps a given uniform variate to.
int quantile_state(const SamplingDistribution& dist, double u);

/// One stochastic-approximation step on the beliefs: the sampled entry moves
/// toward observation / probs[sampled], every other entry decays by (1 - mu).
/// `dist` must be the distribution the sample was actually drawn from.
BeliefVector belief_update(const BeliefVector& beliefs, int sampled,
                           double observation,
                           const SamplingDistribution& dist);

/// Per-iteration step size and exploration weight for decreasing-step runs:
/// mu_n = 1/(n+1), gamma_n = n^-alpha with gamma_0 = 1.
struct StepSchedule {
  double mu;
  double gamma;
};
StepSchedule decreasing_schedules(long n, double alpha);

}  // namespace rsopt
