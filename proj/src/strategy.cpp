#include "rsopt/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsopt {

double EntropyPerturbation::evaluate(const std::vector<double>& point) const {
  double h = 0.0;
  for (double p : point) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

SamplingDistribution smooth_best_response(const BeliefVector& beliefs) {
  const std::size_t n = beliefs.values.size();
  if (n < 1) throw std::invalid_argument("smooth_best_response: empty beliefs");
  if (!(beliefs.exploration > 0.0))
    throw std::invalid_argument("smooth_best_response: gamma must be > 0");
  for (double v : beliefs.values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("smooth_best_response: non-finite belief");
  }

  // Exponents are -f_i/gamma shifted by their maximum, so every argument to
  // exp is <= 0 and the largest term is exactly 1.
  const double inv_gamma = 1.0 / beliefs.exploration;
  double top = -std::numeric_limits<double>::infinity();
  for (double v : beliefs.values) top = std::max(top, -v * inv_gamma);

  SamplingDistribution dist;
  dist.probs.resize(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Keep entries strictly positive even when exp underflows.
    const double w = std::max(std::exp(-beliefs.values[i] * inv_gamma - top),
                              std::numeric_limits<double>::min());
    dist.probs[i] = w;
    total += w;
  }
  for (double& p : dist.probs) p /= total;
  return dist;
}

int sample_state(const SamplingDistribution& dist, RandomSource& rng) {
  return quantile_state(dist, rng.uniform());
}

int quantile_state(const SamplingDistribution& dist, double u) {
  double cumulative = 0.0;
  const std::size_t n = dist.probs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cumulative += dist.probs[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  return static_cast<int>(n - 1);
}

BeliefVector belief_update(const BeliefVector& beliefs, int sampled,
                           double observation,
                           const SamplingDistribution& dist) {
  const double p = dist.probs.at(static_cast<std::size_t>(sampled));
  if (p < 1e-300)
    throw DegenerateProbabilityError(
        "belief_update: sampled-state probability below 1e-300");

  BeliefVector next = beliefs;
  const double mu = beliefs.step_size;
  for (double& v : next.values) v *= 1.0 - mu;
  next.values[static_cast<std::size_t>(sampled)] += mu * observation / p;
  return next;
}

StepSchedule decreasing_schedules(long n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("decreasing_schedules: alpha must be in (0,1)");
  if (n < 0) throw std::invalid_argument("decreasing_schedules: n must be >= 0");
  StepSchedule s;
  s.mu = 1.0 / static_cast<double>(n + 1);
  s.gamma = n == 0 ? 1.0 : std::pow(static_cast<double>(n), -alpha);
  return s;
}

}  // namespace rsopt
