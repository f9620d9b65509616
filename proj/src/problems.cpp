#include "rsopt/problems.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsopt {

PoissonOrderSize::PoissonOrderSize(std::vector<double> lambda_per_regime,
                                   int num_states)
    : lambda_(std::move(lambda_per_regime)), num_states_(num_states) {
  if (lambda_.empty())
    throw std::invalid_argument("PoissonOrderSize: need at least one regime");
  for (double l : lambda_)
    if (!(l > 0.0))
      throw std::invalid_argument("PoissonOrderSize: lambda must be > 0");
  if (num_states_ < 1)
    throw std::invalid_argument("PoissonOrderSize: need at least one state");
}

double PoissonOrderSize::true_mean(int state, int regime) const {
  const double lambda = lambda_.at(static_cast<std::size_t>(regime));
  const double log_pmf = static_cast<double>(state) * std::log(lambda) -
                         lambda - std::lgamma(static_cast<double>(state) + 1.0);
  return -std::exp(log_pmf);
}

int PoissonOrderSize::poisson_draw(double lambda, RandomSource& rng) {
  const double u = rng.uniform();
  double pmf = std::exp(-lambda);
  double cdf = pmf;
  int k = 0;
  while (u >= cdf) {
    ++k;
    pmf *= lambda / static_cast<double>(k);
    cdf += pmf;
    if (k > 10000) break;  // unreachable for the rates we accept
  }
  return k;
}

double PoissonOrderSize::sample(int state, int regime, RandomSource& rng) {
  const double lambda = lambda_.at(static_cast<std::size_t>(regime));
  return poisson_draw(lambda, rng) == state ? -1.0 : 0.0;
}

std::unique_ptr<ObjectiveModel> PoissonOrderSize::clone() const {
  return std::make_unique<PoissonOrderSize>(*this);
}

CorrelatedNoiseObjective::CorrelatedNoiseObjective(
    std::vector<std::vector<double>> means, double phi, double sigma_w)
    : means_(std::move(means)), phi_(phi), sigma_w_(sigma_w) {
  if (means_.empty() || means_[0].empty())
    throw std::invalid_argument("CorrelatedNoiseObjective: empty mean table");
  num_states_ = static_cast<int>(means_[0].size());
  for (const auto& row : means_) {
    if (static_cast<int>(row.size()) != num_states_)
      throw std::invalid_argument("CorrelatedNoiseObjective: ragged mean table");
    for (double m : row)
      if (!(m >= -1.0 && m <= 1.0))
        throw std::invalid_argument(
            "CorrelatedNoiseObjective: means must lie in [-1, 1]");
  }
  if (!(phi_ >= 0.0 && phi_ <= 0.9))
    throw std::invalid_argument("CorrelatedNoiseObjective: phi in [0, 0.9]");
  if (!(sigma_w_ >= 0.0))
    throw std::invalid_argument("CorrelatedNoiseObjective: sigma_w >= 0");
  noise_.assign(means_.size() * static_cast<std::size_t>(num_states_), 0.0);
  noise_started_.assign(noise_.size(), 0);
}

double CorrelatedNoiseObjective::true_mean(int state, int regime) const {
  return means_.at(static_cast<std::size_t>(regime))
      .at(static_cast<std::size_t>(state));
}

double CorrelatedNoiseObjective::sample(int state, int regime,
                                        RandomSource& rng) {
  const double base = true_mean(state, regime);
  if (sigma_w_ == 0.0) return base;

  const std::size_t slot = static_cast<std::size_t>(regime) *
                               static_cast<std::size_t>(num_states_) +
                           static_cast<std::size_t>(state);
  double& x = noise_[slot];
  if (!noise_started_[slot]) {
    // Stationary start: N(0, sigma_w^2 / (1 - phi^2)).
    x = rng.normal() * sigma_w_ / std::sqrt(1.0 - phi_ * phi_);
    noise_started_[slot] = 1;
  } else {
    x = phi_ * x + rng.normal() * sigma_w_;
  }
  return std::clamp(base + x, -1.0, 1.0);
}

std::unique_ptr<ObjectiveModel> CorrelatedNoiseObjective::clone() const {
  return std::make_unique<CorrelatedNoiseObjective>(*this);
}

bool Optima::contains(int state) const {
  return std::find(states.begin(), states.end(), state) != states.end();
}

Optima true_optima(const ObjectiveModel& model, int regime, double tie_tol) {
  Optima result;
  result.f_min = model.true_mean(0, regime);
  for (int s = 1; s < model.num_states(); ++s)
    result.f_min = std::min(result.f_min, model.true_mean(s, regime));
  for (int s = 0; s < model.num_states(); ++s)
    if (model.true_mean(s, regime) <= result.f_min + tie_tol)
      result.states.push_back(s);
  return result;
}

}  // namespace rsopt
