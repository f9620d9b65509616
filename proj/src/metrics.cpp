#include "rsopt/metrics.hpp"

#include <stdexcept>

namespace rsopt {

MetricsState::MetricsState(int num_states) {
  if (num_states < 1)
    throw std::invalid_argument("MetricsState: need at least one state");
  occupation_.assign(num_states, 0.0);
}

void MetricsState::update(int sampled, double observation, double f_min_now,
                          double mu) {
  bar_f_ = (1.0 - mu) * bar_f_ + mu * observation;
  for (double& z : occupation_) z *= 1.0 - mu;
  occupation_[static_cast<std::size_t>(sampled)] += mu;
  weight_ = (1.0 - mu) * weight_ + mu;
  regret_ = bar_f_ - f_min_now;
  ++iterations_;
}

std::vector<double> MetricsState::normalized_occupation() const {
  std::vector<double> z = occupation_;
  if (weight_ > 0.0)
    for (double& v : z) v /= weight_;
  return z;
}

double efficiency_loss(const MetricsState& metrics, const Optima& optima) {
  return efficiency_loss(metrics.normalized_occupation(), optima);
}

double efficiency_loss(const std::vector<double>& normalized_occupation,
                       const Optima& optima) {
  double inside = 0.0;
  for (int s : optima.states)
    inside += normalized_occupation.at(static_cast<std::size_t>(s));
  const double loss = 1.0 - inside;
  return loss < 0.0 ? 0.0 : (loss > 1.0 ? 1.0 : loss);
}

EfficiencyTarget::EfficiencyTarget(double eta, std::vector<double> means,
                                   double f_min)
    : eta_(eta), means_(std::move(means)), f_min_(f_min) {
  if (!(eta_ >= 0.0))
    throw std::invalid_argument("EfficiencyTarget: eta must be >= 0");
}

double EfficiencyTarget::gap(const std::vector<double>& pi) const {
  if (pi.size() != means_.size())
    throw std::invalid_argument("EfficiencyTarget: dimension mismatch");
  double g = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    g += pi[i] * (means_[i] - f_min_);
  return g;
}

bool EfficiencyTarget::contains(const std::vector<double>& pi) const {
  return gap(pi) <= eta_;
}

}  // namespace rsopt
