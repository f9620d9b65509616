#include "rsopt/switched_ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsopt/strategy.hpp"

namespace rsopt {
namespace {

std::vector<double> logit_weights(const std::vector<double>& values,
                                  double gamma) {
  BeliefVector beliefs;
  beliefs.values = values;
  beliefs.step_size = 1.0;
  beliefs.exploration = gamma;
  return smooth_best_response(beliefs).probs;
}

}  // namespace

SwitchedOde::SwitchedOde(std::vector<std::vector<double>> means_per_regime,
                         double gamma)
    : means_(std::move(means_per_regime)), gamma_(gamma) {
  if (means_.empty() || means_[0].empty())
    throw std::invalid_argument("SwitchedOde: empty mean table");
  if (!(gamma_ > 0.0))
    throw std::invalid_argument("SwitchedOde: gamma must be > 0");
  for (const auto& row : means_) {
    if (row.size() != means_[0].size())
      throw std::invalid_argument("SwitchedOde: ragged mean table");
    f_min_.push_back(*std::min_element(row.begin(), row.end()));
  }
}

double SwitchedOde::equilibrium_regret(int regime) const {
  const std::vector<double>& f = means_.at(static_cast<std::size_t>(regime));
  const std::vector<double> b = logit_weights(f, gamma_);
  double dot = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) dot += b[i] * f[i];
  return dot - f_min_[static_cast<std::size_t>(regime)];
}

SwitchedOdeState SwitchedOde::derivative(const SwitchedOdeState& x,
                                         int regime) const {
  const std::vector<double>& f = means_.at(static_cast<std::size_t>(regime));
  if (x.deviation.size() != f.size())
    throw std::invalid_argument("SwitchedOde: state dimension mismatch");

  SwitchedOdeState dx;
  dx.deviation.resize(f.size());
  std::vector<double> beliefs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    dx.deviation[i] = -x.deviation[i];
    beliefs[i] = x.deviation[i] + f[i];
  }
  const std::vector<double> b = logit_weights(beliefs, gamma_);
  double dot = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) dot += b[i] * f[i];
  dx.regret = dot - f_min_[static_cast<std::size_t>(regime)] - x.regret;
  return dx;
}

std::vector<OdePoint> SwitchedOde::integrate(const SwitchedOdeState& initial,
                                             const CtmcPath& path,
                                             double horizon, double dt) const {
  if (!(dt > 0.0))
    throw std::invalid_argument("SwitchedOde: dt must be > 0");
  if (!(horizon >= 0.0))
    throw std::invalid_argument("SwitchedOde: horizon must be >= 0");

  auto axpy = [](SwitchedOdeState& y, double a, const SwitchedOdeState& x) {
    for (std::size_t i = 0; i < y.deviation.size(); ++i)
      y.deviation[i] += a * x.deviation[i];
    y.regret += a * x.regret;
  };

  std::vector<OdePoint> out;
  SwitchedOdeState x = initial;
  double t = 0.0;
  out.push_back({t, path.regime_at(0.0), x});

  // Segment boundaries: regime jump times inside (0, horizon], then horizon.
  std::vector<double> boundaries;
  for (double jt : path.jump_times)
    if (jt > 0.0 && jt < horizon) boundaries.push_back(jt);
  boundaries.push_back(horizon);

  for (double segment_end : boundaries) {
    const int regime = path.regime_at(0.5 * (t + segment_end));
    while (t < segment_end - 1e-12) {
      const double h = std::min(dt, segment_end - t);
      const SwitchedOdeState k1 = derivative(x, regime);
      SwitchedOdeState x2 = x;
      axpy(x2, 0.5 * h, k1);
      const SwitchedOdeState k2 = derivative(x2, regime);
      SwitchedOdeState x3 = x;
      axpy(x3, 0.5 * h, k2);
      const SwitchedOdeState k3 = derivative(x3, regime);
      SwitchedOdeState x4 = x;
      axpy(x4, h, k3);
      const SwitchedOdeState k4 = derivative(x4, regime);

      axpy(x, h / 6.0, k1);
      axpy(x, h / 3.0, k2);
      axpy(x, h / 3.0, k3);
      axpy(x, h / 6.0, k4);
      t += h;
      out.push_back({t, regime, x});
    }
    t = segment_end;
  }
  return out;
}

double SwitchedOde::closed_form_regret(int regime, double r0, double t) const {
  const double r_star = equilibrium_regret(regime);
  return r_star + (r0 - r_star) * std::exp(-t);
}

TrackingGap sup_deviation(const std::vector<double>& grid_times,
                          const std::vector<double>& interpolated,
                          const std::vector<double>& ode_values) {
  if (grid_times.size() != interpolated.size() ||
      grid_times.size() != ode_values.size())
    throw std::invalid_argument("sup_deviation: grid size mismatch");
  TrackingGap gap;
  for (std::size_t i = 0; i < grid_times.size(); ++i) {
    const double d = std::abs(interpolated[i] - ode_values[i]);
    if (d > gap.sup_gap) {
      gap.sup_gap = d;
      gap.at_time = grid_times[i];
    }
  }
  return gap;
}

}  // namespace rsopt
