#pragma once

#include <vector>

#include "rsopt/hypermodel.hpp"

namespace rsopt {

/// State of the limit dynamics: belief deviation error and scalar regret.
struct SwitchedOdeState {
  std::vector<double> deviation;  // f-hat, one entry per search state
  double regret = 0.0;
};

/// One sampled point of an integrated trajectory.
struct OdePoint {
  double t;
  int regime;
  SwitchedOdeState state;
};

/// The limit dynamics modulated by a regime path:
///   d(deviation)/dt = -deviation
///   d(regret)/dt    = b_gamma(deviation + F(theta)) . F(theta)
///                     - F_min(theta) - regret.
/// `means[theta]` are the per-regime true objective values.
class SwitchedOde {
 public:
  SwitchedOde(std::vector<std::vector<double>> means_per_regime, double gamma);

  /// Equilibrium regret of the frozen-regime dynamics with zero deviation.
  double equilibrium_regret(int regime) const;

  /// Right-hand side at the given state under the given regime.
  SwitchedOdeState derivative(const SwitchedOdeState& x, int regime) const;

  /// Classic fourth-order Runge-Kutta with fixed dt, steps aligned to the
  /// regime path's jump times so the regime is constant within each step.
  /// Records the state at every internal step. dt must be positive (and is
  /// meant to be <= 0.01).
  std::vector<OdePoint> integrate(const SwitchedOdeState& initial,
                                  const CtmcPath& path, double horizon,
                                  double dt) const;

  /// Regret at time t along the frozen-regime flow started from r0 with zero
  /// deviation: r* + (r0 - r*) e^-t. The integrator's own oracle.
  double closed_form_regret(int regime, double r0, double t) const;

  int num_states() const { return static_cast<int>(means_[0].size()); }
  int num_regimes() const { return static_cast<int>(means_.size()); }
  const std::vector<double>& means(int regime) const { return means_[regime]; }
  double f_min(int regime) const { return f_min_[regime]; }

 private:
  std::vector<std::vector<double>> means_;
  std::vector<double> f_min_;
  double gamma_;
};

/// Sup-norm gap report between an ensemble-averaged interpolated regret path
/// and the ODE trajectory evaluated on the same grid.
struct TrackingGap {
  double sup_gap = 0.0;
  double at_time = 0.0;
};

TrackingGap sup_deviation(const std::vector<double>& grid_times,
                          const std::vector<double>& interpolated,
                          const std::vector<double>& ode_values);

}  // namespace rsopt
