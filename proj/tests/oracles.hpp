// Test-only numeric oracles, independent of the library's closed forms.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rsopt::testing {

inline double entropy_objective(const std::vector<double>& sigma,
                                const std::vector<double>& f, double gamma) {
  double value = 0.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    value += sigma[i] * f[i];
    if (sigma[i] > 0.0) value += gamma * sigma[i] * std::log(sigma[i]);
  }
  return value;  // sum sigma_i f_i - gamma * entropy
}

/// Minimize sum sigma_i f_i - gamma * entropy(sigma) over the simplex by
/// cyclic pairwise mass exchange. For each pair (i, j) the 1-D restriction is
/// strictly convex in the transferred mass t; its optimum is found by
/// bisection on the sign of the derivative
///   d/dt = f_i - f_j + gamma * (ln(sigma_i + t) - ln(sigma_j - t)),
/// which is monotone increasing on (-sigma_i, sigma_j). Pairwise optimality
/// over all pairs implies global optimality for this smooth convex problem.
inline std::vector<double> minimize_entropy_perturbed(
    const std::vector<double>& f, double gamma, int max_cycles = 4000,
    double step_tol = 1e-15) {
  const std::size_t n = f.size();
  if (n == 0) throw std::invalid_argument("empty objective");
  std::vector<double> sigma(n, 1.0 / static_cast<double>(n));

  auto derivative = [&](std::size_t i, std::size_t j, double t) {
    return f[i] - f[j] + gamma * (std::log(sigma[i] + t) - std::log(sigma[j] - t));
  };

  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    double largest_step = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        // Root of the derivative in t on (-sigma_i, sigma_j).
        double lo = -sigma[i];
        double hi = sigma[j];
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (derivative(i, j, mid) < 0.0)
            lo = mid;
          else
            hi = mid;
        }
        const double t = 0.5 * (lo + hi);
        sigma[i] += t;
        sigma[j] -= t;
        if (sigma[i] < 0.0) sigma[i] = 0.0;
        if (sigma[j] < 0.0) sigma[j] = 0.0;
        largest_step = std::max(largest_step, std::abs(t));
      }
    }
    if (largest_step < step_tol) return sigma;
  }
  return sigma;
}

/// Golden-section search for the two-state case; a second independent route.
inline std::vector<double> minimize_entropy_perturbed_2state(
    const std::vector<double>& f, double gamma) {
  if (f.size() != 2) throw std::invalid_argument("need exactly two states");
  auto objective = [&](double p) {
    return entropy_objective({p, 1.0 - p}, f, gamma);
  };
  const double inv_phi = 0.6180339887498949;
  double a = 0.0, b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  for (int it = 0; it < 200; ++it) {
    if (objective(c) < objective(d))
      b = d;
    else
      a = c;
    c = b - inv_phi * (b - a);
    d = a + inv_phi * (b - a);
  }
  const double p = 0.5 * (a + b);
  return {p, 1.0 - p};
}

struct MeanStats {
  double mean = 0.0;
  double se = 0.0;
  long count = 0;
};

inline MeanStats mean_and_se(const std::vector<double>& xs) {
  MeanStats s;
  s.count = static_cast<long>(xs.size());
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  if (xs.size() > 1)
    s.se = std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0) /
                     static_cast<double>(xs.size()));
  return s;
}

}  // namespace rsopt::testing
