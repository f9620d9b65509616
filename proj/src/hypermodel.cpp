#include "rsopt/hypermodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rsopt {
namespace {

constexpr double kRowSumTol = 1e-12;

// Strong connectivity of the off-diagonal support graph, checked by
// reachability from node 0 in the graph and its transpose.
bool strongly_connected(const std::vector<std::vector<double>>& q) {
  const int n = static_cast<int>(q.size());
  auto reachable = [&](bool transpose) {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w) {
        const double edge = transpose ? q[w][v] : q[v][w];
        if (w != v && edge > 0.0 && !seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  };
  return reachable(false) && reachable(true);
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(std::vector<std::vector<double>> rows)
    : rows_(std::move(rows)) {
  const std::size_t n = rows_.size();
  if (n == 0) throw std::invalid_argument("GeneratorMatrix: empty matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows_[i].size() != n)
      throw std::invalid_argument("GeneratorMatrix: matrix must be square");
    double row_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double q = rows_[i][j];
      if (!std::isfinite(q))
        throw std::invalid_argument("GeneratorMatrix: non-finite entry");
      if (i != j && q < 0.0)
        throw std::invalid_argument(
            "GeneratorMatrix: off-diagonal entries must be >= 0");
      if (std::abs(q) > 1.0 + kRowSumTol)
        throw std::invalid_argument(
            "GeneratorMatrix: entries must satisfy |q| <= 1");
      row_sum += q;
    }
    if (std::abs(row_sum) > kRowSumTol)
      throw std::invalid_argument("GeneratorMatrix: row sums must be 0");
  }
  if (n > 1 && !strongly_connected(rows_))
    throw std::invalid_argument("GeneratorMatrix: generator must be irreducible");
}

double GeneratorMatrix::max_epsilon() const {
  double max_exit = 0.0;
  for (int i = 0; i < num_regimes(); ++i)
    max_exit = std::max(max_exit, -rows_[i][i]);
  if (max_exit == 0.0) return 1.0;
  return 1.0 / max_exit;
}

Hypermodel::Hypermodel(GeneratorMatrix generator, double epsilon,
                       std::vector<double> initial_dist)
    : generator_(std::move(generator)),
      epsilon_(epsilon),
      initial_dist_(std::move(initial_dist)) {
  const int n = generator_.num_regimes();
  if (epsilon_ < 0.0 || epsilon_ > generator_.max_epsilon())
    throw std::invalid_argument(
        "Hypermodel: epsilon must be in [0, 1/max|q_ii|]");
  if (initial_dist_.empty())
    initial_dist_.assign(n, 1.0 / static_cast<double>(n));
  if (static_cast<int>(initial_dist_.size()) != n)
    throw std::invalid_argument("Hypermodel: initial distribution size");
  double total = 0.0;
  for (double p : initial_dist_) {
    if (p < 0.0) throw std::invalid_argument("Hypermodel: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("Hypermodel: initial distribution must sum to 1");

  transition_.assign(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      transition_[i][j] =
          (i == j ? 1.0 : 0.0) + epsilon_ * generator_.rate(i, j);
}

std::vector<std::vector<double>> Hypermodel::transition_matrix() const {
  return transition_;
}

void Hypermodel::reset(RandomSource& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  const int n = generator_.num_regimes();
  for (int i = 0; i + 1 < n; ++i) {
    cumulative += initial_dist_[i];
    if (u < cumulative) {
      current_ = i;
      return;
    }
  }
  current_ = n - 1;
}

void Hypermodel::set_current(int regime) {
  if (regime < 0 || regime >= generator_.num_regimes())
    throw std::invalid_argument("Hypermodel: regime out of range");
  current_ = regime;
}

int Hypermodel::step(RandomSource& rng) {
  const std::vector<double>& row = transition_[current_];
  const double u = rng.uniform();
  double cumulative = 0.0;
  const int n = static_cast<int>(row.size());
  for (int j = 0; j + 1 < n; ++j) {
    cumulative += row[j];
    if (u < cumulative) {
      current_ = j;
      return current_;
    }
  }
  current_ = n - 1;
  return current_;
}

int CtmcPath::regime_at(double t) const {
  // Last jump time <= t.
  auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - jump_times.begin());
  return regimes[idx == 0 ? 0 : idx - 1];
}

CtmcPath sample_ctmc_path(const GeneratorMatrix& generator, double horizon,
                          int initial, RandomSource& rng) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("sample_ctmc_path: horizon must be > 0");
  if (initial < 0 || initial >= generator.num_regimes())
    throw std::invalid_argument("sample_ctmc_path: initial regime out of range");

  CtmcPath path;
  path.horizon = horizon;
  path.jump_times.push_back(0.0);
  path.regimes.push_back(initial);

  double t = 0.0;
  int regime = initial;
  while (true) {
    const double exit_rate = -generator.rate(regime, regime);
    if (exit_rate <= 0.0) break;  // absorbing
    t += rng.exponential(exit_rate);
    if (t >= horizon) break;
    // Jump law over the other regimes, proportional to q_(regime, j).
    const double u = rng.uniform() * exit_rate;
    double cumulative = 0.0;
    int next = regime;
    for (int j = 0; j < generator.num_regimes(); ++j) {
      if (j == regime) continue;
      cumulative += generator.rate(regime, j);
      next = j;
      if (u < cumulative) break;
    }
    regime = next;
    path.jump_times.push_back(t);
    path.regimes.push_back(regime);
  }
  return path;
}

}  // namespace rsopt
