#pragma once

#include <vector>

#include "rsopt/rng.hpp"

namespace rsopt {

/// Generator of a continuous-time Markov chain over regimes: nonnegative
/// off-diagonals, |entries| <= 1, zero row sums, irreducible. Validated at
/// construction.
class GeneratorMatrix {
 public:
  explicit GeneratorMatrix(std::vector<std::vector<double>> rows);

  int num_regimes() const { return static_cast<int>(rows_.size()); }
  double rate(int from, int to) const { return rows_[from][to]; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }

  /// Largest admissible epsilon such that I + eps*Q is stochastic.
  double max_epsilon() const;

 private:
  std::vector<std::vector<double>> rows_;
};

/// The slow Markov chain driving regime switches. Steps with transition
/// matrix I + eps*Q; hidden from the algorithms, owned by the harness.
class Hypermodel {
 public:
  Hypermodel(GeneratorMatrix generator, double epsilon,
             std::vector<double> initial_dist = {});

  const GeneratorMatrix& generator() const { return generator_; }
  double epsilon() const { return epsilon_; }
  int current() const { return current_; }

  /// Elementwise I + eps*Q.
  std::vector<std::vector<double>> transition_matrix() const;

  /// Draw the initial regime from the initial distribution.
  void reset(RandomSource& rng);

  /// For scripted scenarios: pin the regime directly.
  void set_current(int regime);

  /// Advance one step from the current regime; returns the new regime.
  int step(RandomSource& rng);

 private:
  GeneratorMatrix generator_;
  double epsilon_;
  std::vector<double> initial_dist_;
  std::vector<std::vector<double>> transition_;  // cached I + eps*Q
  int current_ = 0;
};

/// Piecewise-constant regime path of a continuous-time Markov chain.
struct CtmcPath {
  std::vector<double> jump_times;  // strictly increasing, first entry 0
  std::vector<int> regimes;        // regime on [jump_times[k], jump_times[k+1])
  double horizon = 0.0;

  int regime_at(double t) const;
  int num_jumps() const { return static_cast<int>(jump_times.size()) - 1; }
};

/// Sample a CTMC trajectory on [0, horizon]: exponential holding times with
/// rate |q_tt| and jump law q_tt'/|q_tt|. A regime with zero exit rate is
/// absorbing.
CtmcPath sample_ctmc_path(const GeneratorMatrix& generator, double horizon,
                          int initial, RandomSource& rng);

}  // namespace rsopt
