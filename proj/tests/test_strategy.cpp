#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "rsopt/rng.hpp"
#include "rsopt/strategy.hpp"

using namespace rsopt;

namespace {

BeliefVector make_beliefs(std::vector<double> values, double gamma,
                          double mu = 0.01) {
  BeliefVector b;
  b.values = std::move(values);
  b.step_size = mu;
  b.exploration = gamma;
  return b;
}

std::vector<double> random_beliefs(int n, RandomSource& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
  return v;
}

}  // namespace

TEST_CASE("equal beliefs give the uniform strategy") {
  for (double c : {-5.0, 0.0, 3.25}) {
    for (double gamma : {0.01, 1.0}) {
      const auto dist = smooth_best_response(make_beliefs({c, c, c}, gamma));
      for (double p : dist.probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-14));
    }
  }
}

TEST_CASE("two-state logit value") {
  const auto dist = smooth_best_response(make_beliefs({0.0, 1.0}, 1.0));
  CHECK(std::abs(dist.probs[0] - 0.7310585786) < 1e-6);
  CHECK(std::abs(dist.probs[1] - 0.2689414214) < 1e-6);
}

TEST_CASE("logit matches the numeric simplex minimizer") {
  const std::vector<double> f{0.2, 0.9, 0.4};
  const double gamma = 0.1;
  const auto dist = smooth_best_response(make_beliefs(f, gamma));
  const auto oracle = testing::minimize_entropy_perturbed(f, gamma);
  for (std::size_t i = 0; i < f.size(); ++i)
    CHECK(std::abs(dist.probs[i] - oracle[i]) < 1e-6);
}

TEST_CASE("logit matches the minimizer across sizes and temperatures") {
  RandomSource rng(2024);
  int cases = 0;
  for (int s : {2, 5, 10}) {
    for (double gamma : {0.01, 0.1, 1.0}) {
      for (int rep = 0; rep < 4; ++rep) {
        const std::vector<double> f = random_beliefs(s, rng);
        const auto dist = smooth_best_response(make_beliefs(f, gamma));
        const auto oracle = testing::minimize_entropy_perturbed(f, gamma);
        for (int i = 0; i < s; ++i)
          CHECK(std::abs(dist.probs[static_cast<std::size_t>(i)] -
                         oracle[static_cast<std::size_t>(i)]) < 1e-6);
        // The closed form should never do worse on the objective itself.
        CHECK(testing::entropy_objective(dist.probs, f, gamma) <=
              testing::entropy_objective(oracle, f, gamma) + 1e-10);
        ++cases;
      }
    }
  }
  CHECK(cases == 36);

  // Second, structurally different route for the two-state case.
  for (int rep = 0; rep < 10; ++rep) {
    const std::vector<double> f = random_beliefs(2, rng);
    const auto dist = smooth_best_response(make_beliefs(f, 0.3));
    const auto oracle = testing::minimize_entropy_perturbed_2state(f, 0.3);
    CHECK(std::abs(dist.probs[0] - oracle[0]) < 1e-6);
  }
}

TEST_CASE("shift invariance") {
  RandomSource rng(7);
  const std::vector<double> f = random_beliefs(6, rng);
  for (double c : {1e6, -1e6, 123.456}) {
    auto shifted = f;
    for (double& x : shifted) x += c;
    const auto base = smooth_best_response(make_beliefs(f, 0.05));
    const auto moved = smooth_best_response(make_beliefs(shifted, 0.05));
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(std::abs(base.probs[i] - moved.probs[i]) < 1e-12);
  }
}

TEST_CASE("interior lower bound and normalization") {
  RandomSource rng(8);
  for (int rep = 0; rep < 50; ++rep) {
    const int s = 2 + static_cast<int>(rng.uniform_below(9));
    const std::vector<double> f = random_beliefs(s, rng);
    const double gamma = 0.05 + rng.uniform();
    const auto dist = smooth_best_response(make_beliefs(f, gamma));
    double total = 0.0, smallest = 1.0;
    const double lo = *std::min_element(f.begin(), f.end());
    const double hi = *std::max_element(f.begin(), f.end());
    for (double p : dist.probs) {
      CHECK(p > 0.0);
      total += p;
      smallest = std::min(smallest, p);
    }
    CHECK(std::abs(total - 1.0) < 1e-12);
    CHECK(smallest >= std::exp(-(hi - lo) / gamma) / s * (1.0 - 1e-12));
  }
}

TEST_CASE("lowering a belief raises its probability") {
  const std::vector<double> f{0.3, -0.2, 0.1};
  const auto base = smooth_best_response(make_beliefs(f, 0.2));
  auto lower = f;
  lower[0] -= 0.05;
  const auto moved = smooth_best_response(make_beliefs(lower, 0.2));
  CHECK(moved.probs[0] > base.probs[0]);
  CHECK(moved.probs[1] < base.probs[1]);
}

TEST_CASE("invalid inputs are rejected") {
  CHECK_THROWS_AS(smooth_best_response(
                      make_beliefs({0.0, std::nan("")}, 0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(smooth_best_response(make_beliefs(
                      {0.0, std::numeric_limits<double>::infinity()}, 0.1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(smooth_best_response(make_beliefs({0.0, 1.0}, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("inverse-CDF sampling") {
  SamplingDistribution nearly_point{{1.0 - 2e-12, 1e-12, 1e-12}};
  CHECK(quantile_state(nearly_point, 0.5) == 0);
  SamplingDistribution half{{0.5, 0.5}};
  CHECK(quantile_state(half, 0.75) == 1);
  CHECK(quantile_state(half, 0.25) == 0);

  // Exactly one uniform consumed per draw.
  RandomSource a(5, 1), b(5, 1);
  sample_state(half, a);
  b.uniform();
  CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("empirical sampling frequencies match the distribution") {
  SamplingDistribution dist{{0.2, 0.3, 0.5}};
  RandomSource rng(11);
  const int n = 1000000;
  std::vector<int> counts(3, 0);
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(sample_state(dist, rng))];
  for (int i = 0; i < 3; ++i) {
    const double p = dist.probs[static_cast<std::size_t>(i)];
    const double se = std::sqrt(p * (1.0 - p) / n);
    CHECK(std::abs(counts[static_cast<std::size_t>(i)] / static_cast<double>(n) - p) <
          3.0 * se);
  }
}

TEST_CASE("belief update recursion") {
  SamplingDistribution dist{{0.25, 0.25, 0.5}};

  SUBCASE("zero observation decays every entry") {
    const auto b = make_beliefs({0.5, -0.2, 0.3}, 0.1, 0.02);
    const auto next = belief_update(b, 1, 0.0, dist);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(next.values[i] == doctest::Approx(0.98 * b.values[i]).epsilon(1e-14));
  }

  SUBCASE("direct evaluation") {
    const auto b = make_beliefs({0.0, 0.0, 0.0}, 0.1, 0.01);
    const auto next = belief_update(b, 2, 1.0, dist);
    CHECK(next.values[2] == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(next.values[0] == 0.0);
    CHECK(next.values[1] == 0.0);
  }

  SUBCASE("mu = 1 replaces beliefs with the weighted observation") {
    const auto b = make_beliefs({0.4, -0.8, 0.1}, 0.1, 1.0);
    const auto next = belief_update(b, 0, -0.5, dist);
    CHECK(next.values[0] == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(next.values[1] == 0.0);
    CHECK(next.values[2] == 0.0);
  }

  SUBCASE("degenerate probability is rejected") {
    SamplingDistribution bad{{1.0 - 1e-301, 1e-301}};
    const auto b = make_beliefs({0.0, 0.0}, 0.1, 0.01);
    CHECK_THROWS_AS(belief_update(b, 1, 0.5, bad), DegenerateProbabilityError);
  }
}

TEST_CASE("decreasing schedules") {
  const auto s0 = decreasing_schedules(0, 0.2);
  CHECK(s0.mu == 1.0);
  CHECK(s0.gamma == 1.0);

  const auto s99 = decreasing_schedules(99, 0.2);
  CHECK(s99.mu == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(s99.gamma == doctest::Approx(std::pow(99.0, -0.2)).epsilon(1e-12));
  CHECK(std::abs(s99.gamma - 0.3989) < 1e-3);

  const auto s9999 = decreasing_schedules(9999, 0.2);
  CHECK(s9999.mu == doctest::Approx(1e-4).epsilon(1e-14));
  CHECK(s9999.gamma == doctest::Approx(std::pow(9999.0, -0.2)).epsilon(1e-12));
  CHECK(std::abs(s9999.gamma - 0.158493) < 1e-5);

  CHECK_THROWS_AS(decreasing_schedules(5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(decreasing_schedules(5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(decreasing_schedules(-1, 0.5), std::invalid_argument);
}

TEST_CASE("entropy perturbation bound and concavity") {
  EntropyPerturbation rho;
  RandomSource rng(13);
  for (int s : {2, 3, 10}) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> p(static_cast<std::size_t>(s));
      double total = 0.0;
      for (double& x : p) total += (x = rng.uniform() + 1e-3);
      for (double& x : p) x /= total;
      const double h = rho.evaluate(p);
      CHECK(h >= 0.0);
      CHECK(h <= std::log(static_cast<double>(s)) + 1e-12);
    }
  }
  // Strict concavity at a midpoint.
  const std::vector<double> a{0.9, 0.1}, b{0.2, 0.8}, mid{0.55, 0.45};
  CHECK(rho.evaluate(mid) > 0.5 * (rho.evaluate(a) + rho.evaluate(b)) + 1e-6);
}
