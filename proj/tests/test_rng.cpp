#include <cmath>
#include <vector>

#include "doctest.h"
#include "rsopt/rng.hpp"

using rsopt::RandomSource;

TEST_CASE("identical seed and stream reproduce the sequence") {
  RandomSource a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("streams and derived streams differ") {
  RandomSource a(42, 0), b(42, 1), c(43, 0);
  CHECK(a.next_u64() != b.next_u64());
  CHECK(RandomSource(42, 0).next_u64() != c.next_u64());

  RandomSource base(42, 0);
  RandomSource d1 = base.derive(1), d2 = base.derive(2);
  CHECK(d1.next_u64() != d2.next_u64());
}

TEST_CASE("uniform moments") {
  RandomSource rng(1);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
    sq += u * u;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(var - 1.0 / 12.0) < 0.002);
}

TEST_CASE("uniform_below stays in range and covers it") {
  RandomSource rng(2);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto v = rng.uniform_below(7);
    REQUIRE(v < 7);
    ++counts[static_cast<int>(v)];
  }
  for (int c : counts) CHECK(c > 9000);  // expected 10000 each
}

TEST_CASE("normal and exponential moments") {
  RandomSource rng(3);
  const int n = 200000;
  double sum = 0.0, sq = 0.0, esum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
    esum += rng.exponential(0.5);
  }
  CHECK(std::abs(sum / n) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  CHECK(std::abs(esum / n - 2.0) < 3.0 * 2.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("replication streams are pairwise uncorrelated (smoke)") {
  const int n = 100000;
  for (int pair = 0; pair < 3; ++pair) {
    RandomSource a(99, static_cast<std::uint64_t>(2 * pair));
    RandomSource b(99, static_cast<std::uint64_t>(2 * pair + 1));
    double sum_ab = 0.0, sum_a = 0.0, sum_b = 0.0, sq_a = 0.0, sq_b = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = a.uniform(), y = b.uniform();
      sum_ab += x * y;
      sum_a += x;
      sum_b += y;
      sq_a += x * x;
      sq_b += y * y;
    }
    const double cov = sum_ab / n - (sum_a / n) * (sum_b / n);
    const double var_a = sq_a / n - (sum_a / n) * (sum_a / n);
    const double var_b = sq_b / n - (sum_b / n) * (sum_b / n);
    const double corr = cov / std::sqrt(var_a * var_b);
    CHECK(std::abs(corr) < 3.0 / std::sqrt(static_cast<double>(n)));
  }
}
