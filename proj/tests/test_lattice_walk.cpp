#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "frogsim/lattice_walk.hpp"
#include "frogsim/stats.hpp"

using namespace frogsim;

TEST_CASE("drift kernel parametrization") {
  const auto k1 = make_drift_kernel(1, 0.2, 0.0);
  CHECK(k1.p_up(0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(k1.p_down(0) == doctest::Approx(0.4).epsilon(1e-14));

  const auto k2 = make_drift_kernel(2, 0.2, 0.5);
  CHECK(k2.p_up(0) == doctest::Approx(0.35).epsilon(1e-14));
  CHECK(k2.p_down(0) == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(k2.p_up(1) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(k2.p_down(1) == doctest::Approx(0.25).epsilon(1e-14));

  CHECK_THROWS_AS(make_drift_kernel(2, 0.2, 0.9), std::invalid_argument);  // p(-e1) < 0
  CHECK_THROWS_AS(make_drift_kernel(1, 1.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_drift_kernel(1, 0.2, 0.1), std::invalid_argument);  // d=1 lateral
  CHECK_THROWS_AS(make_drift_kernel(2, 0.2, 0.0), std::invalid_argument);  // zero-prob lateral
}

TEST_CASE("drift vector equals a*e1") {
  for (const auto& [d, a, lam] : std::vector<std::tuple<int, double, double>>{
           {2, 0.2, 0.5}, {1, 0.5, 0.0}, {3, 0.1, 0.6}}) {
    const auto k = make_drift_kernel(d, a, lam);
    const auto m = drift_of(k);
    CHECK(m[0] == doctest::Approx(a).epsilon(1e-13));
    for (size_t j = 1; j < m.size(); ++j) CHECK(std::abs(m[j]) < 1e-12);
    double sum = 0;
    for (double p : k.prob) {
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("walk_sample basics") {
  const auto k = make_drift_kernel(1, 0.2, 0.0);
  Stream s(derive_key(7, 1));
  const auto tr = walk_sample(k, {0}, 0, s);
  CHECK(tr.horizon() == 0);
  CHECK(tr.visited().size() == 1);
  CHECK(tr.visited()[0] == Point{0});
}

TEST_CASE("streams have the prefix property and derived keys separate") {
  Stream a(derive_key(5, 7)), b(derive_key(5, 7));
  std::vector<uint64_t> long_run(100), short_run(50);
  for (auto& v : long_run) v = a.next_u64();
  for (auto& v : short_run) v = b.next_u64();
  for (size_t i = 0; i < short_run.size(); ++i) CHECK(long_run[i] == short_run[i]);

  Stream c(derive_key(5, 8));
  bool differs = false;
  for (int i = 0; i < 16; ++i) differs |= c.next_u64() != long_run[static_cast<size_t>(i)];
  CHECK(differs);
}

TEST_CASE("walk_sample is reproducible for equal stream state") {
  const auto k = make_drift_kernel(2, 0.3, 0.4);
  Stream s1(derive_key(99, 5)), s2(derive_key(99, 5));
  const auto a = walk_sample(k, {1, -2}, 500, s1);
  const auto b = walk_sample(k, {1, -2}, 500, s2);
  CHECK(a.steps == b.steps);
}

TEST_CASE("trajectory reconstruction is a bijection") {
  const auto k = make_drift_kernel(2, 0.2, 0.5);
  Stream s(derive_key(3, 11));
  const auto tr = walk_sample(k, {2, 3}, 200, s);
  const auto vis = tr.visited();
  REQUIRE(vis.size() == 201);
  CHECK(vis.front() == Point{2, 3});
  // invert: successive differences recover the step list
  for (size_t t = 0; t + 1 < vis.size(); ++t) {
    int64_t moved = 0;
    for (size_t j = 0; j < 2; ++j) moved += std::abs(vis[t + 1][j] - vis[t][j]);
    CHECK(moved == 1);
    const int dir = tr.steps[t];
    CHECK(vis[t + 1][TransitionKernel::axis_of(dir)] - vis[t][TransitionKernel::axis_of(dir)] ==
          TransitionKernel::delta_of(dir));
  }
}

TEST_CASE("strong drift mean displacement matches CLT") {
  // p(+) = 0.99: mean per step 0.98, var per step 1 - 0.98^2
  const auto k = make_drift_kernel(1, 0.98, 0.0);
  const int64_t T = 10;
  const uint64_t N = 100000;
  double sum = 0;
  for (uint64_t i = 0; i < N; ++i) {
    Stream s(derive_key(1234, i));
    const auto tr = walk_sample(k, {0}, T, s);
    sum += static_cast<double>(tr.visited().back()[0]);
  }
  const double mean = sum / static_cast<double>(N);
  const double step_var = 1.0 - 0.98 * 0.98;
  const double se = std::sqrt(step_var * static_cast<double>(T) / static_cast<double>(N));
  CHECK(std::abs(mean - 9.8) <= 3.0 * se);
}

TEST_CASE("empirical direction frequencies match kernel probabilities") {
  const auto k = make_drift_kernel(2, 0.2, 0.5);
  const uint64_t N = 1000000;
  std::vector<uint64_t> counts(4, 0);
  Stream s(derive_key(42, 0));
  for (uint64_t i = 0; i < N; ++i) ++counts[static_cast<size_t>(sample_direction(k, s))];
  for (int dir = 0; dir < 4; ++dir) {
    const double p = k.prob[static_cast<size_t>(dir)];
    const double freq = static_cast<double>(counts[static_cast<size_t>(dir)]) / static_cast<double>(N);
    CHECK(std::abs(freq - p) <= 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(N)));
  }
}

TEST_CASE("ctrw at time zero is the start") {
  const auto k = make_drift_kernel(3, 0.1, 0.6);
  Stream s(derive_key(5, 5));
  CHECK(ctrw_walk_state(k, {1, 2, 3}, 0.0, s) == Point{1, 2, 3});
}

TEST_CASE("ctrw first-coordinate mean is start + a*t") {
  const auto k = make_drift_kernel(2, 0.2, 0.5);
  const double t = 25.0;
  const uint64_t N = 100000;
  double sum = 0;
  for (uint64_t i = 0; i < N; ++i) {
    Stream s(derive_key(77, i));
    sum += static_cast<double>(ctrw_walk_state(k, {0, 0}, t, s)[0]);
  }
  const double mean = sum / static_cast<double>(N);
  // Var X1(t) = t * (p(+e1) + p(-e1)) for the compensated compound Poisson
  const double var = t * (k.p_up(0) + k.p_down(0));
  const double se = std::sqrt(var / static_cast<double>(N));
  CHECK(std::abs(mean - 0.2 * t) <= 3.0 * se);
}

TEST_CASE("ctrw lateral coordinates are uncorrelated") {
  const auto k = make_drift_kernel(3, 0.1, 0.6);
  const double t = 30.0;
  const uint64_t N = 100000;
  double s2 = 0, s3 = 0, s23 = 0, ss2 = 0, ss3 = 0;
  for (uint64_t i = 0; i < N; ++i) {
    Stream s(derive_key(88, i));
    const auto p = ctrw_walk_state(k, {0, 0, 0}, t, s);
    const double a = static_cast<double>(p[1]), b = static_cast<double>(p[2]);
    s2 += a;
    s3 += b;
    s23 += a * b;
    ss2 += a * a;
    ss3 += b * b;
  }
  const double n = static_cast<double>(N);
  const double cov = s23 / n - (s2 / n) * (s3 / n);
  const double v2 = ss2 / n - (s2 / n) * (s2 / n);
  const double v3 = ss3 / n - (s3 / n) * (s3 / n);
  // se of the sample covariance of independent coordinates
  const double se = std::sqrt(v2 * v3 / n);
  CHECK(std::abs(cov) <= 3.0 * se);
}
