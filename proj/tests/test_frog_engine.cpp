#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "frogsim/frog_engine.hpp"
#include "frogsim/stats.hpp"

using namespace frogsim;

namespace {

SimConfig base_config(int d, double a, double lam, int64_t half, int64_t T, uint64_t seed,
                      SiteDistribution dist) {
  SimConfig cfg;
  cfg.kernel = make_drift_kernel(d, a, lam);
  cfg.field = SiteField{seed, dist};
  cfg.window = BoxWindow::centered(d, half);
  cfg.horizon = T;
  cfg.master_seed = seed;
  return cfg;
}

SimConfig random_config(uint64_t tag, bool heavy_ok) {
  Stream gen(derive_key(0xC0FFEE, tag));
  const int d = 1 + static_cast<int>(gen.next_u64() % 2);
  const double a = 0.15 + 0.35 * gen.next_double();
  const double lam = d == 1 ? 0.0 : 0.15 + 0.5 * gen.next_double() * (0.8 - a);
  const int64_t half = 3 + static_cast<int64_t>(gen.next_u64() % 6);
  const int64_t T = 10 + static_cast<int64_t>(gen.next_u64() % 50);
  const uint64_t seed = gen.next_u64();
  SiteDistribution dist = SiteDistribution::deterministic(gen.next_u64() % 3);
  const uint64_t pick = gen.next_u64() % (heavy_ok ? 3 : 2);
  if (pick == 1) dist = SiteDistribution::geometric(0.3 + 0.4 * gen.next_double());
  SimConfig cfg = base_config(d, a, lam, half, T, seed, dist);
  if (pick == 2) {
    cfg.field.dist = SiteDistribution::exp_pareto(2.0);
    cfg.site_frog_cap = 50;  // keeps heavy counts walkable; applied identically by both engines
  }
  return cfg;
}

// Independent re-walk of one frog's trajectory using the public sampling API.
std::vector<Point> replay_frog(const SimConfig& cfg, const Point& site, uint64_t index) {
  Stream s(derive_key(cfg.master_seed, stream_domain::kFrogPath, encode_site(site), index));
  return walk_sample(cfg.kernel, site, cfg.horizon, s).visited();
}

}  // namespace

TEST_CASE("no sleeping frogs: the report is the single walk of the initial frog") {
  auto cfg = base_config(1, 0.2, 0.0, 30, 200, 42, SiteDistribution::deterministic(0));
  const auto rep = run_closure(cfg);
  CHECK(rep.total_frogs == 1);
  CHECK(rep.awakened_sites == std::vector<Point>{{0}});
  // oracle: count visits of the replayed walk directly
  uint64_t visits = 0;
  for (const auto& p : replay_frog(cfg, {0}, 0))
    if (p[0] == 0) ++visits;
  CHECK(rep.origin_visits == visits);
  CHECK(rep.origin_visits >= 1);
  const auto step = run_stepwise(cfg);
  CHECK(reports_equivalent(rep, step));
}

TEST_CASE("window of just the origin never awakens anything") {
  for (const auto& dist : {SiteDistribution::deterministic(5), SiteDistribution::exp_pareto(0.5)}) {
    auto cfg = base_config(2, 0.3, 0.4, 0, 40, 7, dist);  // half-width 0: {0}^2
    const auto rep = run_closure(cfg);
    CHECK(rep.awakened_sites == std::vector<Point>{{0, 0}});
    CHECK(rep.total_frogs == 1);
    CHECK(rep.window_hit);  // the walk leaves immediately
  }
}

TEST_CASE("stepwise with zero horizon: one visit, no awakenings") {
  auto cfg = base_config(1, 0.2, 0.0, 10, 0, 5, SiteDistribution::deterministic(3));
  const auto step = run_stepwise(cfg);
  CHECK(step.origin_visits == 1);
  CHECK(step.total_frogs == 1);
  CHECK(step.awakened_sites == std::vector<Point>{{0}});
  CHECK(reports_equivalent(step, run_closure(cfg)));
}

TEST_CASE("strong right drift with one frog per site awakens a right ray") {
  int ray_ok = 0;
  for (uint64_t seed = 1; seed <= 100; ++seed) {
    auto cfg = base_config(1, 0.98, 0.0, 0, 50, seed, SiteDistribution::deterministic(1));
    cfg.window = BoxWindow::of({-5}, {100});
    const auto closure = run_closure(cfg);
    const auto step = run_stepwise(cfg);
    CHECK(reports_equivalent(closure, step));
    // the initial frog alone drifts ~49-50 right; sites 0..30 form a ray
    std::set<Point> awakened(closure.awakened_sites.begin(), closure.awakened_sites.end());
    bool ray = true;
    for (int64_t x = 1; x <= 30; ++x) ray &= awakened.count({x}) > 0;
    ray_ok += ray ? 1 : 0;
  }
  CHECK(ray_ok >= 99);  // P(a 0.99-walk backtracks enough to break the ray) is tiny
}

TEST_CASE("closure and stepwise engines agree on random configs") {
  for (uint64_t tag = 0; tag < 25; ++tag) {
    const auto cfg = random_config(tag, true);
    const auto a = run_closure(cfg, 2);
    const auto b = run_stepwise(cfg);
    CAPTURE(tag);
    CHECK(reports_equivalent(a, b));
    CHECK(a.cap_hit == b.cap_hit);
    CHECK(a.site_cap_hit == b.site_cap_hit);
  }
}

TEST_CASE("closure is deterministic across repeats and worker counts") {
  const auto cfg = random_config(1001, true);
  const auto ref = run_closure(cfg, 1);
  for (int workers : {1, 2, 8}) {
    const auto rep = run_closure(cfg, workers);
    CHECK(rep.awakened_sites == ref.awakened_sites);
    CHECK(rep.origin_visits == ref.origin_visits);
    CHECK(rep.total_frogs == ref.total_frogs);
    CHECK(rep.frontier_history == ref.frontier_history);
    CHECK(rep.window_hit == ref.window_hit);
  }
}

TEST_CASE("closure output is closed and reachable (fixed-point audit)") {
  const auto cfg = base_config(1, 0.3, 0.0, 12, 40, 2024, SiteDistribution::geometric(0.5));
  const auto rep = run_closure(cfg);
  std::set<Point> awakened(rep.awakened_sites.begin(), rep.awakened_sites.end());
  REQUIRE(awakened.count(origin_point(1)) == 1);

  // closedness: every window site holding frogs that an admitted frog
  // visits is awakened; idempotence: recomputing changes nothing
  for (const auto& site : rep.awakened_sites) {
    const uint64_t n = is_origin(site) ? 1 : std::min(cfg.field.site_value(site), cfg.site_frog_cap);
    for (uint64_t i = 0; i < n; ++i)
      for (const auto& p : replay_frog(cfg, site, i))
        if (cfg.window.contains(p) && !is_origin(p) && cfg.field.site_value(p) > 0)
          CHECK(awakened.count(p) == 1);
  }
  const auto again = run_closure(cfg);
  CHECK(again.awakened_sites == rep.awakened_sites);
  CHECK(again.origin_visits == rep.origin_visits);
}

TEST_CASE("awakened sets are monotone in the window") {
  for (uint64_t tag = 0; tag < 20; ++tag) {
    auto cfg = random_config(tag + 300, false);
    auto small = cfg;
    small.window = BoxWindow::centered(cfg.kernel.d, 3);
    auto large = cfg;
    large.window = BoxWindow::centered(cfg.kernel.d, 9);
    const auto rs = run_closure(small);
    const auto rl = run_closure(large);
    std::set<Point> big(rl.awakened_sites.begin(), rl.awakened_sites.end());
    for (const auto& p : rs.awakened_sites) {
      CAPTURE(tag);
      CHECK(big.count(p) == 1);
    }
  }
}

TEST_CASE("origin visits are nondecreasing in the horizon") {
  for (uint64_t tag = 0; tag < 20; ++tag) {
    auto cfg = random_config(tag + 600, false);
    auto lo = cfg;
    lo.horizon = 25;
    auto hi = cfg;
    hi.horizon = 50;
    CHECK(run_closure(lo).origin_visits <= run_closure(hi).origin_visits);
  }
}

TEST_CASE("frog cap truncates deterministically and flags the run") {
  auto cfg = base_config(1, 0.2, 0.0, 20, 60, 99, SiteDistribution::deterministic(10));
  cfg.frog_cap = 25;
  const auto a = run_closure(cfg, 1);
  const auto b = run_closure(cfg, 8);
  CHECK(a.cap_hit);
  CHECK(a.total_frogs == 25);
  CHECK(a.awakened_sites == b.awakened_sites);
  CHECK(a.origin_visits == b.origin_visits);
}

TEST_CASE("per-site cap admits min(eta, cap) frogs") {
  auto cfg = base_config(1, 0.4, 0.0, 6, 80, 17, SiteDistribution::deterministic(5));
  cfg.site_frog_cap = 3;
  const auto rep = run_closure(cfg);
  CHECK(rep.site_cap_hit);
  // every non-origin awakened site admits exactly 3 of its 5 frogs
  CHECK(rep.total_frogs == 1 + 3 * (rep.awakened_sites.size() - 1));
  CHECK(reports_equivalent(rep, run_stepwise(cfg)));
}

TEST_CASE("phase scan: a zero field is window-independent") {
  const auto k = make_drift_kernel(1, 0.2, 0.0);
  std::vector<uint64_t> seeds;
  for (uint64_t s = 1; s <= 40; ++s) seeds.push_back(s);
  const auto table = phase_scan(k, {SiteDistribution::deterministic(0)}, {4, 16}, 4.0, seeds,
                                1000000, ~0ULL, 2);
  // same seeds, same initial-frog streams: the per-seed visit counts are
  // reproduced exactly at both windows (the lone walk never awakens anyone)
  CHECK(table.cell("det:0", 4).mean == table.cell("det:0", 16).mean);
  CHECK(table.cell("det:0", 4).se == table.cell("det:0", 16).se);
}

TEST_CASE("phase scan: heavy field grows with the window, light saturates (mini)") {
  const auto k = make_drift_kernel(1, 0.2, 0.0);
  std::vector<uint64_t> seeds;
  for (uint64_t s = 0; s < 60; ++s) seeds.push_back(derive_key(31415, s));
  const auto table =
      phase_scan(k, {SiteDistribution::exp_pareto(0.5), SiteDistribution::geometric(0.5)}, {8, 32},
                 4.0, seeds, 10000000, 100, 2);
  const auto& h_lo = table.cell("exppareto:0.500000", 8);
  const auto& h_hi = table.cell("exppareto:0.500000", 32);
  const auto& g_lo = table.cell("geom:0.500000", 8);
  const auto& g_hi = table.cell("geom:0.500000", 32);
  CHECK(h_hi.mean - h_lo.mean > 3.0 * std::sqrt(h_hi.se * h_hi.se + h_lo.se * h_lo.se));
  CHECK(h_hi.mean > 2.0 * h_lo.mean);  // growth, not a marginal bump
  CHECK(std::abs(g_hi.mean - g_lo.mean) <= 3.0 * std::sqrt(g_hi.se * g_hi.se + g_lo.se * g_lo.se));
}
