#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frogsim/geometry.hpp"
#include "frogsim/lattice_walk.hpp"

namespace frogsim {

enum class HitMethod { kExactDp, kMonteCarlo, kClosedForm };

std::string to_string(HitMethod m);

struct HittingEstimate {
  double value = 0.0;
  double se = 0.0;  // 0 for exact methods
  uint64_t n = 0;   // sample count (Monte Carlo only)
  int64_t horizon = 0;
  HitMethod method = HitMethod::kExactDp;
};

// Exact probability of hitting y within T steps, with the walk killed on
// leaving the box. Certified lower bound for the infinite-horizon hitting
// probability; monotone nondecreasing in T and under box enlargement.
HittingEstimate hit_prob_exact(const TransitionKernel& k, const Point& x, const Point& y,
                               const BoxWindow& box, int64_t T);

// d=1 gambler's ruin: 1 for targets at or to the right, (q/p)^{|delta|} to
// the left. delta is the signed displacement y - x.
double hit_prob_closed_form_d1(const TransitionKernel& k, int64_t delta);

// Fraction of N independent T-step walks from x that visit y. Trials use
// per-trial derived streams, so the result is independent of worker count.
HittingEstimate hit_prob_mc(const TransitionKernel& k, const Point& x, const Point& y, int64_t T,
                            uint64_t N, uint64_t seed, int workers = 1);

struct EpsBoundReport {
  double value = 0.0;   // certified estimate
  double bound = 0.0;   // epsilon^{d * |y-x|_inf}
  double epsilon = 0.0;
  int64_t linf = 0;
  bool pass = false;
};

// Crude lower bound f(x,y) >= eps^{d |y-x|_inf}, checked against a certified
// (exact-method) estimate.
EpsBoundReport check_eps_bound(const TransitionKernel& k, const Point& x, const Point& y,
                               const HittingEstimate& est);

struct DistanceProbePoint {
  int64_t n = 0;  // forward displacement y1 - x1
  Point target;
  int64_t horizon = 0;
  double f_hat = 0.0;
  double se = 0.0;
  double product = 0.0;        // f_hat * n^{(d-1)/2}
  double lower_product = 0.0;  // (f_hat - 3 se) * n^{(d-1)/2}
};

struct HtProbeReport {
  std::vector<DistanceProbePoint> points;
  double c1 = 0.0;  // min over points of lower_product
  double min_product = 0.0, max_product = 0.0;
  bool degenerate = false;  // some estimate came back exactly 0
  bool plateau() const { return max_product > 0.0 && min_product / max_product >= 0.5; }
};

// Forward-hitting scaling probe: targets y = n*e1 + floor(gamma sqrt n)*e2
// at each requested distance n, Monte-Carlo f(0,y) with horizon
// max(4n/a, 200), and the fitted constant c1 from the scaled products.
HtProbeReport ht_constant_probe(const TransitionKernel& k, double gamma,
                                const std::vector<int64_t>& distances, uint64_t N, uint64_t seed,
                                int workers = 1);

struct CltProbePoint {
  double t = 0.0;
  double p_hat = 0.0;
  double se = 0.0;
  double product = 0.0;  // p_hat * t^{(d-1)/2}
};

struct CltProbeReport {
  std::vector<CltProbePoint> points;
  double min_product = 0.0, max_product = 0.0;
  bool plateau() const { return max_product > 0.0 && min_product / max_product >= 0.5; }
};

// Point mass of the lateral CTRW coordinates: P((X_t^2..X_t^d) == offset),
// estimated at each time; the scaled products render the local-CLT lower
// bound. Requires |offset|_inf <= gamma sqrt(t) at every probed time.
CltProbeReport clt_lower_bound_probe(const TransitionKernel& k, const std::vector<double>& times,
                                     const Point& lateral_offset, double gamma, uint64_t N,
                                     uint64_t seed, int workers = 1);

struct LevelTimeQuantiles {
  double gamma1 = 0.0;  // lower quantile of tau / delta
  double gamma2 = 0.0;  // upper quantile of tau / delta
  double coverage = 0.0;  // fraction of fresh samples with tau/delta in [gamma1, gamma2]
  uint64_t unreached = 0;  // walks that never crossed the level within the horizon
};

// Empirical quantiles of the first-passage time of level x1 = delta, in
// units of delta. Reported rather than fixed: only their existence matters
// for the hitting bound.
LevelTimeQuantiles level_hit_time_quantiles(const TransitionKernel& k, int64_t delta, double q_lo,
                                            double q_hi, uint64_t N, uint64_t seed);

// CSV emission: one row per checked instance.
struct HitCsvRow {
  Point x, y;
  HittingEstimate est;
  std::string box;
  bool has_eps = false;  // the eps check applies to certified methods only
  EpsBoundReport eps;
};

void write_hit_csv(const std::string& path, const std::vector<HitCsvRow>& rows);

}  // namespace frogsim
