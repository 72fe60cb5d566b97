#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frogsim/lattice_walk.hpp"
#include "frogsim/site_config.hpp"

namespace frogsim {

// Inputs of the renormalization bound chain. c1 and b are existence-only
// constants upstream; here they carry fitted values from the hitting probe
// and the lower-tail fit, and every certificate is a function of them.
struct CascadeParams {
  int alpha = 3;
  int d = 2;
  int k = 2;        // start level, >= 2
  double c1 = 0.5;  // forward-hitting constant
  double c4 = 0.0;  // Chebyshev constant; c4_of(alpha, d) when <= 0
  double b = 0.1;   // lower-tail decay rate

  static double c_constant();               // 5/2 (1 - e^-2) - 2
  static double c4_of(int alpha, int d);    // c^-2 alpha^{2d}
  double effective_c4() const { return c4 > 0.0 ? c4 : c4_of(alpha, d); }
  static int min_alpha(double c1);          // max(3, ceil(1/c1))
  void validate() const;
};

// Forward box at level n: first coordinate in [ceil(3 a^{2n}/2), a^{2n+2}),
// lateral coordinates within a^n. Exact integer cardinality plus the
// real-valued display formula and the two-sided bounds the argument uses.
struct BoxF {
  int alpha = 0, n = 0, d = 0;
  int64_t x1_lo = 0, x1_hi = 0;  // inclusive
  int64_t lat_half = 0;
  int64_t exact_count = 0;
  double formula_value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool sandwich_ok = false;

  bool contains(const Point& x) const;
};

BoxF box_F(int alpha, int n, int d);

// Centered box |x|_inf <= alpha^{2n}.
struct BoxV {
  int alpha = 0, n = 0, d = 0;
  int64_t half = 0;
  int64_t count = 0;

  bool contains(const Point& x) const;
};

BoxV box_V(int alpha, int n, int d);

// 1 - prod_x (1 - f(x,y))^{eta_x}, evaluated in log space. Terms with
// eta == 0 contribute factor 1.
double zeta_mean_product(const std::vector<double>& f_hat, const std::vector<uint64_t>& eta);

// Bound chain for E[zeta_y] at cascade level i, under the conditioning
// surrogate that at least alpha^{(d+1)(k+i-1)} frogs sit in the reservoir.
// The strict fields evaluate the chain exactly as the inequalities compose;
// the display fields evaluate the looser exponent the final statement uses.
// Both are reported because they genuinely differ for d >= 2 at small k+i.
struct ZetaFloorReport {
  int i = 0;
  double x = 0.0;              // worst-case single-frog bound c1 * dmax^{-(d-1)/2}
  double log_count = 0.0;      // log alpha^{(d+1)(k+i-1)}
  double log_product_bound = 0.0;       // count * log1p(-x)
  double strict_floor = 0.0;            // 1 - (1-x)^count
  double strict_exponent = 0.0;         // x*count = c1 alpha^{2(k+i-d)}
  double display_exponent = 0.0;        // c1 alpha^{2(k+i-1)}
  double display_floor = 0.0;           // 1 - exp(-display_exponent)
  bool chain_step_ok = false;           // (1-x)^count <= exp(-x*count)
  bool display_dominates_strict = false;  // exp(-display) >= (1-x)^count
  bool floor_ok = false;                // display_floor >= 1 - e^-2
};

ZetaFloorReport zeta_floor_check(const CascadeParams& p, int i);

// Failure-probability bounds per level.
double gi1_failure_bound(const CascadeParams& p, int i);
double gi2_failure_bound(const CascadeParams& p, int i);  // min(1, 2 exp(-b a_i))
// Per-level combined bound in the summable (weakened) form that the
// certificate function integrates.
double gi_level_bound(const CascadeParams& p, int i);

// The covariance display and the exponent the derivation actually produces
// differ in arrangement; both are evaluated, neither is guessed away.
struct CovzetaForms {
  double display_form = 0.0;  // exp(-alpha^{k+2(i-1)})
  double derived_form = 0.0;  // exp(-c1 alpha^{2(k+i-1)})
};
CovzetaForms covzeta_bounds(const CascadeParams& p, int i);

struct CertificateReport {
  double g_value = 0.0;
  double certificate = 0.0;  // 1 - g
  bool vacuous = false;      // g >= 1
  double partial_sum = 0.0;  // sum of true level bounds to i_max plus closed tail
  bool coherent = false;     // partial_sum <= g + tolerance
};

// Evaluates the closed-form g at x = k and checks it dominates the summed
// per-level failure bounds.
CertificateReport g_of_k(const CascadeParams& p, int k, int i_max = 64);

// Smallest k in [2, k_max] with g(k) < target_g; -1 when none qualifies.
int smallest_k_below(const CascadeParams& p, double target_g, int k_max);

// Per-level summary row for CSV emission.
struct LevelRow {
  int n = 0;
  int64_t exact = 0;
  double formula = 0.0, lower = 0.0, upper = 0.0;
};

void write_level_csv(const std::string& path, const std::vector<LevelRow>& rows);

struct AkLevelStats {
  int k = 0;
  uint64_t threshold = 0;     // alpha^{(d+1)(k-1)}
  uint64_t block_size = 0;    // l_k of the path-block construction
  uint64_t n_seeds = 0;       // seeds whose path completed block k
  uint64_t n_short = 0;       // seeds with too short a path for block k
  double full_freq = 0.0;     // some path vertex in V_k \ V_{k-1} exceeds
  double block_freq = 0.0;    // some L_k vertex exceeds
  double oracle = 0.0;        // 1 - (1 - p)^{l_k}, p from the survival law
  double oracle_se = 0.0;     // binomial se of block_freq around the oracle
};

struct AkProbeReport {
  std::vector<AkLevelStats> levels;
  int64_t horizon = 0;
};

// Monte-Carlo frequency of the reservoir-seeding event: walks the initial
// frog, builds the fresh-vertex blocks L_i on its path, and checks the
// per-level frog-count thresholds against the site field.
AkProbeReport ak_frequency_probe(const TransitionKernel& kernel, const SiteDistribution& dist,
                                 int alpha, int k_max, int64_t horizon,
                                 const std::vector<uint64_t>& seeds);

}  // namespace frogsim
