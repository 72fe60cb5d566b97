#pragma once

#include <cstdint>
#include <vector>

#include "frogsim/rng.hpp"
#include "frogsim/site_config.hpp"

namespace frogsim {

// Disjoint blocks with geometrically growing sizes l_i >= c2 * beta^{c3 i},
// blocks logically indexed i = 1..size().
struct BlockPlan {
  std::vector<uint64_t> sizes;
  double c2 = 1.0, c3 = 1.0, beta = 2.0;

  int count() const { return static_cast<int>(sizes.size()); }
  uint64_t size_of(int i) const { return sizes[static_cast<size_t>(i - 1)]; }  // i is 1-based
  uint64_t total() const;
  void validate() const;  // growth condition and positivity

  static BlockPlan geometric(double c2, double c3, double beta, int blocks);
};

struct ExceedanceBlock {
  int i = 0;
  uint64_t l = 0;
  double log_threshold = 0.0;  // c * beta^{c3 i / r}
  double log_max = 0.0;        // log M_i; -inf for an all-zero block
  bool exceeded = false;
};

struct ExceedanceTrace {
  std::vector<ExceedanceBlock> blocks;
  double c = 0.0, r = 0.0;
  int exceed_count(int from_block) const;  // # exceedances with i >= from_block
};

// Samples l_i i.i.d. values per block and compares block maxima against the
// thresholds exp(c beta^{c3 i / r}). All in log space: thresholds at i = 64,
// beta = 16 overflow any floating exp, their logs do not.
ExceedanceTrace exceedance_trace(const SiteDistribution& dist, const BlockPlan& plan, double c,
                                 double r, Stream& s);

// Exact per-block exceedance probability 1 - (1 - p_i)^{l_i} from the
// distribution's survival function; the numeric oracle for trace tests.
double block_exceedance_prob(const SiteDistribution& dist, const BlockPlan& plan, double c,
                             double r, int i);

// Union bound sum_{i in [from, to]} l_i P(Y >= theta_i): the Borel-Cantelli
// budget for the convergent direction.
double exceedance_union_bound(const SiteDistribution& dist, const BlockPlan& plan, double c,
                              double r, int from_block, int to_block);

// Maxima per block of a flat value array laid out block after block.
std::vector<double> block_maxima(const std::vector<double>& values, const BlockPlan& plan);

struct RnCheckResult {
  std::vector<int64_t> max_exceed_idx;  // 1-based indices n with m_n >= u_inv(n)
  std::vector<int64_t> raw_exceed_idx;  // 1-based indices n with y_n >= u_inv(n)
  bool holds_max = false;
  bool holds_raw = false;
  int64_t last_max_exceed = -1;
  int64_t last_raw_exceed = -1;
  // for every maxima exceedance at n, the running argmax of y over [1..n]
  // is itself a raw exceedance (the constructive witness)
  bool witness_ok = false;
};

// Finite-horizon rendering of the running-maximum / raw-sequence equivalence
// for an increasing threshold sequence u_inv.
RnCheckResult rn_equivalence_check(const std::vector<double>& y, const std::vector<double>& u_inv);

// What the partial sums S_n add up. kCounts sums the raw site counts (the
// reservoir totals the argument feeds on); with the heavy family those are
// >= 2 apiece and the lower-tail event is empty. kLogCounts sums log+ eta,
// the variable whose infinite mean the heavy criterion actually asserts,
// and gives the empirically fittable exponential decay.
enum class CramerSummand { kCounts, kLogCounts };

struct CramerCell {
  int64_t n = 0;
  uint64_t count = 0;  // #{S_n <= n}
  uint64_t trials = 0;
  double p_hat = 0.0;
  double se = 0.0;
  double upper3n = 0.0;  // rule-of-three bound when count == 0
};

struct CramerReport {
  std::vector<CramerCell> cells;
  bool strictly_decreasing = false;  // over the positive-count prefix
  bool fitted = false;
  double b_hat = 0.0;      // decay rate: log p_n ~ -b_hat * n
  double intercept = 0.0;
  double correlation = 0.0;  // of (n, log p_n) over positive cells
  double b_lo95 = 0.0;       // parametric-bootstrap 2.5% quantile of b_hat
};

// Lower-tail estimates p_n = P(S_n <= n) per n, with a log-linear decay fit
// over the strictly positive counts and a bootstrap interval for the rate.
CramerReport cramer_tail_estimate(const SiteDistribution& dist, const std::vector<int64_t>& n_list,
                                  uint64_t N, uint64_t seed, int workers = 1,
                                  int bootstrap_reps = 200,
                                  CramerSummand summand = CramerSummand::kCounts);

// Threshold exponent of block i: log theta_i = c * beta^{c3 i / r}.
double block_log_threshold(const BlockPlan& plan, double c, double r, int i);

void write_trace_csv(const std::string& path, const ExceedanceTrace& trace);
void write_cramer_csv(const std::string& path, const CramerReport& rep);

}  // namespace frogsim
