#include "frogsim/extreme_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "frogsim/csv.hpp"
#include "frogsim/parallel.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

uint64_t BlockPlan::total() const {
  uint64_t t = 0;
  for (uint64_t l : sizes) t += l;
  return t;
}

void BlockPlan::validate() const {
  if (sizes.empty()) throw std::invalid_argument("BlockPlan: no blocks");
  if (!(c2 > 0.0) || !(c3 > 0.0) || !(beta > 1.0))
    throw std::invalid_argument("BlockPlan: need c2 > 0, c3 > 0, beta > 1");
  for (int i = 1; i <= count(); ++i) {
    if (size_of(i) == 0) throw std::invalid_argument("BlockPlan: empty block");
    const double floor_i = c2 * std::pow(beta, c3 * static_cast<double>(i));
    if (static_cast<double>(size_of(i)) < floor_i)
      throw std::invalid_argument("BlockPlan: block size below c2 * beta^{c3 i}");
  }
}

BlockPlan BlockPlan::geometric(double c2, double c3, double beta, int blocks) {
  BlockPlan p;
  p.c2 = c2;
  p.c3 = c3;
  p.beta = beta;
  for (int i = 1; i <= blocks; ++i)
    p.sizes.push_back(static_cast<uint64_t>(std::ceil(c2 * std::pow(beta, c3 * i))));
  p.validate();
  return p;
}

int ExceedanceTrace::exceed_count(int from_block) const {
  int n = 0;
  for (const auto& b : blocks)
    if (b.i >= from_block && b.exceeded) ++n;
  return n;
}

double block_log_threshold(const BlockPlan& plan, double c, double r, int i) {
  return c * std::pow(plan.beta, plan.c3 * static_cast<double>(i) / r);
}

ExceedanceTrace exceedance_trace(const SiteDistribution& dist, const BlockPlan& plan, double c,
                                 double r, Stream& s) {
  if (!(c > 0.0) || !(r > 0.0)) throw std::invalid_argument("exceedance_trace: need c > 0, r > 0");
  plan.validate();
  ExceedanceTrace trace;
  trace.c = c;
  trace.r = r;
  for (int i = 1; i <= plan.count(); ++i) {
    ExceedanceBlock b;
    b.i = i;
    b.l = plan.size_of(i);
    b.log_threshold = block_log_threshold(plan, c, r, i);
    b.log_max = -kInf;
    for (uint64_t j = 0; j < b.l; ++j) b.log_max = std::max(b.log_max, dist.sample_log(s));
    b.exceeded = b.log_max >= b.log_threshold;
    trace.blocks.push_back(b);
  }
  return trace;
}

double block_exceedance_prob(const SiteDistribution& dist, const BlockPlan& plan, double c,
                             double r, int i) {
  const double log_theta = block_log_threshold(plan, c, r, i);
  const double log_p = dist.log_survival_log_threshold(log_theta);
  // 1 - (1-p)^l  computed stably for tiny p
  const double l = static_cast<double>(plan.size_of(i));
  if (log_p >= 0.0) return 1.0;
  const double log1mp = std::log1p(-std::exp(log_p));
  return -std::expm1(l * log1mp);
}

double exceedance_union_bound(const SiteDistribution& dist, const BlockPlan& plan, double c,
                              double r, int from_block, int to_block) {
  double sum = 0.0;
  for (int i = std::max(1, from_block); i <= std::min(to_block, plan.count()); ++i) {
    const double log_theta = block_log_threshold(plan, c, r, i);
    const double log_p = dist.log_survival_log_threshold(log_theta);
    sum += static_cast<double>(plan.size_of(i)) * std::exp(log_p);
  }
  return sum;
}

std::vector<double> block_maxima(const std::vector<double>& values, const BlockPlan& plan) {
  if (values.size() != plan.total())
    throw std::invalid_argument("block_maxima: value count does not match the plan");
  std::vector<double> out;
  out.reserve(plan.sizes.size());
  size_t pos = 0;
  for (uint64_t l : plan.sizes) {
    if (l == 0) throw std::invalid_argument("block_maxima: empty block");
    double m = values[pos];
    for (uint64_t j = 1; j < l; ++j) m = std::max(m, values[pos + j]);
    pos += l;
    out.push_back(m);
  }
  return out;
}

RnCheckResult rn_equivalence_check(const std::vector<double>& y,
                                   const std::vector<double>& u_inv) {
  if (y.size() != u_inv.size() || y.empty())
    throw std::invalid_argument("rn_equivalence_check: sequences must be nonempty and equal-length");
  for (size_t i = 1; i < u_inv.size(); ++i)
    if (u_inv[i] < u_inv[i - 1])
      throw std::invalid_argument("rn_equivalence_check: thresholds must be nondecreasing");

  RnCheckResult res;
  res.witness_ok = true;
  double running_max = -kInf;
  size_t argmax = 0;
  std::vector<char> raw_exceeds(y.size(), 0);
  for (size_t i = 0; i < y.size(); ++i)
    raw_exceeds[i] = y[i] >= u_inv[i] ? 1 : 0;

  for (size_t i = 0; i < y.size(); ++i) {
    if (y[i] > running_max) {
      running_max = y[i];
      argmax = i;
    }
    const int64_t n = static_cast<int64_t>(i) + 1;
    if (raw_exceeds[i]) {
      res.raw_exceed_idx.push_back(n);
      res.last_raw_exceed = n;
    }
    if (running_max >= u_inv[i]) {
      res.max_exceed_idx.push_back(n);
      res.last_max_exceed = n;
      // running_max == y[argmax] >= u_inv[i] >= u_inv[argmax]
      if (!raw_exceeds[argmax]) res.witness_ok = false;
    }
  }
  res.holds_max = !res.max_exceed_idx.empty();
  res.holds_raw = !res.raw_exceed_idx.empty();
  return res;
}

CramerReport cramer_tail_estimate(const SiteDistribution& dist, const std::vector<int64_t>& n_list,
                                  uint64_t N, uint64_t seed, int workers, int bootstrap_reps,
                                  CramerSummand summand) {
  if (n_list.empty() || N < 1)
    throw std::invalid_argument("cramer_tail_estimate: need sample sizes and N >= 1");
  CramerReport rep;
  for (size_t ni = 0; ni < n_list.size(); ++ni) {
    const int64_t n = n_list[ni];
    if (n < 1) throw std::invalid_argument("cramer_tail_estimate: n must be >= 1");
    std::vector<uint8_t> low(N, 0);
    parallel_for(static_cast<int64_t>(N), workers, [&](int64_t i) {
      Stream s(derive_key(seed, stream_domain::kCramerTrial, ni, static_cast<uint64_t>(i)));
      double sum = 0.0;
      for (int64_t j = 0; j < n; ++j) {
        const double lg = dist.sample_log(s);
        if (summand == CramerSummand::kCounts)
          sum += lg == -kInf ? 0.0 : std::exp(lg);  // exact count value; inf is fine
        else
          sum += lg > 0.0 ? lg : 0.0;  // log+ eta
        if (sum > static_cast<double>(n)) break;  // sums only grow
      }
      low[static_cast<size_t>(i)] = sum <= static_cast<double>(n) ? 1 : 0;
    });
    CramerCell cell;
    cell.n = n;
    cell.trials = N;
    for (uint8_t b : low) cell.count += b;
    cell.p_hat = static_cast<double>(cell.count) / static_cast<double>(N);
    cell.se = binom_stderr(cell.p_hat, N);
    cell.upper3n = cell.count == 0 ? 3.0 / static_cast<double>(N) : 0.0;
    rep.cells.push_back(cell);
  }

  // Point estimates exist only for positive counts; zero cells carry
  // rule-of-three upper bounds. Decrease is asserted along the point
  // estimates, and no zero cell may precede a positive one.
  std::vector<double> xs, ys;
  rep.strictly_decreasing = false;
  bool seen_zero = false, order_ok = true;
  for (size_t i = 0; i < rep.cells.size(); ++i) {
    if (rep.cells[i].count > 0) {
      if (seen_zero) order_ok = false;
      if (!ys.empty() && std::log(rep.cells[i].p_hat) >= ys.back()) order_ok = false;
      xs.push_back(static_cast<double>(rep.cells[i].n));
      ys.push_back(std::log(rep.cells[i].p_hat));
    } else {
      seen_zero = true;
    }
  }
  rep.strictly_decreasing = order_ok && !xs.empty();
  if (xs.size() >= 2) {
    const LinFit fit = least_squares(xs, ys);
    rep.fitted = true;
    rep.b_hat = -fit.slope;
    rep.intercept = fit.intercept;
    rep.correlation = fit.corr;

    // Parametric bootstrap on the per-cell counts.
    std::vector<double> boots;
    Stream bs(derive_key(seed, stream_domain::kBootstrap));
    for (int b = 0; b < bootstrap_reps; ++b) {
      std::vector<double> bx, by;
      for (const auto& cell : rep.cells) {
        if (cell.count == 0) continue;
        std::binomial_distribution<uint64_t> bin(cell.trials, cell.p_hat);
        const uint64_t c = bin(bs);
        if (c == 0) continue;
        bx.push_back(static_cast<double>(cell.n));
        by.push_back(std::log(static_cast<double>(c) / static_cast<double>(cell.trials)));
      }
      if (bx.size() >= 2) boots.push_back(-least_squares(bx, by).slope);
    }
    if (!boots.empty()) {
      std::sort(boots.begin(), boots.end());
      rep.b_lo95 = quantile_sorted(boots, 0.025);
    }
  }
  return rep;
}

void write_trace_csv(const std::string& path, const ExceedanceTrace& trace) {
  CsvWriter w(path);
  w.header({"i", "l_i", "log_threshold", "log_Mi", "exceeded"});
  for (const auto& b : trace.blocks) w.row(b.i, b.l, b.log_threshold, b.log_max, b.exceeded);
}

void write_cramer_csv(const std::string& path, const CramerReport& rep) {
  CsvWriter w(path);
  w.header({"n", "count", "N", "p_hat", "stderr"});
  for (const auto& c : rep.cells) w.row(c.n, c.count, c.trials, c.p_hat, c.se);
}

}  // namespace frogsim
