#pragma once

#include <cstdint>
#include <string>

#include "frogsim/geometry.hpp"
#include "frogsim/rng.hpp"

namespace frogsim {

enum class SiteFamily { kDeterministic, kGeometric, kExpPareto };

// Counts above this are reported saturated; no desk-scale run can walk that
// many frogs anyway, and the log value stays exact.
inline constexpr uint64_t kEtaSaturated = 1ULL << 62;

struct EtaSample {
  uint64_t count = 0;      // min(eta, kEtaSaturated)
  double log_value = 0.0;  // exact log(eta); -inf when eta == 0
};

// Law of the sleeping-frog count at a site.
//   det:m       point mass at integer m >= 0
//   geom:q      P(k) = q (1-q)^k on {0,1,2,...}, q in (0,1)
//   exppareto:s eta = floor(exp(U^{-1/s})), U uniform on (0,1); the log
//               count is Pareto(s), so E[(log+ eta)^r] = inf iff r >= s
struct SiteDistribution {
  SiteFamily family = SiteFamily::kDeterministic;
  double param = 0.0;

  static SiteDistribution deterministic(uint64_t m);
  static SiteDistribution geometric(double q);
  static SiteDistribution exp_pareto(double s);

  // short string form used by config files and CLI flags
  static SiteDistribution parse(const std::string& spec);
  std::string to_string() const;

  // One sample, exactly one uniform consumed.
  EtaSample sample(Stream& s) const;
  uint64_t sample_count(Stream& s) const { return sample(s).count; }
  double sample_log(Stream& s) const { return sample(s).log_value; }

  double mean() const;         // +inf when the mean diverges
  double cdf(uint64_t k) const;            // P(eta <= k)
  double survival_count(uint64_t y) const;  // P(eta >= y)
  // P(log eta >= t) for real t, and its log (useful when it underflows)
  double survival_log_threshold(double t) const;
  double log_survival_log_threshold(double t) const;

  bool operator==(const SiteDistribution&) const = default;
};

// Analytic answer to "is E[(log+ eta)^r] infinite?"
bool is_heavy(const SiteDistribution& dist, double r);

struct LogMomentEstimate {
  double mean = 0.0;
  double se = 0.0;
  uint64_t n = 0;
  double cap = 0.0;
};

// Monte-Carlo mean of min((log+ eta)^r, cap).
LogMomentEstimate log_moment_mc(const SiteDistribution& dist, double r, uint64_t n, double cap,
                                Stream& s);

// Lazily evaluated i.i.d. configuration over the whole lattice: the value at
// x is a pure function of (master_seed, x) via one avalanche-mixed stream
// per site, so windows can grow without resampling anything.
struct SiteField {
  uint64_t master_seed = 0;
  SiteDistribution dist;

  EtaSample site_sample(const Point& x) const;
  uint64_t site_value(const Point& x) const { return site_sample(x).count; }
  double site_log_value(const Point& x) const { return site_sample(x).log_value; }
};

}  // namespace frogsim
