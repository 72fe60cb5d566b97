#include "frogsim/site_config.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace frogsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// log of the largest count we keep exact; above it floor(exp(V)) saturates
constexpr double kLogSaturation = 42.9;  // exp(42.9) < 2^62
}  // namespace

SiteDistribution SiteDistribution::deterministic(uint64_t m) {
  return {SiteFamily::kDeterministic, static_cast<double>(m)};
}

SiteDistribution SiteDistribution::geometric(double q) {
  if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("geometric: q must be in (0,1)");
  return {SiteFamily::kGeometric, q};
}

SiteDistribution SiteDistribution::exp_pareto(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("exppareto: shape s must be > 0");
  return {SiteFamily::kExpPareto, s};
}

SiteDistribution SiteDistribution::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("distribution spec must look like det:m, geom:q or exppareto:s; got '" + spec + "'");
  const std::string family = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  double value = 0.0;
  size_t used = 0;
  try {
    value = std::stod(arg, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("distribution spec '" + spec + "': bad numeric parameter");
  }
  if (used != arg.size())
    throw std::invalid_argument("distribution spec '" + spec + "': bad numeric parameter");
  if (family == "det") {
    if (value < 0.0 || value != std::floor(value))
      throw std::invalid_argument("det:m needs a nonnegative integer m");
    return deterministic(static_cast<uint64_t>(value));
  }
  if (family == "geom") return geometric(value);
  if (family == "exppareto") return exp_pareto(value);
  throw std::invalid_argument("unknown distribution family '" + family + "'");
}

std::string SiteDistribution::to_string() const {
  switch (family) {
    case SiteFamily::kDeterministic:
      return "det:" + std::to_string(static_cast<uint64_t>(param));
    case SiteFamily::kGeometric: {
      std::string s = "geom:" + std::to_string(param);
      return s;
    }
    case SiteFamily::kExpPareto:
      return "exppareto:" + std::to_string(param);
  }
  return "?";
}

EtaSample SiteDistribution::sample(Stream& s) const {
  EtaSample out;
  switch (family) {
    case SiteFamily::kDeterministic: {
      out.count = static_cast<uint64_t>(param);
      out.log_value = out.count ? std::log(param) : -kInf;
      // keep the draw count uniform across families
      (void)s.next_u64();
      return out;
    }
    case SiteFamily::kGeometric: {
      const double u = s.next_open01();
      const uint64_t k = static_cast<uint64_t>(std::floor(std::log(u) / std::log1p(-param)));
      out.count = k;
      out.log_value = k ? std::log(static_cast<double>(k)) : -kInf;
      return out;
    }
    case SiteFamily::kExpPareto: {
      const double u = s.next_open01();
      const double v = std::pow(u, -1.0 / param);  // Pareto(s) on [1, inf)
      if (v >= kLogSaturation) {
        out.count = kEtaSaturated;
        out.log_value = v;  // floor correction is below double resolution here
      } else {
        out.count = static_cast<uint64_t>(std::floor(std::exp(v)));
        out.log_value = std::log(static_cast<double>(out.count));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

double SiteDistribution::mean() const {
  switch (family) {
    case SiteFamily::kDeterministic:
      return param;
    case SiteFamily::kGeometric:
      return (1.0 - param) / param;
    case SiteFamily::kExpPareto:
      return kInf;  // E[exp(Pareto)] diverges for every shape
  }
  return 0.0;
}

double SiteDistribution::cdf(uint64_t k) const {
  switch (family) {
    case SiteFamily::kDeterministic:
      return param <= static_cast<double>(k) ? 1.0 : 0.0;
    case SiteFamily::kGeometric:
      // 1 - (1-q)^{k+1}
      return 1.0 - std::exp(static_cast<double>(k + 1) * std::log1p(-param));
    case SiteFamily::kExpPareto: {
      // eta <= k  iff  V < log(k+1)
      const double lk = std::log(static_cast<double>(k) + 1.0);
      if (lk <= 1.0) return 0.0;
      return 1.0 - std::pow(lk, -param);
    }
  }
  return 0.0;
}

double SiteDistribution::survival_count(uint64_t y) const {
  if (y == 0) return 1.0;
  switch (family) {
    case SiteFamily::kDeterministic:
      return param >= static_cast<double>(y) ? 1.0 : 0.0;
    case SiteFamily::kGeometric:
      return std::exp(static_cast<double>(y) * std::log1p(-param));
    case SiteFamily::kExpPareto: {
      // eta >= y (integer y) iff V >= log y
      const double ly = std::log(static_cast<double>(y));
      if (ly <= 1.0) return 1.0;
      return std::pow(ly, -param);
    }
  }
  return 0.0;
}

double SiteDistribution::survival_log_threshold(double t) const {
  return std::exp(log_survival_log_threshold(t));
}

double SiteDistribution::log_survival_log_threshold(double t) const {
  // P(log eta >= t) == P(eta >= ceil(exp t)); use the exact integer
  // threshold while it is representable, the continuum tail beyond.
  if (t <= 0.0) {
    const double p0 = survival_count(1);  // P(eta >= 1)
    return p0 > 0 ? std::log(p0) : -kInf;
  }
  switch (family) {
    case SiteFamily::kDeterministic: {
      if (param < 1.0) return -kInf;
      return std::log(param) >= t ? 0.0 : -kInf;
    }
    case SiteFamily::kGeometric: {
      const double y =
          t < kLogSaturation ? std::ceil(std::exp(t)) : std::exp(t);  // +inf is fine
      return y * std::log1p(-param);
    }
    case SiteFamily::kExpPareto: {
      const double ly = t < kLogSaturation ? std::log(std::ceil(std::exp(t))) : t;
      if (ly <= 1.0) return 0.0;
      return -param * std::log(ly);
    }
  }
  return -kInf;
}

bool is_heavy(const SiteDistribution& dist, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("is_heavy: r must be > 0");
  switch (dist.family) {
    case SiteFamily::kDeterministic:
    case SiteFamily::kGeometric:
      return false;  // log of a light-tailed count has moments of all orders
    case SiteFamily::kExpPareto:
      return r >= dist.param;
  }
  return false;
}

LogMomentEstimate log_moment_mc(const SiteDistribution& dist, double r, uint64_t n, double cap,
                                Stream& s) {
  if (n < 1) throw std::invalid_argument("log_moment_mc: need n >= 1");
  if (!(cap > 0.0)) throw std::invalid_argument("log_moment_mc: cap must be > 0");
  double sum = 0.0, sumsq = 0.0;
  for (uint64_t i = 0; i < n; ++i) {
    const double lg = dist.sample_log(s);
    const double lp = lg > 0.0 ? lg : 0.0;  // log+ semantics: log+ 0 = log+ 1 = 0
    const double x = std::min(std::pow(lp, r), cap);
    sum += x;
    sumsq += x * x;
  }
  LogMomentEstimate est;
  est.n = n;
  est.cap = cap;
  est.mean = sum / static_cast<double>(n);
  if (n > 1) {
    const double var = (sumsq - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
    est.se = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
  }
  return est;
}

EtaSample SiteField::site_sample(const Point& x) const {
  if (is_origin(x))
    throw std::invalid_argument("site_value: the origin carries the initial active frog, not a sleeping count");
  Stream s(derive_key(master_seed, stream_domain::kSiteValue, encode_site(x)));
  return dist.sample(s);
}

}  // namespace frogsim
