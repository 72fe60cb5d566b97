#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace frogsim {

struct MeanStderr {
  double mean = 0.0;
  double se = 0.0;
  uint64_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& v) {
  MeanStderr r;
  r.n = v.size();
  if (v.empty()) return r;
  double s = 0.0;
  for (double x : v) s += x;
  r.mean = s / static_cast<double>(v.size());
  if (v.size() < 2) return r;
  double ss = 0.0;
  for (double x : v) ss += (x - r.mean) * (x - r.mean);
  const double var = ss / static_cast<double>(v.size() - 1);
  r.se = std::sqrt(var / static_cast<double>(v.size()));
  return r;
}

// standard error of a binomial proportion
inline double binom_stderr(double p, uint64_t n) {
  if (n == 0) return 0.0;
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double corr = 0.0;  // Pearson correlation of (x, y)
};

inline LinFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares: need >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double vx = sxx - sx * sx / n;
  const double vy = syy - sy * sy / n;
  const double cxy = sxy - sx * sy / n;
  LinFit f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.corr = (vx > 0 && vy > 0) ? cxy / std::sqrt(vx * vy) : 0.0;
  return f;
}

inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const size_t i = static_cast<size_t>(pos);
  if (i + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(i);
  return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

}  // namespace frogsim
