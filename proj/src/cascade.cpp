#include "frogsim/cascade.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "frogsim/csv.hpp"
#include "frogsim/rng.hpp"

namespace frogsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int64_t checked_ipow(int64_t base, int exp) {
  __int128 v = 1;
  for (int i = 0; i < exp; ++i) {
    v *= base;
    if (v > static_cast<__int128>(9'000'000'000'000'000'000LL))
      throw std::overflow_error("cascade: integer power overflow");
  }
  return static_cast<int64_t>(v);
}

double dpow(double base, double exp) { return std::exp(exp * std::log(base)); }
}  // namespace

double CascadeParams::c_constant() { return 2.5 * (1.0 - std::exp(-2.0)) - 2.0; }

double CascadeParams::c4_of(int alpha, int d) {
  const double c = c_constant();
  return dpow(static_cast<double>(alpha), 2.0 * d) / (c * c);
}

int CascadeParams::min_alpha(double c1) {
  if (!(c1 > 0.0)) throw std::invalid_argument("cascade: c1 must be > 0");
  return std::max<int>(3, static_cast<int>(std::ceil(1.0 / c1)));
}

void CascadeParams::validate() const {
  if (d < 1) throw std::invalid_argument("cascade: d must be >= 1");
  if (k < 2) throw std::invalid_argument("cascade: start level k must be >= 2");
  if (!(c1 > 0.0) || !(b > 0.0)) throw std::invalid_argument("cascade: c1 and b must be > 0");
  if (alpha < min_alpha(c1))
    throw std::invalid_argument("cascade: alpha must be >= max(3, ceil(1/c1))");
  if (!(effective_c4() > 0.0)) throw std::invalid_argument("cascade: c4 must be > 0");
}

bool BoxF::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != d) return false;
  if (x[0] < x1_lo || x[0] > x1_hi) return false;
  for (size_t j = 1; j < x.size(); ++j)
    if (std::abs(x[j]) > lat_half) return false;
  return true;
}

BoxF box_F(int alpha, int n, int d) {
  if (alpha < 3 || n < 1 || d < 1) throw std::invalid_argument("box_F: need alpha >= 3, n >= 1, d >= 1");
  BoxF f;
  f.alpha = alpha;
  f.n = n;
  f.d = d;
  const int64_t a2n = checked_ipow(alpha, 2 * n);
  const int64_t a2n2 = checked_ipow(alpha, 2 * n + 2);
  const int64_t an = checked_ipow(alpha, n);
  f.x1_lo = (3 * a2n + 1) / 2;  // ceil(3 a^{2n} / 2)
  f.x1_hi = a2n2 - 1;
  f.lat_half = an;
  const int64_t lateral = 2 * an + 1;
  __int128 count = a2n2 - f.x1_lo;
  for (int j = 1; j < d; ++j) {
    count *= lateral;
    if (count > static_cast<__int128>(9'000'000'000'000'000'000LL))
      throw std::overflow_error("box_F: cardinality overflow");
  }
  f.exact_count = static_cast<int64_t>(count);

  const double ad = static_cast<double>(alpha);
  f.formula_value = dpow(ad, 2.0 * n) * (ad * ad - 1.5) *
                    std::pow(2.0 * dpow(ad, static_cast<double>(n)) + 1.0, d - 1);
  f.lower_bound = 2.5 * std::pow(2.0, d - 1) * dpow(ad, static_cast<double>(n) * (d + 1));
  f.upper_bound = dpow(ad, static_cast<double>(d + 1)) * dpow(ad, static_cast<double>(n) * (d + 1));
  f.sandwich_ok = f.lower_bound <= static_cast<double>(f.exact_count) &&
                  static_cast<double>(f.exact_count) <= f.upper_bound;
  return f;
}

bool BoxV::contains(const Point& x) const {
  if (static_cast<int>(x.size()) != d) return false;
  return linf_norm(x) <= half;
}

BoxV box_V(int alpha, int n, int d) {
  if (alpha < 3 || n < 1 || d < 1) throw std::invalid_argument("box_V: need alpha >= 3, n >= 1, d >= 1");
  BoxV v;
  v.alpha = alpha;
  v.n = n;
  v.d = d;
  v.half = checked_ipow(alpha, 2 * n);
  __int128 count = 1;
  for (int j = 0; j < d; ++j) {
    count *= 2 * v.half + 1;
    if (count > static_cast<__int128>(9'000'000'000'000'000'000LL))
      throw std::overflow_error("box_V: cardinality overflow");
  }
  v.count = static_cast<int64_t>(count);
  return v;
}

double zeta_mean_product(const std::vector<double>& f_hat, const std::vector<uint64_t>& eta) {
  if (f_hat.size() != eta.size())
    throw std::invalid_argument("zeta_mean_product: mismatched inputs");
  double log_prod = 0.0;
  for (size_t i = 0; i < f_hat.size(); ++i) {
    const double f = f_hat[i];
    if (!(f >= 0.0) || !(f <= 1.0))
      throw std::invalid_argument("zeta_mean_product: hitting estimates must lie in [0,1]");
    if (eta[i] == 0) continue;
    if (f == 1.0) return 1.0;
    log_prod += static_cast<double>(eta[i]) * std::log1p(-f);
  }
  return -std::expm1(log_prod);
}

ZetaFloorReport zeta_floor_check(const CascadeParams& p, int i) {
  p.validate();
  if (i < 0) throw std::invalid_argument("zeta_floor_check: level must be >= 0");
  const double la = std::log(static_cast<double>(p.alpha));
  ZetaFloorReport r;
  r.i = i;
  // worst-case displacement from (boundfc): delta <= alpha^{2(k+i+1)}
  r.x = std::min(1.0, p.c1 * std::exp(-0.5 * (p.d - 1) * 2.0 * (p.k + i + 1) * la));
  r.log_count = (p.d + 1) * static_cast<double>(p.k + i - 1) * la;
  const double count = std::exp(r.log_count);  // may be inf; the products below stay correct
  r.log_product_bound = r.x >= 1.0 ? -kInf : count * std::log1p(-r.x);
  r.strict_floor = -std::expm1(r.log_product_bound);
  r.strict_exponent = r.x * count;
  r.display_exponent = p.c1 * std::exp(2.0 * (p.k + i - 1) * la);
  r.display_floor = -std::expm1(-r.display_exponent);
  r.chain_step_ok = r.log_product_bound <= -r.strict_exponent + 1e-12 * std::abs(r.strict_exponent);
  r.display_dominates_strict = -r.display_exponent >= r.log_product_bound;
  r.floor_ok = r.display_floor >= (1.0 - std::exp(-2.0)) - 1e-12;
  return r;
}

double gi1_failure_bound(const CascadeParams& p, int i) {
  if (i < 0) throw std::invalid_argument("gi1_failure_bound: level must be >= 0");
  const double la = std::log(static_cast<double>(p.alpha));
  const double poly = std::exp(-static_cast<double>(p.k + i) * (p.d + 1) * la);
  const double mult = i == 0 ? 1.0 : static_cast<double>(i);
  const double expo = std::exp(-mult * std::exp((p.k - 2) * la));
  return p.effective_c4() * (poly + expo);
}

double gi2_failure_bound(const CascadeParams& p, int i) {
  if (i < 0) throw std::invalid_argument("gi2_failure_bound: level must be >= 0");
  const double la = std::log(static_cast<double>(p.alpha));
  const double log_ai = (p.d + 1) * static_cast<double>(p.k + i) * la;
  const double ba = p.b * std::exp(log_ai);
  return std::min(1.0, 2.0 * std::exp(-ba));
}

double gi_level_bound(const CascadeParams& p, int i) {
  const double la = std::log(static_cast<double>(p.alpha));
  const double mult = i == 0 ? 1.0 : static_cast<double>(i);
  const double weak_gi2 = 2.0 * std::exp(-mult * p.b * std::exp(p.k * la));
  return gi1_failure_bound(p, i) + weak_gi2;
}

CovzetaForms covzeta_bounds(const CascadeParams& p, int i) {
  const double la = std::log(static_cast<double>(p.alpha));
  CovzetaForms f;
  f.display_form = std::exp(-std::exp((p.k + 2.0 * (i - 1)) * la));
  f.derived_form = std::exp(-p.c1 * std::exp(2.0 * (p.k + i - 1) * la));
  return f;
}

CertificateReport g_of_k(const CascadeParams& p, int k, int i_max) {
  if (k < 0) throw std::invalid_argument("g_of_k: k must be >= 0");
  const double la = std::log(static_cast<double>(p.alpha));
  const double c4 = p.effective_c4();
  const double x = static_cast<double>(k);

  const double a_pow = std::exp(-x * (p.d + 1) * la);           // alpha^{-x(d+1)}
  const double a_geom = std::exp(-static_cast<double>(p.d + 1) * la);
  const double e_mid = std::exp(-std::exp((x - 2.0) * la));     // exp(-alpha^{x-2})
  const double e_b = std::exp(-p.b * std::exp(x * la));         // exp(-b alpha^x)

  CertificateReport rep;
  const double denom_mid = 1.0 - e_mid;
  const double denom_b = 1.0 - e_b;
  if (denom_mid <= 0.0 || denom_b <= 0.0) {
    rep.g_value = kInf;
    rep.vacuous = true;
    rep.certificate = -kInf;
    return rep;
  }
  rep.g_value = c4 * (a_pow / (1.0 - a_geom) + e_mid / denom_mid + e_mid) +
                2.0 * (e_b + e_b / denom_b);
  rep.certificate = 1.0 - rep.g_value;
  rep.vacuous = !(rep.g_value < 1.0);

  // True per-level bounds up to i_max, then the weakened closed-form tails.
  CascadeParams at_k = p;
  at_k.k = std::max(2, k);
  double sum = 0.0;
  if (k >= 2) {
    for (int i = 0; i <= i_max; ++i) sum += gi1_failure_bound(at_k, i) + gi2_failure_bound(at_k, i);
    const double tail1 =
        c4 * std::exp(-static_cast<double>(p.d + 1) * (k + i_max + 1) * la) / (1.0 - a_geom);
    const double tail2 = c4 * std::exp(-(i_max + 1.0) * std::exp((x - 2.0) * la)) / denom_mid;
    const double tail3 = 2.0 * std::exp(-(i_max + 1.0) * p.b * std::exp(x * la)) / denom_b;
    rep.partial_sum = sum + tail1 + tail2 + tail3;
    rep.coherent = rep.partial_sum <= rep.g_value + 1e-12 * std::max(1.0, rep.g_value);
  }
  return rep;
}

int smallest_k_below(const CascadeParams& p, double target_g, int k_max) {
  for (int k = 2; k <= k_max; ++k)
    if (g_of_k(p, k).g_value < target_g) return k;
  return -1;
}

void write_level_csv(const std::string& path, const std::vector<LevelRow>& rows) {
  CsvWriter w(path);
  w.header({"n", "exact", "formula", "lower", "upper"});
  for (const auto& r : rows) w.row(r.n, r.exact, r.formula, r.lower, r.upper);
}

AkProbeReport ak_frequency_probe(const TransitionKernel& kernel, const SiteDistribution& dist,
                                 int alpha, int k_max, int64_t horizon,
                                 const std::vector<uint64_t>& seeds) {
  if (alpha < 3 || k_max < 2) throw std::invalid_argument("ak_frequency_probe: need alpha >= 3, k_max >= 2");
  if (seeds.empty()) throw std::invalid_argument("ak_frequency_probe: need seeds");
  const int d = kernel.d;

  std::vector<uint64_t> thresholds(static_cast<size_t>(k_max) + 1, 0);
  std::vector<int64_t> v_half(static_cast<size_t>(k_max) + 1, 0);
  std::vector<uint64_t> block_sizes(static_cast<size_t>(k_max) + 1, 0);
  for (int k = 1; k <= k_max; ++k) {
    thresholds[static_cast<size_t>(k)] =
        static_cast<uint64_t>(checked_ipow(alpha, (d + 1) * (k - 1)));
    v_half[static_cast<size_t>(k)] = checked_ipow(alpha, 2 * k);
    block_sizes[static_cast<size_t>(k)] =
        k == 1 ? static_cast<uint64_t>(checked_ipow(alpha, 2) - 1)
               : static_cast<uint64_t>(checked_ipow(alpha, 2 * k) - checked_ipow(alpha, 2 * k - 2));
  }

  std::vector<uint64_t> full_hits(static_cast<size_t>(k_max) + 1, 0);
  std::vector<uint64_t> block_hits(static_cast<size_t>(k_max) + 1, 0);
  std::vector<uint64_t> complete(static_cast<size_t>(k_max) + 1, 0);

  for (uint64_t seed : seeds) {
    const SiteField field{seed, dist};
    Stream s(derive_key(seed, stream_domain::kFrogPath, encode_site(origin_point(d)), 0));

    Point pos = origin_point(d);
    std::unordered_set<uint64_t> seen;
    seen.insert(encode_site(pos));
    std::vector<Point> fresh;  // distinct path vertices in visit order, origin excluded
    for (int64_t t = 0; t < horizon; ++t) {
      const int dir = sample_direction(kernel, s);
      pos[static_cast<size_t>(TransitionKernel::axis_of(dir))] += TransitionKernel::delta_of(dir);
      if (seen.insert(encode_site(pos)).second) fresh.push_back(pos);
    }

    // block construction on the path + the full V_k \ V_{k-1} scan
    std::vector<uint8_t> block_hit(static_cast<size_t>(k_max) + 1, 0);
    std::vector<uint8_t> full_hit(static_cast<size_t>(k_max) + 1, 0);
    std::vector<uint64_t> filled(static_cast<size_t>(k_max) + 1, 0);
    int cur = 1;
    for (const Point& v : fresh) {
      const int64_t r = linf_norm(v);
      const uint64_t eta = field.site_value(v);
      // annulus membership for the full event
      for (int k = 2; k <= k_max; ++k)
        if (r > v_half[static_cast<size_t>(k - 1)] && r <= v_half[static_cast<size_t>(k)] &&
            eta >= thresholds[static_cast<size_t>(k)])
          full_hit[static_cast<size_t>(k)] = 1;
      // block filling: fresh vertices outside V_{cur-1}
      while (cur <= k_max && filled[static_cast<size_t>(cur)] == block_sizes[static_cast<size_t>(cur)])
        ++cur;
      if (cur > k_max) continue;
      if (cur > 1 && r <= v_half[static_cast<size_t>(cur - 1)]) continue;
      ++filled[static_cast<size_t>(cur)];
      if (cur >= 2 && eta >= thresholds[static_cast<size_t>(cur)]) block_hit[static_cast<size_t>(cur)] = 1;
    }

    for (int k = 2; k <= k_max; ++k) {
      if (filled[static_cast<size_t>(k)] == block_sizes[static_cast<size_t>(k)]) {
        ++complete[static_cast<size_t>(k)];
        block_hits[static_cast<size_t>(k)] += block_hit[static_cast<size_t>(k)];
      }
      full_hits[static_cast<size_t>(k)] += full_hit[static_cast<size_t>(k)];
    }
  }

  AkProbeReport rep;
  rep.horizon = horizon;
  for (int k = 2; k <= k_max; ++k) {
    AkLevelStats st;
    st.k = k;
    st.threshold = thresholds[static_cast<size_t>(k)];
    st.block_size = block_sizes[static_cast<size_t>(k)];
    st.n_seeds = complete[static_cast<size_t>(k)];
    st.n_short = seeds.size() - complete[static_cast<size_t>(k)];
    st.full_freq = static_cast<double>(full_hits[static_cast<size_t>(k)]) /
                   static_cast<double>(seeds.size());
    if (st.n_seeds > 0)
      st.block_freq =
          static_cast<double>(block_hits[static_cast<size_t>(k)]) / static_cast<double>(st.n_seeds);
    const double psite = dist.survival_count(st.threshold);
    st.oracle = 1.0 - std::exp(static_cast<double>(st.block_size) * std::log1p(-psite));
    if (st.n_seeds > 0)
      st.oracle_se = std::sqrt(st.oracle * (1.0 - st.oracle) / static_cast<double>(st.n_seeds));
    rep.levels.push_back(st);
  }
  return rep;
}

}  // namespace frogsim
