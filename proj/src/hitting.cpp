#include "frogsim/hitting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "frogsim/csv.hpp"
#include "frogsim/parallel.hpp"
#include "frogsim/rng.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {

std::string to_string(HitMethod m) {
  switch (m) {
    case HitMethod::kExactDp: return "exact_dp";
    case HitMethod::kMonteCarlo: return "monte_carlo";
    case HitMethod::kClosedForm: return "closed_form";
  }
  return "?";
}

HittingEstimate hit_prob_exact(const TransitionKernel& k, const Point& x, const Point& y,
                               const BoxWindow& box, int64_t T) {
  if (T < 0) throw std::invalid_argument("hit_prob_exact: horizon must be >= 0");
  if (box.dim() != k.d || !box.contains(x) || !box.contains(y))
    throw std::invalid_argument("hit_prob_exact: box must contain both endpoints");
  const int64_t cells = box.cell_count();
  if (cells > 50'000'000) throw std::invalid_argument("hit_prob_exact: box too large");

  const int ndir = k.n_dirs();
  const int64_t yi = box.index_of(y);
  const int64_t xi = box.index_of(x);

  // Per-cell neighbour indices, -1 for killed (outside the box).
  std::vector<int64_t> nbr(static_cast<size_t>(cells) * static_cast<size_t>(ndir));
  for (int64_t c = 0; c < cells; ++c) {
    Point p = box.point_at(c);
    for (int dir = 0; dir < ndir; ++dir) {
      const int axis = TransitionKernel::axis_of(dir);
      p[static_cast<size_t>(axis)] += TransitionKernel::delta_of(dir);
      nbr[static_cast<size_t>(c) * ndir + static_cast<size_t>(dir)] =
          box.contains(p) ? box.index_of(p) : -1;
      p[static_cast<size_t>(axis)] -= TransitionKernel::delta_of(dir);
    }
  }

  // h_t(z) = P(hit y within t steps, staying inside the box), backward in t.
  std::vector<double> cur(static_cast<size_t>(cells), 0.0), next(static_cast<size_t>(cells), 0.0);
  cur[static_cast<size_t>(yi)] = 1.0;
  for (int64_t t = 0; t < T; ++t) {
    for (int64_t c = 0; c < cells; ++c) {
      if (c == yi) {
        next[static_cast<size_t>(c)] = 1.0;
        continue;
      }
      double acc = 0.0;
      const int64_t* nb = &nbr[static_cast<size_t>(c) * ndir];
      for (int dir = 0; dir < ndir; ++dir)
        if (nb[dir] >= 0) acc += k.prob[static_cast<size_t>(dir)] * cur[static_cast<size_t>(nb[dir])];
      next[static_cast<size_t>(c)] = acc;
    }
    std::swap(cur, next);
  }

  HittingEstimate est;
  est.value = cur[static_cast<size_t>(xi)];
  est.horizon = T;
  est.method = HitMethod::kExactDp;
  return est;
}

double hit_prob_closed_form_d1(const TransitionKernel& k, int64_t delta) {
  if (k.d != 1) throw std::invalid_argument("hit_prob_closed_form_d1: needs d == 1");
  if (delta >= 0) return 1.0;
  const double ratio = k.p_down(0) / k.p_up(0);
  return std::pow(ratio, static_cast<double>(-delta));
}

namespace {

// One T-step walk from x; true iff it visits y. Exact early exit: stop once
// the remaining budget cannot cover the L1 distance to the target. Direction
// tables live on the stack so the step loop stays register-resident.
bool walk_hits(const TransitionKernel& k, const Coords& start, const Coords& target, int d,
               int64_t T, Stream& s) {
  double cum[2 * kMaxDim];
  int axis[2 * kMaxDim];
  int64_t delta[2 * kMaxDim];
  const int nd = k.n_dirs();
  for (int i = 0; i < nd; ++i) {
    cum[i] = k.cum[static_cast<size_t>(i)];
    axis[i] = TransitionKernel::axis_of(i);
    delta[i] = TransitionKernel::delta_of(i);
  }
  Coords pos = start;
  bool at_target = true;
  for (int j = 0; j < d; ++j) at_target &= pos[static_cast<size_t>(j)] == target[static_cast<size_t>(j)];
  if (at_target) return true;
  for (int64_t t = 1; t <= T; ++t) {
    const double u = s.next_double();
    int dir = nd - 1;
    for (int i = 0; i < nd - 1; ++i)
      if (u < cum[i]) {
        dir = i;
        break;
      }
    pos[static_cast<size_t>(axis[dir])] += delta[dir];
    bool hit = true;
    for (int j = 0; j < d; ++j)
      hit &= pos[static_cast<size_t>(j)] == target[static_cast<size_t>(j)];
    if (hit) return true;
    if ((t & 63) == 0) {
      int64_t l1 = 0;
      for (int j = 0; j < d; ++j)
        l1 += std::abs(pos[static_cast<size_t>(j)] - target[static_cast<size_t>(j)]);
      if (l1 > T - t) return false;
    }
  }
  return false;
}

Coords to_coords(const Point& p) {
  Coords c{};
  for (size_t j = 0; j < p.size(); ++j) c[j] = p[j];
  return c;
}

}  // namespace

HittingEstimate hit_prob_mc(const TransitionKernel& k, const Point& x, const Point& y, int64_t T,
                            uint64_t N, uint64_t seed, int workers) {
  if (N < 1) throw std::invalid_argument("hit_prob_mc: need N >= 1");
  if (x.size() != static_cast<size_t>(k.d) || y.size() != static_cast<size_t>(k.d))
    throw std::invalid_argument("hit_prob_mc: dimension mismatch");
  const Coords cx = to_coords(x), cy = to_coords(y);
  const int d = k.d;
  std::atomic<uint64_t> hits{0};
  parallel_for(static_cast<int64_t>(N), workers, [&](int64_t i) {
    Stream s(derive_key(seed, stream_domain::kMcTrial, static_cast<uint64_t>(i)));
    if (walk_hits(k, cx, cy, d, T, s)) hits.fetch_add(1, std::memory_order_relaxed);
  });
  HittingEstimate est;
  est.n = N;
  est.horizon = T;
  est.method = HitMethod::kMonteCarlo;
  est.value = static_cast<double>(hits.load()) / static_cast<double>(N);
  est.se = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(N));
  return est;
}

EpsBoundReport check_eps_bound(const TransitionKernel& k, const Point& x, const Point& y,
                               const HittingEstimate& est) {
  if (est.method == HitMethod::kMonteCarlo)
    throw std::invalid_argument("check_eps_bound: needs a certified (exact) estimate, not Monte Carlo");
  EpsBoundReport r;
  r.value = est.value;
  r.epsilon = k.min_prob();
  r.linf = linf_dist(x, y);
  r.bound = std::exp(static_cast<double>(k.d) * static_cast<double>(r.linf) * std::log(r.epsilon));
  r.pass = r.value >= r.bound;
  return r;
}

HtProbeReport ht_constant_probe(const TransitionKernel& k, double gamma,
                                const std::vector<int64_t>& distances, uint64_t N, uint64_t seed,
                                int workers) {
  if (distances.empty()) throw std::invalid_argument("ht_constant_probe: need distances");
  HtProbeReport rep;
  const double exponent = static_cast<double>(k.d - 1) / 2.0;
  for (size_t di = 0; di < distances.size(); ++di) {
    const int64_t n = distances[di];
    if (n < 1) throw std::invalid_argument("ht_constant_probe: distances must be >= 1");
    Point x = origin_point(k.d);
    Point y = origin_point(k.d);
    y[0] = n;
    if (k.d >= 2)
      y[1] = static_cast<int64_t>(std::floor(gamma * std::sqrt(static_cast<double>(n))));
    const int64_t T = std::max<int64_t>(
        static_cast<int64_t>(std::ceil(4.0 * static_cast<double>(n) / k.drift)), 200);
    const auto est = hit_prob_mc(k, x, y, T, N, derive_key(seed, di), workers);
    DistanceProbePoint pt;
    pt.n = n;
    pt.target = y;
    pt.horizon = T;
    pt.f_hat = est.value;
    pt.se = est.se;
    const double scale = std::pow(static_cast<double>(n), exponent);
    pt.product = est.value * scale;
    pt.lower_product = (est.value - 3.0 * est.se) * scale;
    if (est.value == 0.0) rep.degenerate = true;
    rep.points.push_back(pt);
  }
  rep.min_product = rep.points.front().product;
  rep.max_product = rep.points.front().product;
  rep.c1 = rep.points.front().lower_product;
  for (const auto& p : rep.points) {
    rep.min_product = std::min(rep.min_product, p.product);
    rep.max_product = std::max(rep.max_product, p.product);
    rep.c1 = std::min(rep.c1, p.lower_product);
  }
  return rep;
}

CltProbeReport clt_lower_bound_probe(const TransitionKernel& k, const std::vector<double>& times,
                                     const Point& lateral_offset, double gamma, uint64_t N,
                                     uint64_t seed, int workers) {
  if (times.empty()) throw std::invalid_argument("clt_lower_bound_probe: need times");
  if (lateral_offset.size() != static_cast<size_t>(k.d - 1))
    throw std::invalid_argument("clt_lower_bound_probe: offset must have d-1 coordinates");
  const double exponent = static_cast<double>(k.d - 1) / 2.0;
  CltProbeReport rep;
  for (size_t ti = 0; ti < times.size(); ++ti) {
    const double t = times[ti];
    if (!(t >= 0.0)) throw std::invalid_argument("clt_lower_bound_probe: times must be >= 0");
    if (static_cast<double>(linf_norm(lateral_offset)) > gamma * std::sqrt(t))
      throw std::invalid_argument("clt_lower_bound_probe: |offset| exceeds gamma*sqrt(t)");
    std::atomic<uint64_t> hits{0};
    if (k.d == 1) {
      hits = N;  // no lateral coordinates: the empty tuple always matches
    } else {
      const Point start = origin_point(k.d);
      parallel_for(static_cast<int64_t>(N), workers, [&](int64_t i) {
        Stream s(derive_key(seed, stream_domain::kCtrwTrial, ti, static_cast<uint64_t>(i)));
        const Point p = ctrw_walk_state(k, start, t, s);
        for (size_t j = 1; j < p.size(); ++j)
          if (p[j] != lateral_offset[j - 1]) return;
        hits.fetch_add(1, std::memory_order_relaxed);
      });
    }
    CltProbePoint pt;
    pt.t = t;
    pt.p_hat = static_cast<double>(hits.load()) / static_cast<double>(N);
    pt.se = std::sqrt(pt.p_hat * (1.0 - pt.p_hat) / static_cast<double>(N));
    pt.product = pt.p_hat * std::pow(t, exponent);
    rep.points.push_back(pt);
  }
  rep.min_product = rep.points.front().product;
  rep.max_product = rep.points.front().product;
  for (const auto& p : rep.points) {
    rep.min_product = std::min(rep.min_product, p.product);
    rep.max_product = std::max(rep.max_product, p.product);
  }
  return rep;
}

LevelTimeQuantiles level_hit_time_quantiles(const TransitionKernel& k, int64_t delta, double q_lo,
                                            double q_hi, uint64_t N, uint64_t seed) {
  if (delta < 1) throw std::invalid_argument("level_hit_time_quantiles: delta must be >= 1");
  if (!(0.0 < q_lo && q_lo < q_hi && q_hi < 1.0))
    throw std::invalid_argument("level_hit_time_quantiles: need 0 < q_lo < q_hi < 1");
  // generous horizon: the drift crosses the level around delta/a
  const int64_t T =
      static_cast<int64_t>(std::ceil(10.0 * static_cast<double>(delta) / k.drift)) + 200;

  auto sample_ratios = [&](uint64_t tag, std::vector<double>& out, uint64_t& unreached) {
    for (uint64_t i = 0; i < N; ++i) {
      Stream s(derive_key(seed, tag, i));
      int64_t x1 = 0;
      int64_t tau = -1;
      for (int64_t t = 1; t <= T; ++t) {
        const int dir = sample_direction(k, s);
        if (TransitionKernel::axis_of(dir) == 0) x1 += TransitionKernel::delta_of(dir);
        if (x1 == delta) {
          tau = t;
          break;
        }
      }
      if (tau < 0)
        ++unreached;
      else
        out.push_back(static_cast<double>(tau) / static_cast<double>(delta));
    }
  };

  LevelTimeQuantiles q;
  std::vector<double> ratios;
  sample_ratios(1, ratios, q.unreached);
  if (ratios.empty()) throw std::runtime_error("level_hit_time_quantiles: level never reached");
  std::sort(ratios.begin(), ratios.end());
  q.gamma1 = quantile_sorted(ratios, q_lo);
  q.gamma2 = quantile_sorted(ratios, q_hi);

  // coverage measured on a fresh sample
  std::vector<double> fresh;
  uint64_t fresh_unreached = 0;
  sample_ratios(2, fresh, fresh_unreached);
  uint64_t inside = 0;
  for (double r : fresh)
    if (r >= q.gamma1 && r <= q.gamma2) ++inside;
  q.coverage = static_cast<double>(inside) / static_cast<double>(N);
  return q;
}

void write_hit_csv(const std::string& path, const std::vector<HitCsvRow>& rows) {
  CsvWriter w(path);
  w.header({"x", "y", "method", "T", "box", "value", "stderr", "bound", "pass"});
  for (const auto& r : rows) {
    if (r.has_eps)
      w.row(point_to_string(r.x), point_to_string(r.y), to_string(r.est.method), r.est.horizon,
            r.box, r.est.value, r.est.se, r.eps.bound, r.eps.pass);
    else
      w.row(point_to_string(r.x), point_to_string(r.y), to_string(r.est.method), r.est.horizon,
            r.box, r.est.value, r.est.se, "", "");
  }
}

}  // namespace frogsim
