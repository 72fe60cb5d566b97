#include "frogsim/lattice_walk.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace frogsim {

namespace {
constexpr double kTol = 1e-12;
}

double TransitionKernel::min_prob() const {
  double m = 1.0;
  for (double p : prob) m = std::min(m, p);
  return m;
}

TransitionKernel make_drift_kernel(int d, double a, double lambda) {
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("kernel: d must be in [1, 8]");
  if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("kernel: drift a must be in (0,1)");
  if (lambda < 0.0 || lambda >= 1.0 - a)
    throw std::invalid_argument("kernel: lateral mass must be in [0, 1-a)");
  if (d == 1 && lambda != 0.0)
    throw std::invalid_argument("kernel: d=1 admits no lateral mass");
  if (d >= 2 && lambda == 0.0)
    throw std::invalid_argument("kernel: d>=2 needs positive lateral mass (all directions must have positive probability)");

  TransitionKernel k;
  k.d = d;
  k.drift = a;
  k.lateral = lambda;
  k.prob.assign(static_cast<size_t>(2 * d), 0.0);
  k.prob[0] = (1.0 - lambda + a) / 2.0;
  k.prob[1] = (1.0 - lambda - a) / 2.0;
  for (int j = 1; j < d; ++j) {
    const double p = lambda / (2.0 * (d - 1));
    k.prob[static_cast<size_t>(2 * j)] = p;
    k.prob[static_cast<size_t>(2 * j + 1)] = p;
  }

  k.cum.resize(k.prob.size());
  double acc = 0.0;
  for (size_t i = 0; i < k.prob.size(); ++i) {
    acc += k.prob[i];
    k.cum[i] = acc;
  }
  k.cum.back() = 1.0;

  validate_kernel(k);
  return k;
}

void validate_kernel(const TransitionKernel& k) {
  if (k.d < 1 || k.prob.size() != static_cast<size_t>(2 * k.d))
    throw std::invalid_argument("kernel: wrong direction count");
  double sum = 0.0;
  for (double p : k.prob) {
    if (!(p > 0.0) || !(p < 1.0))
      throw std::invalid_argument("kernel: every direction probability must lie in (0,1)");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kTol) throw std::invalid_argument("kernel: probabilities must sum to 1");
  const auto m = drift_of(k);
  if (std::abs(m[0] - k.drift) > kTol)
    throw std::invalid_argument("kernel: first drift coordinate != a");
  for (int j = 1; j < k.d; ++j) {
    if (std::abs(m[static_cast<size_t>(j)]) > kTol)
      throw std::invalid_argument("kernel: lateral drift must vanish");
    if (std::abs(k.p_up(j) - k.p_down(j)) > kTol)
      throw std::invalid_argument("kernel: lateral directions must be symmetric");
  }
}

std::vector<double> drift_of(const TransitionKernel& k) {
  std::vector<double> m(static_cast<size_t>(k.d), 0.0);
  for (int j = 0; j < k.d; ++j)
    m[static_cast<size_t>(j)] = k.p_up(j) - k.p_down(j);
  return m;
}

std::vector<Point> Trajectory::visited() const {
  std::vector<Point> out;
  out.reserve(steps.size() + 1);
  Point pos = start;
  out.push_back(pos);
  for (uint8_t dir : steps) {
    pos[static_cast<size_t>(TransitionKernel::axis_of(dir))] += TransitionKernel::delta_of(dir);
    out.push_back(pos);
  }
  return out;
}

Trajectory walk_sample(const TransitionKernel& k, const Point& start, int64_t T, Stream& s,
                       uint64_t frog_id) {
  if (T < 0) throw std::invalid_argument("walk_sample: horizon must be >= 0");
  if (start.size() != static_cast<size_t>(k.d))
    throw std::invalid_argument("walk_sample: start dimension mismatch");
  Trajectory tr;
  tr.start = start;
  tr.frog_id = frog_id;
  tr.steps.resize(static_cast<size_t>(T));
  for (int64_t t = 0; t < T; ++t)
    tr.steps[static_cast<size_t>(t)] = static_cast<uint8_t>(sample_direction(k, s));
  return tr;
}

Point ctrw_walk_state(const TransitionKernel& k, const Point& start, double t, Stream& s) {
  if (t < 0.0) throw std::invalid_argument("ctrw_walk_state: time must be >= 0");
  if (start.size() != static_cast<size_t>(k.d))
    throw std::invalid_argument("ctrw_walk_state: start dimension mismatch");
  Point pos = start;
  if (t == 0.0) return pos;
  std::poisson_distribution<int64_t> jumps(t);
  const int64_t n = jumps(s);
  for (int64_t i = 0; i < n; ++i) {
    const int dir = sample_direction(k, s);
    pos[static_cast<size_t>(TransitionKernel::axis_of(dir))] += TransitionKernel::delta_of(dir);
  }
  return pos;
}

}  // namespace frogsim
