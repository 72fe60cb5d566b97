#pragma once

#include <cstdint>
#include <vector>

#include "frogsim/geometry.hpp"
#include "frogsim/rng.hpp"

namespace frogsim {

// Nearest-neighbour step distribution on Z^d with mean step a*e1.
// Direction indices are ordered +e1, -e1, +e2, -e2, ..., so index 2j hits
// axis j upward and 2j+1 downward.
struct TransitionKernel {
  int d = 1;
  double drift = 0.0;    // a, in (0,1)
  double lateral = 0.0;  // total mass on axes 2..d
  std::vector<double> prob;  // 2d entries
  std::vector<double> cum;   // running sums of prob; cum.back() == 1

  int n_dirs() const { return 2 * d; }
  static int axis_of(int dir) { return dir / 2; }
  static int64_t delta_of(int dir) { return (dir & 1) ? -1 : +1; }

  double p_up(int axis) const { return prob[static_cast<size_t>(2 * axis)]; }
  double p_down(int axis) const { return prob[static_cast<size_t>(2 * axis + 1)]; }

  // min over directions; the epsilon of the crude hitting bound
  double min_prob() const;
};

// Canonical two-parameter kernel: drift a on axis 1, lateral mass lambda
// split evenly over axes 2..d. For d == 1 lambda must be 0; for d >= 2 it
// must be positive so that every direction keeps positive probability.
TransitionKernel make_drift_kernel(int d, double a, double lambda);

// Checks the kernel invariants (positivity, normalization, lateral symmetry,
// drift == a*e1 within 1e-12) and throws on violation.
void validate_kernel(const TransitionKernel& k);

std::vector<double> drift_of(const TransitionKernel& k);

// One kernel step; consumes exactly one draw from the stream.
inline int sample_direction(const TransitionKernel& k, Stream& s) {
  const double u = s.next_double();
  const int last = k.n_dirs() - 1;
  for (int i = 0; i < last; ++i)
    if (u < k.cum[static_cast<size_t>(i)]) return i;
  return last;
}

struct Trajectory {
  Point start;
  std::vector<uint8_t> steps;  // direction indices
  uint64_t frog_id = 0;

  int64_t horizon() const { return static_cast<int64_t>(steps.size()); }

  // Prefix sums of the steps: visited[0] == start, size horizon()+1.
  std::vector<Point> visited() const;
};

// T i.i.d. kernel steps; deterministic given the stream state, one draw per
// step (so a longer horizon extends rather than reshuffles the path).
Trajectory walk_sample(const TransitionKernel& k, const Point& start, int64_t T, Stream& s,
                       uint64_t frog_id = 0);

// State at continuous time t of the rate-1 continuous-time walk with jump
// law k: a Poisson(t) number of jumps, each drawn from the kernel. The
// multinomial split of a Poisson count makes the coordinates independent.
Point ctrw_walk_state(const TransitionKernel& k, const Point& start, double t, Stream& s);

}  // namespace frogsim
