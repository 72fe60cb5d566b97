#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frogsim/geometry.hpp"
#include "frogsim/lattice_walk.hpp"
#include "frogsim/site_config.hpp"

namespace frogsim {

// One frog-model run at finite scale: sleeping counts come lazily from
// `field`, only sites inside `window` can be awakened, and every frog walks
// exactly `horizon` own steps regardless of when it was activated (this is
// what makes activation order irrelevant and the two engines equivalent).
struct SimConfig {
  TransitionKernel kernel;
  SiteField field;
  BoxWindow window;
  int64_t horizon = 1;
  uint64_t master_seed = 1;  // drives the per-frog trajectory streams
  uint64_t frog_cap = 10'000'000;       // safety bound on walked frogs
  uint64_t site_frog_cap = ~0ULL;       // per-site admission bound

  void validate() const;
};

struct ClosureReport {
  // closed set of awakened sites (origin included), lexicographically sorted
  std::vector<Point> awakened_sites;
  uint64_t total_frogs = 0;    // walked frogs, initial frog included
  uint64_t origin_visits = 0;  // (frog, time) pairs at 0; the initial frog's
                               // presence at time 0 counts as one
  // newly awakened sites per closure round / per stepwise tick; an engine
  // diagnostic, excluded from cross-engine equality
  std::vector<uint64_t> frontier_history;
  bool window_hit = false;    // some trajectory left the window
  bool cap_hit = false;       // frog_cap truncated admissions
  bool site_cap_hit = false;  // site_frog_cap truncated some site

  bool truncated() const { return cap_hit || site_cap_hit; }
};

// True when the engine-contract fields (awakened set, visit count, frog
// count, window flag) agree; frontier history and cap flags are not part of
// the cross-engine contract.
bool reports_equivalent(const ClosureReport& a, const ClosureReport& b);

// Worklist fixed point over pre-assigned trajectories: frogs are processed
// in rounds, trajectories may be computed on several workers, and round
// results are merged in frog order, so the report is identical for every
// worker count. Deterministic given master_seed.
ClosureReport run_closure(const SimConfig& config, int workers = 1);

// Time-synchronous reference engine: every active frog makes one step per
// tick, activation happens on first visit, trajectories are the same
// per-frog streams as run_closure.
ClosureReport run_stepwise(const SimConfig& config);

struct PhaseScanCell {
  std::string dist;
  int64_t window_half = 0;
  int64_t horizon = 0;
  int seeds = 0;
  double mean = 0.0;
  double se = 0.0;
  int truncated_runs = 0;
  int site_capped_runs = 0;
};

struct PhaseScanTable {
  std::vector<PhaseScanCell> cells;
  const PhaseScanCell& cell(const std::string& dist, int64_t w) const;
};

// Mean origin visits per (distribution, window), over the given seeds, on
// nested centered windows [-W, W]^d with per-frog horizon
// max(64, ceil(horizon_factor * W / a)). Growth across W is the finite-scale
// recurrence signature; saturation the transience signature.
PhaseScanTable phase_scan(const TransitionKernel& kernel,
                          const std::vector<SiteDistribution>& dists,
                          const std::vector<int64_t>& window_halves, double horizon_factor,
                          const std::vector<uint64_t>& seeds, uint64_t frog_cap,
                          uint64_t site_frog_cap, int workers = 1);

void write_phase_scan_csv(const std::string& path, const PhaseScanTable& table);

}  // namespace frogsim
