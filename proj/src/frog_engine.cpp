#include "frogsim/frog_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frogsim/csv.hpp"
#include "frogsim/parallel.hpp"
#include "frogsim/stats.hpp"

namespace frogsim {

void SimConfig::validate() const {
  validate_kernel(kernel);
  if (window.dim() != kernel.d) throw std::invalid_argument("SimConfig: window rank != d");
  if (!window.contains(origin_point(kernel.d)))
    throw std::invalid_argument("SimConfig: window must contain the origin");
  if (horizon < 0) throw std::invalid_argument("SimConfig: horizon must be >= 0");
  if (frog_cap < 1) throw std::invalid_argument("SimConfig: frog_cap must be >= 1");
  if (site_frog_cap < 1) throw std::invalid_argument("SimConfig: site_frog_cap must be >= 1");
  if (window.cell_count() > 20'000'000)
    throw std::invalid_argument("SimConfig: window too large for the dense engine");
}

bool reports_equivalent(const ClosureReport& a, const ClosureReport& b) {
  return a.awakened_sites == b.awakened_sites && a.total_frogs == b.total_frogs &&
         a.origin_visits == b.origin_visits && a.window_hit == b.window_hit;
}

namespace {

// Window geometry flattened for the hot loop.
struct Grid {
  int d;
  std::array<int64_t, kMaxDim> lo{}, hi{};
  std::array<int64_t, kMaxDim> width{};
  int64_t cells = 0;
  int64_t origin_cell = -1;

  explicit Grid(const BoxWindow& w) : d(w.dim()) {
    cells = 1;
    for (int j = 0; j < d; ++j) {
      lo[static_cast<size_t>(j)] = w.lo[static_cast<size_t>(j)];
      hi[static_cast<size_t>(j)] = w.hi[static_cast<size_t>(j)];
      width[static_cast<size_t>(j)] = w.hi[static_cast<size_t>(j)] - w.lo[static_cast<size_t>(j)] + 1;
      cells *= width[static_cast<size_t>(j)];
    }
    Coords z{};
    origin_cell = cell_of(z);
  }

  // -1 when outside
  int64_t cell_of(const Coords& p) const {
    int64_t idx = 0;
    for (int j = 0; j < d; ++j) {
      const int64_t c = p[static_cast<size_t>(j)];
      if (c < lo[static_cast<size_t>(j)] || c > hi[static_cast<size_t>(j)]) return -1;
      idx = idx * width[static_cast<size_t>(j)] + (c - lo[static_cast<size_t>(j)]);
    }
    return idx;
  }

  Point point_of(int64_t idx) const {
    Point x(static_cast<size_t>(d), 0);
    for (int j = d; j-- > 0;) {
      const int64_t w = width[static_cast<size_t>(j)];
      x[static_cast<size_t>(j)] = lo[static_cast<size_t>(j)] + (idx % w);
      idx /= w;
    }
    return x;
  }
};

uint64_t frog_stream_key(const SimConfig& cfg, const Point& site, uint64_t index) {
  return derive_key(cfg.master_seed, stream_domain::kFrogPath, encode_site(site), index);
}

struct WalkOutcome {
  uint64_t origin_visits = 0;
  bool window_hit = false;
};

// Walks one frog for the full horizon; visits to not-yet-seen window cells
// are appended to `discovered` (deduplicated through `seen`). Direction
// tables live on the stack so the step loop stays register-resident.
WalkOutcome walk_frog(const SimConfig& cfg, const Grid& grid, const Point& site, uint64_t index,
                      std::vector<uint8_t>& seen, std::vector<int64_t>& discovered) {
  WalkOutcome out;
  const int d = cfg.kernel.d;
  double cum[2 * kMaxDim];
  int axis[2 * kMaxDim];
  int64_t delta[2 * kMaxDim];
  const int nd = cfg.kernel.n_dirs();
  for (int i = 0; i < nd; ++i) {
    cum[i] = cfg.kernel.cum[static_cast<size_t>(i)];
    axis[i] = TransitionKernel::axis_of(i);
    delta[i] = TransitionKernel::delta_of(i);
  }
  Coords pos{};
  for (int j = 0; j < d; ++j) pos[static_cast<size_t>(j)] = site[static_cast<size_t>(j)];

  bool at_origin = true;
  for (int j = 0; j < d; ++j) at_origin &= pos[static_cast<size_t>(j)] == 0;
  if (at_origin) ++out.origin_visits;  // time-0 convention (initial frog only)

  Stream s(frog_stream_key(cfg, site, index));
  for (int64_t t = 0; t < cfg.horizon; ++t) {
    const double u = s.next_double();
    int dir = nd - 1;
    for (int i = 0; i < nd - 1; ++i)
      if (u < cum[i]) {
        dir = i;
        break;
      }
    pos[static_cast<size_t>(axis[dir])] += delta[dir];

    bool zero = true;
    for (int j = 0; j < d; ++j) zero &= pos[static_cast<size_t>(j)] == 0;
    if (zero) ++out.origin_visits;

    const int64_t cell = grid.cell_of(pos);
    if (cell < 0) {
      out.window_hit = true;
    } else if (!seen[static_cast<size_t>(cell)]) {
      seen[static_cast<size_t>(cell)] = 1;
      discovered.push_back(cell);
    }
  }
  return out;
}

struct SiteBatch {
  int64_t cell;
  uint64_t n_frogs;
};

}  // namespace

ClosureReport run_closure(const SimConfig& cfg, int workers) {
  cfg.validate();
  const Grid grid(cfg.window);
  workers = resolve_workers(workers);

  ClosureReport rep;
  // processed: visited window cells whose site value has been resolved
  // (dedup); awake: the origin plus processed cells that hold frogs
  std::vector<uint8_t> processed(static_cast<size_t>(grid.cells), 0);
  std::vector<uint8_t> awake(static_cast<size_t>(grid.cells), 0);
  processed[static_cast<size_t>(grid.origin_cell)] = 1;
  awake[static_cast<size_t>(grid.origin_cell)] = 1;
  rep.frontier_history.push_back(1);
  rep.total_frogs = 1;

  std::vector<SiteBatch> round{{grid.origin_cell, 1}};
  while (!round.empty()) {
    // flatten the round into individually addressable frogs
    std::vector<std::pair<int64_t, uint64_t>> tasks;  // (cell, index-at-site)
    for (const auto& b : round)
      for (uint64_t i = 0; i < b.n_frogs; ++i) tasks.emplace_back(b.cell, i);

    const int nchunks = static_cast<int>(
        std::min<int64_t>(workers, static_cast<int64_t>(tasks.size()) > 0 ? static_cast<int64_t>(tasks.size()) : 1));
    const size_t chunk = (tasks.size() + static_cast<size_t>(nchunks) - 1) / static_cast<size_t>(nchunks);

    struct ChunkResult {
      uint64_t visits = 0;
      bool window_hit = false;
      std::vector<int64_t> discovered;
    };
    std::vector<ChunkResult> results(static_cast<size_t>(nchunks));

    parallel_for(nchunks, nchunks, [&](int64_t c) {
      auto& res = results[static_cast<size_t>(c)];
      std::vector<uint8_t> seen = processed;  // chunk-local dedup
      const size_t b = static_cast<size_t>(c) * chunk;
      const size_t e = std::min(tasks.size(), b + chunk);
      for (size_t i = b; i < e; ++i) {
        const Point site = grid.point_of(tasks[i].first);
        const WalkOutcome o = walk_frog(cfg, grid, site, tasks[i].second, seen, res.discovered);
        res.visits += o.origin_visits;
        res.window_hit |= o.window_hit;
      }
    });

    // merge in chunk order == frog order; identical for every worker count
    std::vector<int64_t> newly;
    for (const auto& res : results) {
      rep.origin_visits += res.visits;
      rep.window_hit |= res.window_hit;
      for (int64_t cell : res.discovered) {
        if (processed[static_cast<size_t>(cell)]) continue;
        processed[static_cast<size_t>(cell)] = 1;
        newly.push_back(cell);
      }
    }

    round.clear();
    uint64_t newly_awake = 0;
    for (int64_t cell : newly) {
      const uint64_t eta = cfg.field.site_value(grid.point_of(cell));
      if (eta == 0) continue;  // nothing sleeps there; the site stays dormant
      awake[static_cast<size_t>(cell)] = 1;
      ++newly_awake;
      uint64_t admit = std::min(eta, cfg.site_frog_cap);
      if (admit < eta) rep.site_cap_hit = true;
      if (rep.total_frogs + admit > cfg.frog_cap) {
        admit = cfg.frog_cap - rep.total_frogs;
        rep.cap_hit = true;
      }
      rep.total_frogs += admit;
      if (admit > 0) round.push_back({cell, admit});
    }
    if (newly_awake > 0) rep.frontier_history.push_back(newly_awake);
  }

  for (int64_t c = 0; c < grid.cells; ++c)
    if (awake[static_cast<size_t>(c)]) rep.awakened_sites.push_back(grid.point_of(c));
  return rep;
}

ClosureReport run_stepwise(const SimConfig& cfg) {
  cfg.validate();
  const Grid grid(cfg.window);
  const int d = cfg.kernel.d;

  ClosureReport rep;
  std::vector<uint8_t> processed(static_cast<size_t>(grid.cells), 0);
  std::vector<uint8_t> awake(static_cast<size_t>(grid.cells), 0);
  processed[static_cast<size_t>(grid.origin_cell)] = 1;
  awake[static_cast<size_t>(grid.origin_cell)] = 1;
  rep.frontier_history.push_back(1);
  rep.total_frogs = 1;
  rep.origin_visits = 1;  // initial frog at the origin at time 0

  struct Frog {
    Coords pos;
    Stream s;
    int64_t remaining;
  };
  std::vector<Frog> frogs;
  frogs.push_back({Coords{}, Stream(frog_stream_key(cfg, origin_point(d), 0)), cfg.horizon});

  size_t live_from = 0;
  while (live_from < frogs.size()) {
    std::vector<int64_t> pending;
    const size_t tick_end = frogs.size();  // frogs born this tick move next tick
    for (size_t fi = live_from; fi < tick_end; ++fi) {
      Frog& f = frogs[fi];
      if (f.remaining == 0) continue;
      --f.remaining;
      const int dir = sample_direction(cfg.kernel, f.s);
      f.pos[static_cast<size_t>(TransitionKernel::axis_of(dir))] += TransitionKernel::delta_of(dir);

      bool zero = true;
      for (int j = 0; j < d; ++j) zero &= f.pos[static_cast<size_t>(j)] == 0;
      if (zero) ++rep.origin_visits;

      const int64_t cell = grid.cell_of(f.pos);
      if (cell < 0) {
        rep.window_hit = true;
      } else if (!processed[static_cast<size_t>(cell)]) {
        processed[static_cast<size_t>(cell)] = 1;
        pending.push_back(cell);
      }
    }

    uint64_t newly_awake = 0;
    for (int64_t cell : pending) {
      const Point site = grid.point_of(cell);
      const uint64_t eta = cfg.field.site_value(site);
      if (eta == 0) continue;
      awake[static_cast<size_t>(cell)] = 1;
      ++newly_awake;
      uint64_t admit = std::min(eta, cfg.site_frog_cap);
      if (admit < eta) rep.site_cap_hit = true;
      if (rep.total_frogs + admit > cfg.frog_cap) {
        admit = cfg.frog_cap - rep.total_frogs;
        rep.cap_hit = true;
      }
      rep.total_frogs += admit;
      Coords start{};
      for (int j = 0; j < d; ++j) start[static_cast<size_t>(j)] = site[static_cast<size_t>(j)];
      for (uint64_t i = 0; i < admit; ++i)
        frogs.push_back({start, Stream(frog_stream_key(cfg, site, i)), cfg.horizon});
    }
    if (newly_awake > 0) rep.frontier_history.push_back(newly_awake);

    while (live_from < frogs.size() && frogs[live_from].remaining == 0) ++live_from;
  }

  for (int64_t c = 0; c < grid.cells; ++c)
    if (awake[static_cast<size_t>(c)]) rep.awakened_sites.push_back(grid.point_of(c));
  return rep;
}

const PhaseScanCell& PhaseScanTable::cell(const std::string& dist, int64_t w) const {
  for (const auto& c : cells)
    if (c.dist == dist && c.window_half == w) return c;
  throw std::invalid_argument("phase_scan: no such cell");
}

PhaseScanTable phase_scan(const TransitionKernel& kernel,
                          const std::vector<SiteDistribution>& dists,
                          const std::vector<int64_t>& window_halves, double horizon_factor,
                          const std::vector<uint64_t>& seeds, uint64_t frog_cap,
                          uint64_t site_frog_cap, int workers) {
  if (dists.empty() || window_halves.empty() || seeds.empty())
    throw std::invalid_argument("phase_scan: empty experiment plan");
  for (size_t i = 1; i < window_halves.size(); ++i)
    if (window_halves[i] <= window_halves[i - 1])
      throw std::invalid_argument("phase_scan: windows must be nested increasing");

  // One per-frog horizon for every cell, sized for the largest window:
  // per-seed trajectories are then literally shared across windows and the
  // observed growth is a pure window effect.
  const int64_t T = std::max<int64_t>(
      64, static_cast<int64_t>(std::ceil(horizon_factor *
                                         static_cast<double>(window_halves.back()) / kernel.drift)));

  PhaseScanTable table;
  for (const auto& dist : dists) {
    for (int64_t w : window_halves) {
      std::vector<double> visits(seeds.size(), 0.0);
      std::vector<uint8_t> truncated(seeds.size(), 0), site_capped(seeds.size(), 0);
      parallel_for(static_cast<int64_t>(seeds.size()), workers, [&](int64_t i) {
        SimConfig cfg;
        cfg.kernel = kernel;
        cfg.field = SiteField{seeds[static_cast<size_t>(i)], dist};
        cfg.window = BoxWindow::centered(kernel.d, w);
        cfg.horizon = T;
        cfg.master_seed = seeds[static_cast<size_t>(i)];
        cfg.frog_cap = frog_cap;
        cfg.site_frog_cap = site_frog_cap;
        const ClosureReport rep = run_closure(cfg, 1);
        visits[static_cast<size_t>(i)] = static_cast<double>(rep.origin_visits);
        truncated[static_cast<size_t>(i)] = rep.cap_hit ? 1 : 0;
        site_capped[static_cast<size_t>(i)] = rep.site_cap_hit ? 1 : 0;
      });
      PhaseScanCell cell;
      cell.dist = dist.to_string();
      cell.window_half = w;
      cell.horizon = T;
      cell.seeds = static_cast<int>(seeds.size());
      const MeanStderr ms = mean_stderr(visits);
      cell.mean = ms.mean;
      cell.se = ms.se;
      for (uint8_t b : truncated) cell.truncated_runs += b;
      for (uint8_t b : site_capped) cell.site_capped_runs += b;
      table.cells.push_back(cell);
    }
  }
  return table;
}

void write_phase_scan_csv(const std::string& path, const PhaseScanTable& table) {
  CsvWriter w(path);
  w.header({"dist", "W", "T", "seeds", "mean", "stderr", "truncated_runs", "site_capped_runs"});
  for (const auto& c : table.cells)
    w.row(c.dist, c.window_half, c.horizon, c.seeds, c.mean, c.se, c.truncated_runs,
          c.site_capped_runs);
}

}  // namespace frogsim
