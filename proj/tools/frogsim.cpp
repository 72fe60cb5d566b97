// frogsim — batch front-end for the drifted frog-model laboratory.
//
// Subcommands: hit, extremes, cascade, simulate, phase-scan, certify.
// Exit codes: 0 ok, 2 config error, 3 bound violation, 4 truncated or
// vacuous (inconclusive).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frogsim/cascade.hpp"
#include "frogsim/csv.hpp"
#include "frogsim/extreme_stats.hpp"
#include "frogsim/frog_engine.hpp"
#include "frogsim/hitting.hpp"
#include "frogsim/lattice_walk.hpp"
#include "frogsim/site_config.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace frogsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBound = 3;
constexpr int kExitInconclusive = 4;

std::vector<int64_t> parse_i64_list(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stoll(tok));
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated integer list, got '" + s + "'");
  return out;
}

std::vector<double> parse_f64_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw CLI::ValidationError("expected a comma-separated number list, got '" + s + "'");
  return out;
}

Point parse_point(const std::string& s, int d) {
  const auto v = parse_i64_list(s);
  if (static_cast<int>(v.size()) != d)
    throw CLI::ValidationError("point '" + s + "' must have exactly " + std::to_string(d) + " coordinates");
  return v;
}

std::string default_out(const std::string& sub, const std::string& ext) {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  const auto s = std::chrono::duration_cast<std::chrono::seconds>(now).count();
  return sub + "_" + std::to_string(s) + ext;
}

int64_t timestamp_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

struct KernelFlags {
  int d = 1;
  double a = 0.2;
  double lateral = 0.0;
};

void add_kernel_flags(CLI::App* cmd, KernelFlags& kf) {
  cmd->add_option("--d", kf.d, "lattice dimension")->check(CLI::Range(1, kMaxDim));
  cmd->add_option("--a", kf.a, "drift magnitude, in (0,1)")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
  cmd->add_option("--lateral", kf.lateral, "total lateral mass, in [0, 1-a)")
      ->check(CLI::Range(0.0, 1.0));
}

json kernel_json(const TransitionKernel& k) {
  return json{{"d", k.d}, {"a", k.drift}, {"lateral", k.lateral}};
}

// ---------------------------------------------------------------- hit ----

struct HitArgs {
  KernelFlags kf;
  std::string x_str = "0", y_str = "1";
  int64_t horizon = 0;  // 0 -> auto
  int64_t box_half = 0;  // 0 -> auto
  uint64_t trials = 100000;
  std::string method = "all";
  uint64_t seed = 1;
  int workers = 0;
  std::string out;
};

int run_hit(const HitArgs& a) {
  const TransitionKernel k = make_drift_kernel(a.kf.d, a.kf.a, a.kf.lateral);
  const Point x = parse_point(a.x_str, k.d);
  const Point y = parse_point(a.y_str, k.d);
  int64_t T = a.horizon;
  if (T <= 0)
    T = std::max<int64_t>(static_cast<int64_t>(std::ceil(4.0 * std::abs(y[0] - x[0]) / k.drift)), 200);
  int64_t half = a.box_half;
  if (half <= 0)
    half = static_cast<int64_t>(std::ceil(k.drift * static_cast<double>(T))) + 40 +
           std::max(linf_norm(x), linf_norm(y));
  const BoxWindow box = BoxWindow::centered(k.d, half);

  std::vector<HitCsvRow> rows;
  bool bound_violation = false;
  auto push = [&](const HittingEstimate& est) {
    HitCsvRow row;
    row.x = x;
    row.y = y;
    row.est = est;
    row.box = box.to_string();
    if (est.method != HitMethod::kMonteCarlo) {
      row.has_eps = true;
      row.eps = check_eps_bound(k, x, y, est);
      if (!row.eps.pass) bound_violation = true;
    }
    rows.push_back(row);
  };

  if (a.method == "dp" || a.method == "all") push(hit_prob_exact(k, x, y, box, T));
  if ((a.method == "closed" || a.method == "all") && k.d == 1) {
    HittingEstimate est;
    est.value = hit_prob_closed_form_d1(k, y[0] - x[0]);
    est.method = HitMethod::kClosedForm;
    push(est);
  }
  if (a.method == "mc" || a.method == "all")
    push(hit_prob_mc(k, x, y, T, a.trials, a.seed, a.workers));

  const std::string out = a.out.empty() ? default_out("hit", ".csv") : a.out;
  write_hit_csv(out, rows);

  json cfg{{"subcommand", "hit"},     {"kernel", kernel_json(k)},
           {"x", point_to_string(x)}, {"y", point_to_string(y)},
           {"T", T},                  {"box_half", half},
           {"trials", a.trials},      {"seed", a.seed},
           {"out", out}};
  std::cout << cfg.dump() << "\n";
  for (const auto& r : rows) {
    std::cout << to_string(r.est.method) << ": value=" << r.est.value << " stderr=" << r.est.se;
    if (r.has_eps)
      std::cout << " eps_bound=" << r.eps.bound << (r.eps.pass ? " pass" : " FAIL");
    std::cout << "\n";
  }
  return bound_violation ? kExitBound : kExitOk;
}

// ----------------------------------------------------------- extremes ----

struct ExtremesArgs {
  std::string op = "trace";
  std::string dist = "exppareto:1.0";
  double r = 1.5, c = 1.0, c2 = 4.0, c3 = 1.5, beta = 2.0;
  int blocks = 12, traces = 1;
  std::string cramer_n = "5,10,20,40";
  uint64_t trials = 100000;
  uint64_t seed = 1;
  int workers = 0;
  std::string out;
};

int run_extremes(const ExtremesArgs& a) {
  const SiteDistribution dist = SiteDistribution::parse(a.dist);
  if (a.op == "trace") {
    const BlockPlan plan = BlockPlan::geometric(a.c2, a.c3, a.beta, a.blocks);
    const std::string out = a.out.empty() ? default_out("extremes", ".csv") : a.out;
    CsvWriter w(out);
    w.header({"i", "l_i", "log_threshold", "log_Mi", "exceeded"});
    uint64_t traces_with_late_exceedance = 0;
    const int late_from = a.blocks / 2 + 1;
    for (int t = 0; t < a.traces; ++t) {
      Stream s(derive_key(a.seed, stream_domain::kBlockSample, static_cast<uint64_t>(t)));
      const ExceedanceTrace trace = exceedance_trace(dist, plan, a.c, a.r, s);
      for (const auto& b : trace.blocks) w.row(b.i, b.l, b.log_threshold, b.log_max, b.exceeded);
      if (trace.exceed_count(late_from) > 0) ++traces_with_late_exceedance;
    }
    json cfg{{"subcommand", "extremes"},
             {"op", "trace"},
             {"dist", dist.to_string()},
             {"r", a.r},
             {"c", a.c},
             {"plan", {{"c2", a.c2}, {"c3", a.c3}, {"beta", a.beta}, {"blocks", a.blocks}}},
             {"traces", a.traces},
             {"seed", a.seed},
             {"late_exceedance_fraction",
              static_cast<double>(traces_with_late_exceedance) / std::max(1, a.traces)},
             {"out", out}};
    std::cout << cfg.dump() << "\n";
    return kExitOk;
  }
  if (a.op == "cramer") {
    const auto n_list = parse_i64_list(a.cramer_n);
    const CramerReport rep = cramer_tail_estimate(dist, n_list, a.trials, a.seed, a.workers);
    const std::string out = a.out.empty() ? default_out("cramer", ".csv") : a.out;
    write_cramer_csv(out, rep);
    json cfg{{"subcommand", "extremes"}, {"op", "cramer"},      {"dist", dist.to_string()},
             {"n", a.cramer_n},          {"trials", a.trials},  {"seed", a.seed},
             {"fitted", rep.fitted},     {"b_hat", rep.b_hat},  {"corr", rep.correlation},
             {"b_lo95", rep.b_lo95},     {"out", out}};
    std::cout << cfg.dump() << "\n";
    return kExitOk;
  }
  throw CLI::ValidationError("--op must be trace or cramer");
}

// ------------------------------------------------------------ cascade ----

struct CascadeArgs {
  int alpha = 0;  // 0 -> max(3, ceil(1/c1))
  int d = 2;
  int k = 2;
  double c1 = 0.4, b = 0.1;
  int levels = 4;
  int i_max = 8;
  uint64_t seed = 1;
  std::string out;
};

int run_cascade(const CascadeArgs& a) {
  CascadeParams p;
  p.d = a.d;
  p.k = a.k;
  p.c1 = a.c1;
  p.b = a.b;
  p.alpha = a.alpha > 0 ? a.alpha : CascadeParams::min_alpha(a.c1);
  p.validate();

  std::vector<LevelRow> rows;
  bool violation = false;
  for (int n = 1; n <= a.levels; ++n) {
    const BoxF f = box_F(p.alpha, n, p.d);
    rows.push_back({n, f.exact_count, f.formula_value, f.lower_bound, f.upper_bound});
    if (!f.sandwich_ok) violation = true;
  }
  for (int i = 0; i <= a.i_max; ++i) {
    const ZetaFloorReport z = zeta_floor_check(p, i);
    if (!z.floor_ok || !z.chain_step_ok) violation = true;
  }
  const CertificateReport cert = g_of_k(p, p.k, a.i_max);
  if (!cert.coherent) violation = true;

  const std::string out = a.out.empty() ? default_out("cascade", ".csv") : a.out;
  write_level_csv(out, rows);
  json cj{{"alpha", p.alpha}, {"d", p.d},
          {"k", p.k},         {"c1", p.c1},
          {"c4", p.effective_c4()}, {"b", p.b},
          {"g_k", cert.g_value},    {"certificate", cert.certificate},
          {"vacuous", cert.vacuous}, {"out", out}};
  std::cout << cj.dump() << "\n";
  if (violation) return kExitBound;
  return cert.vacuous ? kExitInconclusive : kExitOk;
}

// ----------------------------------------------------------- simulate ----

struct SimulateArgs {
  KernelFlags kf;
  std::string dist = "det:1";
  int64_t window = 16;
  int64_t horizon = 0;  // 0 -> auto from window
  std::string seeds = "1";
  uint64_t cap = 10'000'000;
  uint64_t site_cap = 0;  // 0 -> unlimited
  std::string engine = "closure";
  int workers = 0;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const TransitionKernel k = make_drift_kernel(a.kf.d, a.kf.a, a.kf.lateral);
  const SiteDistribution dist = SiteDistribution::parse(a.dist);
  const auto seed_list = parse_i64_list(a.seeds);
  const int64_t T = a.horizon > 0
                        ? a.horizon
                        : std::max<int64_t>(64, static_cast<int64_t>(std::ceil(
                                                    4.0 * static_cast<double>(a.window) / k.drift)));

  const std::string out = a.out.empty() ? default_out("simulate", ".jsonl") : a.out;
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot open output file: " + out);

  bool truncated = false;
  for (int64_t seed : seed_list) {
    SimConfig cfg;
    cfg.kernel = k;
    cfg.field = SiteField{static_cast<uint64_t>(seed), dist};
    cfg.window = BoxWindow::centered(k.d, a.window);
    cfg.horizon = T;
    cfg.master_seed = static_cast<uint64_t>(seed);
    cfg.frog_cap = a.cap;
    cfg.site_frog_cap = a.site_cap == 0 ? ~0ULL : a.site_cap;
    const ClosureReport rep =
        a.engine == "stepwise" ? run_stepwise(cfg) : run_closure(cfg, a.workers);
    truncated |= rep.cap_hit;

    json rec{{"subcommand", "simulate"},
             {"kernel", kernel_json(k)},
             {"dist", dist.to_string()},
             {"window", a.window},
             {"horizon", T},
             {"seed", seed},
             {"engine", a.engine},
             {"frog_cap", a.cap},
             {"site_frog_cap", a.site_cap},
             {"awakened_count", rep.awakened_sites.size()},
             {"total_frogs", rep.total_frogs},
             {"origin_visits", rep.origin_visits},
             {"frontier_history", rep.frontier_history},
             {"window_hit", rep.window_hit},
             {"cap_hit", rep.cap_hit},
             {"site_cap_hit", rep.site_cap_hit},
             {"timestamp_ms", timestamp_ms()}};
    os << rec.dump() << "\n";
  }
  std::cout << "wrote " << seed_list.size() << " run record(s) to " << out << "\n";
  return truncated ? kExitInconclusive : kExitOk;
}

// ---------------------------------------------------------- phase-scan ----

struct PhaseScanArgs {
  KernelFlags kf{1, 0.2, 0.0};
  std::string dists = "exppareto:0.5,geom:0.5";
  std::string windows = "16,64,256";
  double t_factor = 4.0;
  int seeds = 200;
  uint64_t seed_base = 1000;
  uint64_t cap = 10'000'000;
  uint64_t site_cap = 200;
  int workers = 0;
  std::string out;
};

int run_phase_scan(const PhaseScanArgs& a) {
  const TransitionKernel k = make_drift_kernel(a.kf.d, a.kf.a, a.kf.lateral);
  std::vector<SiteDistribution> dists;
  {
    std::stringstream ss(a.dists);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      // distribution specs contain ':' but no ','; rejoin family:param pairs
      if (!tok.empty()) dists.push_back(SiteDistribution::parse(tok));
    }
  }
  if (dists.empty()) throw CLI::ValidationError("--dists: no distributions given");
  const auto windows = parse_i64_list(a.windows);
  std::vector<uint64_t> seeds;
  for (int i = 0; i < a.seeds; ++i) seeds.push_back(a.seed_base + static_cast<uint64_t>(i));

  const PhaseScanTable table =
      phase_scan(k, dists, windows, a.t_factor, seeds, a.cap,
                 a.site_cap == 0 ? ~0ULL : a.site_cap, a.workers);
  const std::string out = a.out.empty() ? default_out("phase_scan", ".csv") : a.out;
  write_phase_scan_csv(out, table);

  json cfg{{"subcommand", "phase-scan"}, {"kernel", kernel_json(k)}, {"dists", a.dists},
           {"windows", a.windows},       {"t_factor", a.t_factor},   {"seeds", a.seeds},
           {"seed_base", a.seed_base},   {"frog_cap", a.cap},        {"site_frog_cap", a.site_cap},
           {"out", out}};
  std::cout << cfg.dump() << "\n";
  for (const auto& c : table.cells)
    std::cout << c.dist << " W=" << c.window_half << " mean=" << c.mean << " stderr=" << c.se
              << " truncated=" << c.truncated_runs << "\n";
  return kExitOk;
}

// ------------------------------------------------------------ certify ----

struct CertifyArgs {
  int alpha = 0;
  int d = 2;
  double c1 = 0.4, b = 0.1;
  int k_max = 64;
  double target_g = 0.5;
  std::string out;
};

int run_certify(const CertifyArgs& a) {
  CascadeParams p;
  p.d = a.d;
  p.c1 = a.c1;
  p.b = a.b;
  p.alpha = a.alpha > 0 ? a.alpha : CascadeParams::min_alpha(a.c1);
  p.k = 2;
  p.validate();

  const int k_star = smallest_k_below(p, a.target_g, a.k_max);
  json out_json{{"alpha", p.alpha}, {"d", p.d},   {"c1", p.c1},
                {"c4", p.effective_c4()}, {"b", p.b}, {"target_g", a.target_g},
                {"k_max", a.k_max}};
  if (k_star < 0) {
    out_json["vacuous"] = true;
    std::cout << out_json.dump() << "\n";
    std::cerr << "vacuous certificate: g(k) >= " << a.target_g << " for every k <= " << a.k_max
              << "\n";
    return kExitInconclusive;
  }
  const CertificateReport cert = g_of_k(p, k_star);
  out_json["k"] = k_star;
  out_json["g_k"] = cert.g_value;
  out_json["certificate"] = cert.certificate;
  out_json["vacuous"] = false;
  if (!a.out.empty()) {
    std::ofstream os(a.out);
    if (!os) throw std::runtime_error("cannot open output file: " + a.out);
    os << out_json.dump(2) << "\n";
  }
  std::cout << out_json.dump() << "\n";
  std::cout << "smallest k with g(k) < " << a.target_g << ": k=" << k_star
            << "  (certificate 1-g=" << cert.certificate << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frogsim: simulator and numerical checks for the frog model with drift"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file; flags override file values");

  HitArgs hit;
  auto* hit_cmd = app.add_subcommand("hit", "hitting probabilities: exact DP, closed form, Monte Carlo");
  add_kernel_flags(hit_cmd, hit.kf);
  hit_cmd->add_option("--x", hit.x_str, "source point, comma-separated coordinates");
  hit_cmd->add_option("--y", hit.y_str, "target point, comma-separated coordinates");
  hit_cmd->add_option("--horizon", hit.horizon, "step horizon T (0 = auto)");
  hit_cmd->add_option("--box", hit.box_half, "DP box half-width (0 = auto)");
  hit_cmd->add_option("--trials", hit.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  hit_cmd->add_option("--method", hit.method, "dp | mc | closed | all")
      ->check(CLI::IsMember({"dp", "mc", "closed", "all"}));
  hit_cmd->add_option("--seed", hit.seed, "master seed")->envname("FROGSIM_SEED");
  hit_cmd->add_option("--workers", hit.workers, "worker threads (0 = auto)");
  hit_cmd->add_option("--out", hit.out, "output CSV path");

  ExtremesArgs ext;
  auto* ext_cmd = app.add_subcommand("extremes", "block maxima exceedances and lower-tail decay");
  ext_cmd->add_option("--op", ext.op, "trace | cramer")->check(CLI::IsMember({"trace", "cramer"}));
  ext_cmd->add_option("--dist", ext.dist, "site distribution (det:m, geom:q, exppareto:s)");
  ext_cmd->add_option("--r", ext.r, "moment exponent r")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--c", ext.c, "threshold constant c")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--c2", ext.c2, "block growth constant c2")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--c3", ext.c3, "block growth constant c3")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--beta", ext.beta, "block growth base beta > 1");
  ext_cmd->add_option("--blocks", ext.blocks, "number of blocks")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--traces", ext.traces, "independent traces")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--cramer-n", ext.cramer_n, "comma-separated sample sizes for the tail fit");
  ext_cmd->add_option("--trials", ext.trials, "Monte Carlo trials per n")->check(CLI::PositiveNumber);
  ext_cmd->add_option("--seed", ext.seed, "master seed")->envname("FROGSIM_SEED");
  ext_cmd->add_option("--workers", ext.workers, "worker threads (0 = auto)");
  ext_cmd->add_option("--out", ext.out, "output CSV path");

  CascadeArgs cas;
  auto* cas_cmd = app.add_subcommand("cascade", "renormalization boxes, bound chain, certificate");
  cas_cmd->add_option("--alpha", cas.alpha, "box base alpha (0 = max(3, ceil(1/c1)))");
  cas_cmd->add_option("--d", cas.d, "dimension")->check(CLI::Range(1, kMaxDim));
  cas_cmd->add_option("--k", cas.k, "start level k >= 2")->check(CLI::Range(2, 1000));
  cas_cmd->add_option("--c1", cas.c1, "fitted hitting constant")->check(CLI::PositiveNumber);
  cas_cmd->add_option("--b", cas.b, "fitted lower-tail rate")->check(CLI::PositiveNumber);
  cas_cmd->add_option("--levels", cas.levels, "box levels to tabulate")->check(CLI::PositiveNumber);
  cas_cmd->add_option("--i-max", cas.i_max, "cascade levels for the bound sums");
  cas_cmd->add_option("--seed", cas.seed, "master seed")->envname("FROGSIM_SEED");
  cas_cmd->add_option("--out", cas.out, "output CSV path");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "run the frog model and record JSON lines");
  add_kernel_flags(sim_cmd, sim.kf);
  sim_cmd->add_option("--dist", sim.dist, "site distribution spec");
  sim_cmd->add_option("--window", sim.window, "window half-width")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--horizon", sim.horizon, "per-frog horizon (0 = auto)");
  sim_cmd->add_option("--seeds", sim.seeds, "comma-separated master seeds");
  sim_cmd->add_option("--cap", sim.cap, "total frog cap")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--site-cap", sim.site_cap, "per-site admission cap (0 = unlimited)");
  sim_cmd->add_option("--engine", sim.engine, "closure | stepwise")
      ->check(CLI::IsMember({"closure", "stepwise"}));
  sim_cmd->add_option("--workers", sim.workers, "worker threads (0 = auto)");
  sim_cmd->add_option("--out", sim.out, "output JSON-lines path");

  PhaseScanArgs ps;
  auto* ps_cmd = app.add_subcommand("phase-scan", "origin-visit means across nested windows");
  add_kernel_flags(ps_cmd, ps.kf);
  ps_cmd->add_option("--dists", ps.dists, "comma-separated distribution specs");
  ps_cmd->add_option("--windows", ps.windows, "comma-separated nested window half-widths");
  ps_cmd->add_option("--t-factor", ps.t_factor, "horizon factor: T = max(64, factor*W/a)");
  ps_cmd->add_option("--seeds", ps.seeds, "number of seeds")->check(CLI::PositiveNumber);
  ps_cmd->add_option("--seed-base", ps.seed_base, "first master seed")->envname("FROGSIM_SEED");
  ps_cmd->add_option("--cap", ps.cap, "total frog cap")->check(CLI::PositiveNumber);
  ps_cmd->add_option("--site-cap", ps.site_cap, "per-site admission cap (0 = unlimited)");
  ps_cmd->add_option("--workers", ps.workers, "worker threads (0 = auto)");
  ps_cmd->add_option("--out", ps.out, "output CSV path");

  CertifyArgs cert;
  auto* cert_cmd = app.add_subcommand("certify", "smallest k with a nonvacuous 1-g(k) certificate");
  cert_cmd->add_option("--alpha", cert.alpha, "box base alpha (0 = max(3, ceil(1/c1)))");
  cert_cmd->add_option("--d", cert.d, "dimension")->check(CLI::Range(1, kMaxDim));
  cert_cmd->add_option("--c1", cert.c1, "fitted hitting constant")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--b", cert.b, "fitted lower-tail rate")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--k-max", cert.k_max, "largest k to consider")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--target-g", cert.target_g, "certificate threshold on g(k)")
      ->check(CLI::PositiveNumber);
  cert_cmd->add_option("--out", cert.out, "output JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*hit_cmd) return run_hit(hit);
    if (*ext_cmd) return run_extremes(ext);
    if (*cas_cmd) return run_cascade(cas);
    if (*sim_cmd) return run_simulate(sim);
    if (*ps_cmd) return run_phase_scan(ps);
    if (*cert_cmd) return run_certify(cert);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBound;
  }
  return kExitConfig;
}
