// Command-line front end: exact verification sweeps, move certificates,
// norm experiment campaigns, and the expander battery, all driven by one
// JSON config. Exit codes: 0 ok, 2 validation/usage, 3 a check failed,
// 4 a capacity guard tripped.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tlab/config.hpp"
#include "tlab/csv.hpp"
#include "tlab/expander.hpp"
#include "tlab/experiments.hpp"
#include "tlab/measure.hpp"
#include "tlab/moves.hpp"
#include "tlab/uc.hpp"

namespace fs = std::filesystem;
using namespace tlab;

namespace {

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void emit(const std::vector<ExperimentRow>& rows, const std::string& out, bool timings) {
  std::string csv = rows_to_csv(rows, timings);
  if (out.empty())
    std::cout << csv;
  else
    atomic_write(out, csv);
}

ExperimentRow check_row(long long m, double p, long long d, std::string quantity,
                        double lower, double upper, bool certified, std::string method,
                        double seconds) {
  ExperimentRow r;
  r.m = m;
  r.p = p;
  r.d = d;
  r.quantity = std::move(quantity);
  r.lower = lower;
  r.upper = upper;
  r.certified = certified;
  r.method = std::move(method);
  r.iterations = 1;
  r.seconds = seconds;
  return r;
}

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// ------------------------------------------------------------- verify-exact

int run_verify(const Config& cfg, uint64_t embed_seed, const std::string& out,
               bool timings) {
  std::vector<ExperimentRow> rows;

  double t0 = now_s();
  SteinbergReport st = check_steinberg(cfg.verify.steinberg_range);
  std::ostringstream sq;
  sq << "steinberg;range=" << cfg.verify.steinberg_range << ";checked=" << st.checked
     << ";failures=" << st.failures;
  rows.push_back(check_row(0, 0, cfg.verify.steinberg_range, sq.str(), double(st.failures),
                           double(st.failures), true, "exact-int", now_s() - t0));
  if (st.failures != 0) throw CheckFailed("steinberg: " + st.first_failure);
  std::cout << "ok steinberg: " << st.checked << " relation instances\n";

  t0 = now_s();
  std::mt19937_64 rng(embed_seed);
  std::uniform_int_distribution<int64_t> val(-50, 50);
  uint64_t mismatches = 0;
  for (unsigned i = 0; i < cfg.verify.embed_pairs; ++i) {
    HeisWord a{Int(val(rng)), Int(val(rng)), Int(val(rng))};
    HeisWord b{Int(val(rng)), Int(val(rng)), Int(val(rng))};
    if (i % 100 == 0) a.a <<= 40;  // exercise arbitrary precision
    if (!(mul(heis_embed(a, 1, 2, 3), heis_embed(b, 1, 2, 3)) ==
          heis_embed(heis_mul(a, b), 1, 2, 3)))
      ++mismatches;
    if (i % 10 == 0 && !(heis_mul(a, heis_inv(a)) == heis_id())) ++mismatches;
  }
  std::ostringstream eq;
  eq << "heis-embedding;pairs=" << cfg.verify.embed_pairs << ";mismatches=" << mismatches;
  rows.push_back(check_row(0, 0, cfg.verify.embed_pairs, eq.str(), double(mismatches),
                           double(mismatches), true, "exact-int", now_s() - t0));
  if (mismatches) throw CheckFailed("heis embedding mismatch");
  std::cout << "ok heis-embedding: " << cfg.verify.embed_pairs << " pairs\n";

  t0 = now_s();
  uint64_t bad = 0;
  for (Letter l : {Letter::X, Letter::Y, Letter::Z}) {
    for (unsigned d = 1; d <= cfg.verify.product_identity_dmax; ++d) {
      HeisMeasure acc = heis_basic(l, d - 1);
      for (unsigned k = d - 1; k-- > 0;) acc = convolve(acc, heis_basic(l, k));
      if (!(acc == heis_uniform(l, d))) ++bad;
    }
  }
  std::ostringstream pq;
  pq << "product-identity;dmax=" << cfg.verify.product_identity_dmax << ";mismatches=" << bad;
  rows.push_back(check_row(0, 0, cfg.verify.product_identity_dmax, pq.str(), double(bad),
                           double(bad), true, "exact-rational", now_s() - t0));
  if (bad) throw CheckFailed("binary product identity failed");
  std::cout << "ok product-identity: d <= " << cfg.verify.product_identity_dmax << "\n";

  t0 = now_s();
  ZSweepReport zs = z_difference_sweep_serial(cfg.verify.zsweep_maxlog);
  ZSweepReport zp = z_difference_sweep_omp(cfg.verify.zsweep_maxlog);
  bool zok = zs.all_ok && zp.all_ok && zs.pairs == zp.pairs;
  std::ostringstream zq;
  zq << "z-sweep;maxlog=" << cfg.verify.zsweep_maxlog << ";pairs=" << zs.pairs
     << ";serial_ok=" << zs.all_ok << ";omp_ok=" << zp.all_ok;
  rows.push_back(check_row(0, 0, cfg.verify.zsweep_maxlog, zq.str(), zok ? 0 : 1, zok ? 0 : 1,
                           true, "exact-int", now_s() - t0));
  if (!zok)
    throw CheckFailed("z sweep failed at " +
                      (zs.first_failure.empty() ? zp.first_failure : zs.first_failure));
  std::cout << "ok z-sweep: " << zs.pairs << " cells, serial and parallel\n";

  emit(rows, out, timings);
  return 0;
}

// --------------------------------------------------------------- move-cert

std::string dir_name(int dir) { return dir > 0 ? "up" : "down"; }

int run_moves(const Config& cfg, unsigned d_lo, unsigned d_hi, const std::string& direction,
              const std::string& cert_dir, const std::string& replay_dir,
              const std::string& out, bool timings) {
  if (!replay_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(replay_dir))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ValidationError("replay: no .json certificates in " + replay_dir);
    for (const fs::path& f : files) {
      std::ifstream is(f);
      MoveScript s = load_script(is);
      ReplayReport rep = replay_verify(s);
      if (!rep.ok) {
        std::cout << "FAIL " << f.filename().string() << ": " << rep.detail << "\n";
        throw CheckFailed("replay failed for " + f.filename().string());
      }
      std::cout << "ok " << f.filename().string() << ": d=" << s.d
                << " direction=" << (s.direction > 0 ? "+1" : "-1") << " derivation="
                << s.derivation << " moves=" << s.moves.size() << "\n";
    }
    return 0;
  }

  std::vector<int> dirs;
  if (direction == "up")
    dirs = {+1};
  else if (direction == "down")
    dirs = {-1};
  else if (direction == "both")
    dirs = {+1, -1};
  else
    throw ValidationError("move-cert: direction must be up, down or both");

  std::vector<ExperimentRow> rows;
  for (unsigned d = d_lo; d <= d_hi && d_hi >= d_lo; ++d) {
    for (int dir : dirs) {
      double t0 = now_s();
      MoveScript s = script_td_to_sd(int64_t(d), dir);
      ReplayReport rep = replay_verify(s);
      if (!rep.ok) throw CheckFailed("fresh certificate failed replay: " + rep.detail);
      std::ostringstream rq;
      rq << "move-replay;direction=" << (dir > 0 ? "+1" : "-1")
         << ";derivation=" << s.derivation << ";moves=" << s.moves.size();
      rows.push_back(
          check_row(0, 0, d, rq.str(), 1.0, 1.0, true, "replay", now_s() - t0));

      if (!cert_dir.empty()) {
        std::ostringstream body;
        save_script(body, s);
        fs::path p = fs::path(cert_dir) /
                     ("move_d" + std::to_string(d) + "_" + dir_name(dir) + ".json");
        atomic_write(p.string(), body.str());
      }

      for (double c : cfg.moves.grid_c) {
        for (double r : cfg.moves.grid_r) {
          double t1 = now_s();
          double cost = eval_total_cost(s, c, r);
          double bound = cost_bound(int64_t(d), c, r);
          std::ostringstream cq;
          cq << "move-cost;direction=" << (dir > 0 ? "+1" : "-1") << ";C=" << fmt_g(c)
             << ";r=" << fmt_g(r);
          rows.push_back(check_row(0, 0, d, cq.str(), cost, bound, cost <= bound,
                                   "exact-eval", now_s() - t1));
          if (cost > bound)
            throw CheckFailed("cost exceeds budget at d=" + std::to_string(d) +
                              " C=" + fmt_g(c) + " r=" + fmt_g(r));
        }
      }
    }
  }
  size_t scripts = rows.empty() ? 0 : dirs.size() * (size_t(d_hi) - d_lo + 1);
  std::cout << "ok move-cert: " << scripts << " certificates, grid "
            << cfg.moves.grid_c.size() * cfg.moves.grid_r.size() << " points each\n";
  emit(rows, out, timings);
  return 0;
}

// --------------------------------------------------------- rep-experiments

void append(std::vector<ExperimentRow>& all, std::vector<ExperimentRow> part) {
  for (auto& r : part) all.push_back(std::move(r));
}

std::vector<ExperimentRow> run_uc_rows(const Config& cfg) {
  std::vector<ExperimentRow> rows;
  struct Case {
    ModulusSpec spec;
    const char* name;
  };
  const Case cases[] = {{{ModulusKind::Hilbert, 2.0}, "hilbert"},
                        {{ModulusKind::LpGeq2, 3.0}, "lp"}};
  for (const Case& c : cases) {
    double t0 = now_s();
    UcSearchReport rep = commuting_contraction_search(c.spec, cfg.uc);
    std::ostringstream q;
    q << "uc-search;kind=" << c.name << ";samples=" << rep.samples
      << ";tested=" << rep.tested << ";violations=" << rep.violations
      << ";worst_eps=" << fmt_g(rep.worst_eps)
      << ";worst_margin=" << fmt_g(rep.worst_margin);
    ExperimentRow r = check_row(0, c.spec.p, 0, q.str(), rep.worst_ratio, rep.worst_r0,
                                false, "ratio-sampling", now_s() - t0);
    r.iterations = int(rep.tested);
    rows.push_back(std::move(r));
    if (rep.violations != 0)
      throw CheckFailed("uc-search found a contraction violation (" + std::string(c.name) +
                        ")");
  }
  return rows;
}

int run_rep(const Config& cfg, const std::string& op, const std::string& out, bool timings) {
  std::vector<ExperimentRow> rows;
  const bool all = op == "all";
  if (!(all || op == "cauchy" || op == "projection" || op == "order" ||
        op == "contraction" || op == "uc"))
    throw ValidationError("rep-experiments: unknown --op " + op);

  if (all || op == "cauchy")
    for (uint32_t m : cfg.experiments.cauchy_ms)
      append(rows, cauchy_decay(m, cfg.experiments.cauchy_dmax, cfg.experiments.cauchy_p,
                                cfg.norm));
  if (all || op == "projection")
    for (uint32_t m : cfg.experiments.projection_ms)
      append(rows, projection_defect(m, cfg.experiments.projection_ps,
                                     cfg.experiments.projection_dmax, cfg.norm));
  if (all || op == "order")
    append(rows, change_of_order(cfg.experiments.order_quotients,
                                 cfg.experiments.order_d3max));
  if (all || op == "contraction")
    append(rows, heis_contraction(cfg.experiments.contraction_ms,
                                  cfg.experiments.contraction_threshold, cfg.norm));
  if (all || op == "uc") append(rows, run_uc_rows(cfg));

  // postconditions that must hold whenever the relevant rows were produced
  for (const ExperimentRow& r : rows) {
    if (r.quantity.rfind("projection-defect", 0) == 0 && r.m == 2 && r.p == 2.0 &&
        r.upper > 1e-10)
      throw CheckFailed("projection defect (m=2, p=2) above 1e-10");
    if (r.quantity.rfind("change-of-order", 0) == 0 &&
        r.quantity.find(";within=1") == std::string::npos)
      throw CheckFailed("change-of-order row outside its budget (d=" +
                        std::to_string(r.d) + ")");
    if (r.quantity.rfind("cauchy-decay", 0) == 0 && r.m == 2 && r.upper > 1e-12)
      throw CheckFailed("mod-2 cauchy difference is not exactly collapsing");
  }
  std::cout << "ok rep-experiments: " << rows.size() << " rows (" << op << ")\n";
  emit(rows, out, timings);
  return 0;
}

// ----------------------------------------------------------------- expander

void export_graph(const std::string& dir, const std::string& stem, const Graph& g) {
  std::ostringstream edges, dot;
  export_edge_list(edges, g);
  export_dot(dot, g);
  atomic_write((fs::path(dir) / (stem + ".txt")).string(), edges.str());
  atomic_write((fs::path(dir) / (stem + ".dot")).string(), dot.str());
}

size_t witness_budget(const Graph& g, size_t configured) {
  // directed-edge passes per witness; big graphs get a spot check
  return uint64_t(g.n) * uint64_t(g.degree) <= 2000000 ? configured
                                                       : std::min<size_t>(configured, 200);
}

void expander_battery(std::vector<ExperimentRow>& rows, const std::string& label,
                      long long m_col, const Graph& g, const Config& cfg,
                      uint64_t witness_seed, double expect_lambda1) {
  double t0 = now_s();
  if (!is_connected(g)) throw CheckFailed(label + ": graph is not connected");
  SpectralReport sr = spectral_gap(g, cfg.spectral);
  const bool dense = sr.method == "dense-eig";
  std::ostringstream sq;
  sq << "spectral-gap;" << label << ";n=" << g.n << ";deg=" << g.degree
     << ";connected=1;resid=" << fmt_g(sr.residual);
  ExperimentRow srow = check_row(m_col, 2.0, 0, sq.str(), sr.lambda1, sr.lambda1, dense,
                                 sr.method, now_s() - t0);
  srow.iterations = sr.iterations;
  srow.residual = sr.residual;
  rows.push_back(std::move(srow));
  if (!(sr.lambda1 > 1e-4)) throw CheckFailed(label + ": spectral gap too small");
  if (expect_lambda1 > 0 && std::fabs(sr.lambda1 - expect_lambda1) > 1e-8)
    throw CheckFailed(label + ": gap disagrees with the closed form");

  t0 = now_s();
  double gamma = poincare_constant(g, sr);
  if (g.n <= 2000) {
    double brute = poincare_constant_brute(g);
    if (std::fabs(gamma - brute) > 1e-8 * std::max(1.0, std::fabs(brute)))
      throw CheckFailed(label + ": spectral and brute constants disagree");
  }
  rows.push_back(check_row(m_col, 2.0, 0, "poincare-gamma;" + label + ";n=" +
                           std::to_string(g.n), gamma, gamma, dense, sr.method,
                           now_s() - t0));

  t0 = now_s();
  size_t count = witness_budget(g, cfg.expander.witnesses);
  WitnessReport w = poincare_witness_sample(g, gamma, 2.0, count, witness_seed);
  std::ostringstream wq;
  wq << "poincare-witness-max-ratio;" << label << ";count=" << w.count;
  ExperimentRow wrow = check_row(m_col, 2.0, 0, wq.str(), w.max_ratio, 1.0, dense,
                                 "ratio-sampling", now_s() - t0);
  wrow.iterations = int(w.count);
  rows.push_back(std::move(wrow));
  if (w.max_ratio > 1.0 + 1e-9)
    throw CheckFailed(label + ": a witness exceeded the certified constant");
}

int run_expander(const Config& cfg, const std::string& export_dir, bool probe_cover,
                 const std::string& out, bool timings) {
  std::vector<ExperimentRow> rows;
  uint64_t wseed = cfg.spectral.seed ^ 0x5eedULL;

  for (uint32_t m : cfg.expander.ms) {
    GroupTable t = enumerate_sl3(m);
    Graph g = build_cayley(t, elementary_generators(m));
    expander_battery(rows, "family=cayley;m=" + std::to_string(m), m, g, cfg, wseed++, 0.0);
    if (!export_dir.empty()) export_graph(export_dir, "cayley_m" + std::to_string(m), g);

    if (probe_cover || cfg.expander.bounded_generation) {
      double t0 = now_s();
      for (bool six : {false, true}) {
        CoverReport cr = bounded_generation_probe(t, six, cfg.expander.bg_max_level);
        if (!cr.covered) throw CheckFailed("cover probe hit the level cap (m=" +
                                           std::to_string(m) + ")");
        std::ostringstream cq;
        cq << "bounded-generation;m=" << m << ";all_six=" << (six ? 1 : 0) << ";levels=";
        for (size_t i = 0; i < cr.level_sizes.size(); ++i)
          cq << (i ? "|" : "") << cr.level_sizes[i];
        ExperimentRow r = check_row(m, 0, cr.nu, cq.str(), double(cr.nu), double(cr.nu),
                                    true, "exact-int", now_s() - t0);
        r.iterations = int(cr.level_sizes.size());
        rows.push_back(std::move(r));
        t0 = now_s();
      }
    }
  }

  for (uint32_t n : {5u, 50u, 200u}) {
    if (n > cfg.expander.fixture_nmax) continue;
    Graph g = complete_graph(n);
    expander_battery(rows, "family=complete;n=" + std::to_string(n), 0, g, cfg, wseed++,
                     double(n) / (n - 1));
    if (!export_dir.empty() && n <= 50)
      export_graph(export_dir, "complete_n" + std::to_string(n), g);
  }
  for (uint32_t n : {16u, 101u}) {
    if (n > cfg.expander.fixture_nmax) continue;
    Graph g = cycle_graph(n);
    expander_battery(rows, "family=cycle;n=" + std::to_string(n), 0, g, cfg, wseed++,
                     1.0 - std::cos(2.0 * 3.14159265358979323846 / n));
  }

  std::cout << "ok expander: " << rows.size() << " rows\n";
  emit(rows, out, timings);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification lab for averaging products on SL3 and its quotients"};
  app.require_subcommand(1);

  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  bool timings = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "override every RNG seed deterministically")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_flag("--timings", timings, "fill the seconds column in CSV output");

  auto* verify = app.add_subcommand("verify-exact", "exact identity battery");
  std::string verify_out;
  int steinberg_range = -1, product_dmax = -1, zsweep_maxlog = -1;
  int64_t embed_pairs = -1;
  verify->add_option("--out", verify_out, "CSV output path (default stdout)");
  verify->add_option("--steinberg-range", steinberg_range, "override exponent window");
  verify->add_option("--embed-pairs", embed_pairs, "override embedding sample count");
  verify->add_option("--product-dmax", product_dmax, "override product identity depth");
  verify->add_option("--zsweep-maxlog", zsweep_maxlog, "override dense sweep size");

  auto* moves = app.add_subcommand("move-cert", "derive, check and price move scripts");
  std::string moves_out, cert_dir, replay_dir, direction = "both";
  int64_t d_lo = -1, d_hi = -1;
  moves->add_option("--out", moves_out, "CSV output path (default stdout)");
  moves->add_option("--d-lo", d_lo, "first scale");
  moves->add_option("--d-hi", d_hi, "last scale");
  moves->add_option("--direction", direction, "up, down or both");
  moves->add_option("--cert-dir", cert_dir, "write one JSON certificate per scale");
  moves->add_option("--replay", replay_dir, "verify existing certificates instead");

  auto* rep = app.add_subcommand("rep-experiments", "norm campaigns on finite quotients");
  std::string rep_out, rep_op = "all";
  rep->add_option("--out", rep_out, "CSV output path (default stdout)");
  rep->add_option("--op", rep_op, "all, cauchy, projection, order, contraction or uc");

  auto* expander = app.add_subcommand("expander", "spectral gaps and poincare battery");
  std::string exp_out, export_dir;
  bool probe_cover = false;
  expander->add_option("--out", exp_out, "CSV output path (default stdout)");
  expander->add_option("--export-dir", export_dir, "write edge lists and dot files");
  expander->add_flag("--probe-cover", probe_cover, "also run the group cover probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    uint64_t embed_seed = 0xacce91ULL;
    if (seed_set) {
      cfg.norm.seed = seed;
      cfg.spectral.seed = seed + 1;
      cfg.uc.seed = seed + 2;
      embed_seed = seed + 3;
    }
    if (verify->parsed()) {
      if (steinberg_range >= 0) cfg.verify.steinberg_range = steinberg_range;
      if (embed_pairs >= 0) cfg.verify.embed_pairs = unsigned(embed_pairs);
      if (product_dmax >= 0) cfg.verify.product_identity_dmax = unsigned(product_dmax);
      if (zsweep_maxlog >= 0) cfg.verify.zsweep_maxlog = unsigned(zsweep_maxlog);
      return run_verify(cfg, embed_seed, verify_out, timings);
    }
    if (moves->parsed()) {
      unsigned lo = d_lo >= 0 ? unsigned(d_lo) : cfg.moves.d_lo;
      unsigned hi = d_hi >= 0 ? unsigned(d_hi) : cfg.moves.d_hi;
      return run_moves(cfg, lo, hi, direction, cert_dir, replay_dir, moves_out, timings);
    }
    if (rep->parsed()) return run_rep(cfg, rep_op, rep_out, timings);
    if (expander->parsed())
      return run_expander(cfg, export_dir, probe_cover, exp_out, timings);
    return 2;
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 3;
  } catch (const MoveError& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 3;
  } catch (const CapacityError& e) {
    std::cerr << "capacity: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
