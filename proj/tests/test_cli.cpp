// End-to-end checks of the command-line orchestrator: exit codes, CSV
// shape, certificate round trips and byte-for-byte determinism. Everything
// runs the installed binary (TLAB_BIN) through std::system.

#include <doctest.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string kBin = TLAB_BIN;

fs::path scratch() {
  static fs::path p = [] {
    fs::path q = fs::current_path() / "cli_scratch";
    fs::remove_all(q);
    fs::create_directories(q);
    return q;
  }();
  return p;
}

int run_cli(const std::string& args, const std::string& log_name) {
  fs::path log = scratch() / log_name;
  std::string cmd = kBin + " " + args + " > " + log.string() + " 2>&1";
  int st = std::system(cmd.c_str());
  REQUIRE(st != -1);
  REQUIRE(WIFEXITED(st));
  return WEXITSTATUS(st);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  REQUIRE(bool(is));
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary | std::ios::trunc);
  os << s;
  REQUIRE(bool(os));
}

const char* kHeader = "m,p,d,quantity,lower,upper,certified,method,iterations,residual,seconds\n";

const char* kTrimmedConfig = R"({
  "uc": {"samples": 1500, "dim": 8, "ascent_seeds": 2, "ascent_rounds": 40},
  "experiments": {
    "cauchy_ms": [2], "cauchy_dmax": 2,
    "projection_ms": [2], "projection_ps": [2.0], "projection_dmax": 2,
    "order_quotients": [8], "order_d3max": 5,
    "contraction_ms": [2], "contraction_threshold": 0.25
  },
  "expander": {"ms": [2], "witnesses": 300, "fixture_nmax": 24}
})";

}  // namespace

TEST_CASE("verify-exact runs green and writes the CSV schema") {
  fs::path out = scratch() / "verify.csv";
  int code = run_cli("--seed 5 verify-exact --steinberg-range 2 --embed-pairs 400"
                     " --product-dmax 6 --zsweep-maxlog 8 --out " + out.string(),
                     "verify.log");
  CHECK(code == 0);
  std::string log = slurp(scratch() / "verify.log");
  CHECK(log.find("ok steinberg") != std::string::npos);
  CHECK(log.find("ok z-sweep") != std::string::npos);
  std::string csv = slurp(out);
  CHECK(csv.rfind(kHeader, 0) == 0);
  CHECK(csv.find("steinberg;range=2") != std::string::npos);
  CHECK(csv.find("heis-embedding;pairs=400;mismatches=0") != std::string::npos);
  // seconds column stays empty without --timings
  CHECK(csv.find("exact-int,1,0,\n") != std::string::npos);
}

TEST_CASE("usage and validation problems exit with 2") {
  CHECK(run_cli("verify-exact --no-such-flag", "e1.log") == 2);
  CHECK(run_cli("", "e2.log") == 2);  // a subcommand is required
  CHECK(run_cli("rep-experiments --op bogus", "e3.log") == 2);

  fs::path bad = scratch() / "bad.json";
  spit(bad, "{ this is not json");
  CHECK(run_cli("--config " + bad.string() + " verify-exact", "e4.log") == 2);
  spit(bad, R"({"verify": {"steinberg_rang": 2}})");
  CHECK(run_cli("--config " + bad.string() + " verify-exact", "e5.log") == 2);
  std::string log = slurp(scratch() / "e5.log");
  CHECK(log.find("steinberg_rang") != std::string::npos);
}

TEST_CASE("capacity guards exit with 4") {
  CHECK(run_cli("verify-exact --zsweep-maxlog 21", "cap.log") == 4);
  std::string log = slurp(scratch() / "cap.log");
  CHECK(log.find("capacity") != std::string::npos);
}

TEST_CASE("move-cert derives, replays, and rejects tampering") {
  fs::path certs = scratch() / "certs";
  fs::path out = scratch() / "moves.csv";
  int code = run_cli("move-cert --d-lo 11 --d-hi 13 --direction both --cert-dir " +
                     certs.string() + " --out " + out.string(), "mc1.log");
  CHECK(code == 0);
  int json_files = 0;
  for (const auto& e : fs::directory_iterator(certs))
    if (e.path().extension() == ".json") ++json_files;
  CHECK(json_files == 6);
  std::string csv = slurp(out);
  CHECK(csv.find("move-replay;direction=+1;derivation=mirrored") != std::string::npos);
  CHECK(csv.find("move-cost;direction=-1") != std::string::npos);

  CHECK(run_cli("move-cert --replay " + certs.string(), "mc2.log") == 0);
  std::string log = slurp(scratch() / "mc2.log");
  CHECK(log.find("ok move_d11_up.json") != std::string::npos);

  // corrupt one recorded cost multiplier; the file still parses but the
  // replayed cost no longer matches the record
  fs::path victim = certs / "move_d12_down.json";
  std::string body = slurp(victim);
  auto pos = body.find("\"mult\":");
  REQUIRE(pos != std::string::npos);
  pos += 7;
  while (pos < body.size() && body[pos] == ' ') ++pos;
  REQUIRE(std::isdigit(static_cast<unsigned char>(body[pos])));
  body[pos] = body[pos] == '9' ? '1' : char(body[pos] + 1);
  spit(victim, body);
  CHECK(run_cli("move-cert --replay " + certs.string(), "mc3.log") == 3);
  std::string fail_log = slurp(scratch() / "mc3.log");
  CHECK(fail_log.find("move_d12_down.json") != std::string::npos);
}

TEST_CASE("empty scale range still produces a header-only CSV") {
  fs::path out = scratch() / "empty.csv";
  int code = run_cli("move-cert --d-lo 20 --d-hi 19 --out " + out.string(), "mc4.log");
  CHECK(code == 0);
  CHECK(slurp(out) == kHeader);
}

TEST_CASE("scales below the derivation floor exit with 3") {
  CHECK(run_cli("move-cert --d-lo 10 --d-hi 10", "mc5.log") == 3);
}

TEST_CASE("rep-experiments is byte-for-byte deterministic") {
  fs::path cfg = scratch() / "trimmed.json";
  spit(cfg, kTrimmedConfig);
  fs::path r1 = scratch() / "rep1.csv";
  fs::path r2 = scratch() / "rep2.csv";
  CHECK(run_cli("--config " + cfg.string() + " --seed 9 rep-experiments --out " +
                r1.string(), "rep1.log") == 0);
  CHECK(run_cli("--config " + cfg.string() + " --seed 9 rep-experiments --out " +
                r2.string(), "rep2.log") == 0);
  std::string a = slurp(r1);
  CHECK(a == slurp(r2));
  CHECK(a.rfind(kHeader, 0) == 0);
  CHECK(a.find("cauchy-decay") != std::string::npos);
  CHECK(a.find("projection-defect") != std::string::npos);
  CHECK(a.find("change-of-order") != std::string::npos);
  CHECK(a.find("heis-contraction") != std::string::npos);
  CHECK(a.find("uc-search;kind=hilbert") != std::string::npos);
  CHECK(a.find("ratio-sampling") != std::string::npos);
}

TEST_CASE("expander battery exports graphs and stays deterministic") {
  fs::path cfg = scratch() / "trimmed2.json";
  spit(cfg, kTrimmedConfig);
  fs::path e1 = scratch() / "exp1.csv";
  fs::path e2 = scratch() / "exp2.csv";
  fs::path gdir = scratch() / "graphs";
  CHECK(run_cli("--config " + cfg.string() + " --seed 3 expander --export-dir " +
                gdir.string() + " --out " + e1.string(), "exp1.log") == 0);
  CHECK(run_cli("--config " + cfg.string() + " --seed 3 expander --out " + e2.string(),
                "exp2.log") == 0);
  std::string a = slurp(e1);
  CHECK(a == slurp(e2));
  CHECK(a.find("spectral-gap;family=cayley;m=2") != std::string::npos);
  CHECK(a.find("family=complete;n=5") != std::string::npos);
  CHECK(a.find("family=cycle;n=16") != std::string::npos);
  CHECK(a.find("poincare-witness-max-ratio") != std::string::npos);
  CHECK(fs::exists(gdir / "cayley_m2.txt"));
  CHECK(fs::exists(gdir / "cayley_m2.dot"));
  std::string dot = slurp(gdir / "cayley_m2.dot");
  CHECK(dot.find("graph") != std::string::npos);
}
