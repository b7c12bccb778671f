#include "tlab/config.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace tlab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { throw ValidationError("config: " + msg); }

// pull one typed value out of a section, tracking which keys were consumed
struct Section {
  const json& obj;
  std::string name;
  std::vector<std::string> seen;

  template <class T>
  void num(const char* key, T& target) {
    if (!obj.contains(key)) return;
    seen.push_back(key);
    const json& v = obj.at(key);
    if (!v.is_number()) bad(name + "." + key + " must be a number");
    target = v.get<T>();
  }
  void flag(const char* key, bool& target) {
    if (!obj.contains(key)) return;
    seen.push_back(key);
    const json& v = obj.at(key);
    if (!v.is_boolean()) bad(name + "." + key + " must be a boolean");
    target = v.get<bool>();
  }
  template <class T>
  void list(const char* key, std::vector<T>& target) {
    if (!obj.contains(key)) return;
    seen.push_back(key);
    const json& v = obj.at(key);
    if (!v.is_array()) bad(name + "." + key + " must be an array");
    target.clear();
    for (const auto& e : v) {
      if (!e.is_number()) bad(name + "." + key + " entries must be numbers");
      target.push_back(e.get<T>());
    }
  }
  void finish() {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool known = false;
      for (const auto& k : seen)
        if (k == it.key()) {
          known = true;
          break;
        }
      if (!known) bad("unknown key " + name + "." + it.key());
    }
  }
};

}  // namespace

Config parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) bad("top level must be an object");

  Config c;
  const char* known_sections[] = {"norm",  "spectral",    "uc",      "verify",
                                  "moves", "experiments", "expander"};
  for (auto it = root.begin(); it != root.end(); ++it) {
    bool known = false;
    for (const char* s : known_sections)
      if (it.key() == s) known = true;
    if (!known) bad("unknown section " + it.key());
    if (!it.value().is_object()) bad("section " + it.key() + " must be an object");
  }

  if (root.contains("norm")) {
    Section s{root["norm"], "norm", {}};
    s.num("dense_capacity", c.norm.dense_capacity);
    s.num("tol", c.norm.tol);
    s.num("max_iter", c.norm.max_iter);
    s.num("restarts", c.norm.restarts);
    s.num("seed", c.norm.seed);
    s.finish();
  }
  if (root.contains("spectral")) {
    Section s{root["spectral"], "spectral", {}};
    s.num("dense_capacity", c.spectral.dense_capacity);
    s.num("tol", c.spectral.tol);
    s.num("max_iter", c.spectral.max_iter);
    s.num("seed", c.spectral.seed);
    s.finish();
  }
  if (root.contains("uc")) {
    Section s{root["uc"], "uc", {}};
    s.num("samples", c.uc.samples);
    s.num("dim", c.uc.dim);
    s.num("seed", c.uc.seed);
    s.num("eps_floor", c.uc.eps_floor);
    s.num("ascent_seeds", c.uc.ascent_seeds);
    s.num("ascent_rounds", c.uc.ascent_rounds);
    s.finish();
  }
  if (root.contains("verify")) {
    Section s{root["verify"], "verify", {}};
    s.num("steinberg_range", c.verify.steinberg_range);
    s.num("embed_pairs", c.verify.embed_pairs);
    s.num("product_identity_dmax", c.verify.product_identity_dmax);
    s.num("zsweep_maxlog", c.verify.zsweep_maxlog);
    s.finish();
  }
  if (root.contains("moves")) {
    Section s{root["moves"], "moves", {}};
    s.num("d_lo", c.moves.d_lo);
    s.num("d_hi", c.moves.d_hi);
    s.list("grid_c", c.moves.grid_c);
    s.list("grid_r", c.moves.grid_r);
    s.finish();
  }
  if (root.contains("experiments")) {
    Section s{root["experiments"], "experiments", {}};
    s.list("cauchy_ms", c.experiments.cauchy_ms);
    s.num("cauchy_dmax", c.experiments.cauchy_dmax);
    s.num("cauchy_p", c.experiments.cauchy_p);
    s.list("projection_ms", c.experiments.projection_ms);
    s.list("projection_ps", c.experiments.projection_ps);
    s.num("projection_dmax", c.experiments.projection_dmax);
    s.list("order_quotients", c.experiments.order_quotients);
    s.num("order_d3max", c.experiments.order_d3max);
    s.list("contraction_ms", c.experiments.contraction_ms);
    s.num("contraction_threshold", c.experiments.contraction_threshold);
    s.finish();
  }
  if (root.contains("expander")) {
    Section s{root["expander"], "expander", {}};
    s.list("ms", c.expander.ms);
    s.num("witnesses", c.expander.witnesses);
    s.num("fixture_nmax", c.expander.fixture_nmax);
    s.flag("bounded_generation", c.expander.bounded_generation);
    s.num("bg_max_level", c.expander.bg_max_level);
    s.finish();
  }

  if (c.moves.d_lo < 11) bad("moves.d_lo must be >= 11");
  if (c.moves.d_hi < c.moves.d_lo) bad("moves.d_hi must be >= moves.d_lo");
  for (double r : c.moves.grid_r)
    if (!(r >= 0.0 && r < 1.0)) bad("moves.grid_r entries must lie in [0,1)");
  for (double cc : c.moves.grid_c)
    if (!(cc > 0.0)) bad("moves.grid_c entries must be positive");
  if (!(c.experiments.contraction_threshold > 0 &&
        c.experiments.contraction_threshold < 1))
    bad("experiments.contraction_threshold must lie in (0,1)");
  for (uint32_t m : c.experiments.cauchy_ms)
    if (m < 2) bad("experiments.cauchy_ms entries must be >= 2");
  for (uint32_t m : c.expander.ms)
    if (m < 2) bad("expander.ms entries must be >= 2");
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) bad("cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const Config& c) {
  json root;
  root["norm"] = {{"dense_capacity", c.norm.dense_capacity},
                  {"tol", c.norm.tol},
                  {"max_iter", c.norm.max_iter},
                  {"restarts", c.norm.restarts},
                  {"seed", c.norm.seed}};
  root["spectral"] = {{"dense_capacity", c.spectral.dense_capacity},
                      {"tol", c.spectral.tol},
                      {"max_iter", c.spectral.max_iter},
                      {"seed", c.spectral.seed}};
  root["uc"] = {{"samples", c.uc.samples},
                {"dim", c.uc.dim},
                {"seed", c.uc.seed},
                {"eps_floor", c.uc.eps_floor},
                {"ascent_seeds", c.uc.ascent_seeds},
                {"ascent_rounds", c.uc.ascent_rounds}};
  root["verify"] = {{"steinberg_range", c.verify.steinberg_range},
                    {"embed_pairs", c.verify.embed_pairs},
                    {"product_identity_dmax", c.verify.product_identity_dmax},
                    {"zsweep_maxlog", c.verify.zsweep_maxlog}};
  root["moves"] = {{"d_lo", c.moves.d_lo},
                   {"d_hi", c.moves.d_hi},
                   {"grid_c", c.moves.grid_c},
                   {"grid_r", c.moves.grid_r}};
  root["experiments"] = {{"cauchy_ms", c.experiments.cauchy_ms},
                         {"cauchy_dmax", c.experiments.cauchy_dmax},
                         {"cauchy_p", c.experiments.cauchy_p},
                         {"projection_ms", c.experiments.projection_ms},
                         {"projection_ps", c.experiments.projection_ps},
                         {"projection_dmax", c.experiments.projection_dmax},
                         {"order_quotients", c.experiments.order_quotients},
                         {"order_d3max", c.experiments.order_d3max},
                         {"contraction_ms", c.experiments.contraction_ms},
                         {"contraction_threshold", c.experiments.contraction_threshold}};
  root["expander"] = {{"ms", c.expander.ms},
                      {"witnesses", c.expander.witnesses},
                      {"fixture_nmax", c.expander.fixture_nmax},
                      {"bounded_generation", c.expander.bounded_generation},
                      {"bg_max_level", c.expander.bg_max_level}};
  return root.dump(2) + "\n";
}

}  // namespace tlab
