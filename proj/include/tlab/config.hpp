#pragma once

// One JSON config file drives every command. Missing keys fall back to the
// defaults below; unknown keys are rejected so typos cannot silently change
// a run. The CLI can override the seed and a few hot knobs per invocation.

#include <cstdint>
#include <string>
#include <vector>

#include "tlab/expander.hpp"
#include "tlab/op_norm.hpp"
#include "tlab/uc.hpp"

namespace tlab {

struct VerifyConfig {
  int steinberg_range = 8;             // exhaustive window [-range, range]
  unsigned embed_pairs = 10000;        // random word pairs for the embedding
  unsigned product_identity_dmax = 12; // z-difference identity scales
  unsigned zsweep_maxlog = 16;         // dense sweep up to 2^maxlog
};

struct MoveConfig {
  unsigned d_lo = 11;
  unsigned d_hi = 64;
  std::vector<double> grid_c = {0.25, 0.5, 1.0, 2.0, 4.0, 10.0};
  std::vector<double> grid_r = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6,
                                0.7,  0.75, 0.8, 0.85, 0.9, 0.95, 0.99};
};

struct ExperimentConfig {
  std::vector<uint32_t> cauchy_ms = {2, 3};
  unsigned cauchy_dmax = 3;
  double cauchy_p = 2.0;
  std::vector<uint32_t> projection_ms = {2, 3};
  std::vector<double> projection_ps = {1.5, 2.0, 3.0};
  unsigned projection_dmax = 4;
  std::vector<uint32_t> order_quotients = {8, 16};
  unsigned order_d3max = 8;
  std::vector<uint32_t> contraction_ms = {2, 3, 4, 5};
  double contraction_threshold = 0.25;
};

struct ExpanderConfig {
  std::vector<uint32_t> ms = {2, 3, 4, 5};
  size_t witnesses = 10000;
  uint32_t fixture_nmax = 200;
  bool bounded_generation = false;
  int bg_max_level = 16;
};

struct Config {
  NormOptions norm;
  SpectralOptions spectral;
  UcSearchOptions uc;
  VerifyConfig verify;
  MoveConfig moves;
  ExperimentConfig experiments;
  ExpanderConfig expander;
};

Config parse_config(const std::string& json_text);  // throws ValidationError
Config load_config(const std::string& path);
std::string config_to_json(const Config& c);

}  // namespace tlab
