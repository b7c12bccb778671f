#pragma once

// Product-word rewriting for the six-letter averaging products T_d / S_d:
// switch moves and up/down moves on H_{i,k} triples, each carrying an exact
// symbolic cost term, assembled into replayable certificates.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tlab {

struct Token {
  int i = 0, k = 0;    // 1-based pair, i != k
  int64_t exp = 0;     // averaging exponent: the token stands for X_{i,k}^{exp}
  bool operator==(const Token& o) const { return i == o.i && k == o.k && exp == o.exp; }
};

using ProductWord = std::vector<Token>;

ProductWord word_td(int64_t d);
ProductWord word_sd(int64_t d);
std::string to_string(const ProductWord& w);

struct CostTerm {
  enum class Form { HalfPow, SqrtDecay };
  Form form = Form::HalfPow;
  // HalfPow:  coeff * (1/2)^exp              (switch moves; coeff is 8)
  // SqrtDecay: mult * C * r^{sqrt(min_d)}    (up/down moves; mult = |d4 - d3|)
  int64_t coeff = 0;
  int64_t exp = 0;
  int64_t mult = 0;
  int64_t min_d = 0;
  double eval(double C, double r) const;
  bool operator==(const CostTerm& o) const = default;
};

struct Move {
  enum class Kind { Switch, UpDown };
  Kind kind = Kind::Switch;
  int pos = 0;      // leftmost token of the H_{i,k} triple
  int64_t d4 = 0;   // UpDown target exponent
  CostTerm cost;    // recomputed and compared on replay
};

struct MoveScript {
  int64_t d = 0;
  int direction = 0;          // +1 or -1
  std::string derivation;     // "forward" or "mirrored"
  ProductWord initial;
  std::vector<Move> moves;
  ProductWord final_word;
};

struct MoveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Both validate that [pos, pos+2] is an H_{i,k} triple: middle token X_{i,k},
// outer tokens {X_{i,j}, X_{j,k}} in either orientation. On success the
// rewritten word is returned and *cost receives the exact term.
//
// switch:   pre d1 + d2 <= d3 - 2;   cost 8 (1/2)^{d3 - (d1+d2)};  block reversed
// up/down:  pre d1, d2 >= min(d3,d4)/4 and d1 + d2 - max(d3,d4) >= min(d3,d4)/4;
//           cost |d4 - d3| C r^{sqrt(min(d3,d4))};  middle exponent becomes d4
ProductWord apply_switch(const ProductWord& w, int pos, CostTerm* cost);
ProductWord apply_updown(const ProductWord& w, int pos, int64_t d4, CostTerm* cost);

// T_d to S_{d + direction} certificates, d >= 11. The forward builder follows
// the four steps in their original order (up on H13/H31, down on H23/H21,
// double switch, up on H12/H32, with the up/down roles flipped for -1).
// For direction +1 and 11 <= d <= 19 the first forward step fails its own
// quarter precondition (d1+d2-max = 3d-10 < 2.5d = min/4, so only d >= 20
// passes) and the dispatcher falls back to the mirrored builder: the -1-style
// derivation run from S_{d+1} down to T_d and reversed move by move, which
// validates mechanically for every d >= 11. Certificates record which
// builder produced them.
MoveScript script_td_to_sd(int64_t d, int direction);
MoveScript script_td_to_sd_forward(int64_t d, int direction);   // may throw MoveError
MoveScript script_td_to_sd_mirrored(int64_t d);                 // direction +1 only

struct ReplayReport {
  bool ok = true;
  std::string detail;
};

// Re-applies every move from the initial word, recomputing each precondition
// and cost term; any mismatch with the recorded script is reported.
ReplayReport replay_verify(const MoveScript& s);

// Requires C > 0 and 0 <= r < 1.
double eval_total_cost(const MoveScript& s, double C, double r);
double cost_bound(int64_t d, double C, double r);  // (42C + 16) d r^{sqrt d}

void save_script(std::ostream& os, const MoveScript& s);
MoveScript load_script(std::istream& is);

}  // namespace tlab
