#include "tlab/moves.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace tlab {

ProductWord word_td(int64_t d) {
  if (d < 1) throw MoveError("word_td: d must be >= 1");
  return {{1, 2, 4 * d}, {1, 3, 10 * d}, {2, 3, 9 * d},
          {2, 1, 9 * d}, {3, 1, 10 * d}, {3, 2, 4 * d}};
}

ProductWord word_sd(int64_t d) {
  if (d < 1) throw MoveError("word_sd: d must be >= 1");
  return {{2, 3, 4 * d}, {1, 3, 10 * d}, {1, 2, 9 * d},
          {3, 2, 9 * d}, {3, 1, 10 * d}, {2, 1, 4 * d}};
}

std::string to_string(const ProductWord& w) {
  std::ostringstream os;
  for (size_t t = 0; t < w.size(); ++t) {
    if (t) os << " ";
    os << "X(" << w[t].i << "," << w[t].k << ")^" << w[t].exp;
  }
  return os.str();
}

double CostTerm::eval(double C, double r) const {
  if (form == Form::HalfPow) return double(coeff) * std::pow(0.5, double(exp));
  return double(mult) * C * std::pow(r, std::sqrt(double(min_d)));
}

namespace {

struct Triple {
  int i, j, k;
  int64_t d1, d2, d3;  // exponents of X_{i,j}, X_{j,k}, X_{i,k}
  bool outer_ij_first;  // orientation: X_{i,j} X_{i,k} X_{j,k} vs reversed
};

Triple read_triple(const ProductWord& w, int pos) {
  if (pos < 0 || size_t(pos) + 3 > w.size())
    throw MoveError("move: triple position out of range");
  const Token& t0 = w[size_t(pos)];
  const Token& t1 = w[size_t(pos) + 1];
  const Token& t2 = w[size_t(pos) + 2];
  Triple tr;
  tr.i = t1.i;
  tr.k = t1.k;
  tr.j = 6 - tr.i - tr.k;  // the remaining index of {1,2,3}
  tr.d3 = t1.exp;
  if (t0.i == tr.i && t0.k == tr.j && t2.i == tr.j && t2.k == tr.k) {
    tr.outer_ij_first = true;
    tr.d1 = t0.exp;
    tr.d2 = t2.exp;
  } else if (t0.i == tr.j && t0.k == tr.k && t2.i == tr.i && t2.k == tr.j) {
    tr.outer_ij_first = false;
    tr.d1 = t2.exp;
    tr.d2 = t0.exp;
  } else {
    throw MoveError("move: tokens at pos " + std::to_string(pos) +
                    " do not form an H_{i,k} triple: " + to_string({t0, t1, t2}));
  }
  return tr;
}

std::string triple_desc(const Triple& t) {
  std::ostringstream os;
  os << "H_{" << t.i << "," << t.k << "} with d1=" << t.d1 << " d2=" << t.d2 << " d3=" << t.d3;
  return os.str();
}

}  // namespace

ProductWord apply_switch(const ProductWord& w, int pos, CostTerm* cost) {
  Triple t = read_triple(w, pos);
  if (t.d1 + t.d2 > t.d3 - 2) {
    std::ostringstream os;
    os << "switch precondition failed at pos " << pos << ": d1+d2 = " << (t.d1 + t.d2)
       << " > d3-2 = " << (t.d3 - 2) << " (" << triple_desc(t) << ")";
    throw MoveError(os.str());
  }
  if (cost) {
    cost->form = CostTerm::Form::HalfPow;
    cost->coeff = 8;
    cost->exp = t.d3 - (t.d1 + t.d2);
    cost->mult = 0;
    cost->min_d = 0;
  }
  ProductWord out = w;
  std::swap(out[size_t(pos)], out[size_t(pos) + 2]);
  return out;
}

ProductWord apply_updown(const ProductWord& w, int pos, int64_t d4, CostTerm* cost) {
  Triple t = read_triple(w, pos);
  if (d4 < 0) throw MoveError("up/down move: d4 must be nonnegative");
  int64_t lo = std::min(t.d3, d4);
  int64_t hi = std::max(t.d3, d4);
  // quarter conditions, kept in integers: 4*lhs >= lo
  auto fail = [&](const std::string& lhs_name, int64_t lhs) {
    std::ostringstream os;
    os << "up/down precondition failed at pos " << pos << ": " << lhs_name << " = " << lhs
       << " < min(d3,d4)/4 = " << lo << "/4 (" << triple_desc(t) << ", d4=" << d4 << ")";
    throw MoveError(os.str());
  };
  if (4 * t.d1 < lo) fail("d1", t.d1);
  if (4 * t.d2 < lo) fail("d2", t.d2);
  if (4 * (t.d1 + t.d2 - hi) < lo) fail("d1+d2-max(d3,d4)", t.d1 + t.d2 - hi);
  if (cost) {
    cost->form = CostTerm::Form::SqrtDecay;
    cost->coeff = 0;
    cost->exp = 0;
    cost->mult = d4 > t.d3 ? d4 - t.d3 : t.d3 - d4;
    cost->min_d = lo;
  }
  ProductWord out = w;
  out[size_t(pos) + 1].exp = d4;
  return out;
}

namespace {

struct Builder {
  ProductWord word;
  std::vector<Move> moves;

  void updown(int pos, int64_t d4) {
    Move m;
    m.kind = Move::Kind::UpDown;
    m.pos = pos;
    m.d4 = d4;
    word = apply_updown(word, pos, d4, &m.cost);
    moves.push_back(m);
  }
  void sw(int pos) {
    Move m;
    m.kind = Move::Kind::Switch;
    m.pos = pos;
    word = apply_switch(word, pos, &m.cost);
    moves.push_back(m);
  }
};

}  // namespace

MoveScript script_td_to_sd_forward(int64_t d, int direction) {
  if (d < 11) throw MoveError("script_td_to_sd: d must be >= 11");
  if (direction != 1 && direction != -1) throw MoveError("script_td_to_sd: direction is +-1");
  int64_t e = d + direction;
  Builder b;
  b.word = word_td(d);
  // step 1: the 10d middles of H_{1,3} and H_{3,1}
  b.updown(0, 10 * e);
  b.updown(3, 10 * e);
  // step 2: the 9d middles of H_{2,3} and H_{2,1} down to the target 4e
  b.updown(1, 4 * e);
  b.updown(2, 4 * e);
  // step 3: double switch around the 10e middles
  b.sw(0);
  b.sw(3);
  // step 4: the former 4d outer letters of H_{1,2} and H_{3,2} up to 9e
  b.updown(1, 9 * e);
  b.updown(2, 9 * e);
  MoveScript s;
  s.d = d;
  s.direction = direction;
  s.derivation = "forward";
  s.initial = word_td(d);
  s.moves = std::move(b.moves);
  s.final_word = b.word;
  if (!(s.final_word == word_sd(e)))
    throw MoveError("script_td_to_sd_forward: did not land on S_{d+direction}");
  return s;
}

MoveScript script_td_to_sd_mirrored(int64_t d) {
  if (d < 11) throw MoveError("script_td_to_sd: d must be >= 11");
  int64_t e = d + 1;
  Builder b;
  b.word = word_td(d);
  // reversal of the -1-style derivation taken from S_{d+1} to T_d: each
  // up/down precondition is symmetric in d3 <-> d4 and switches are
  // self-inverse, so validity transfers move by move.
  b.updown(2, 4 * e);   // H_{2,1}
  b.updown(1, 4 * e);   // H_{2,3}
  b.sw(3);              // H_{3,1}
  b.sw(0);              // H_{1,3}
  b.updown(2, 9 * e);   // H_{3,2}
  b.updown(1, 9 * e);   // H_{1,2}
  b.updown(3, 10 * e);  // H_{3,1}
  b.updown(0, 10 * e);  // H_{1,3}
  MoveScript s;
  s.d = d;
  s.direction = 1;
  s.derivation = "mirrored";
  s.initial = word_td(d);
  s.moves = std::move(b.moves);
  s.final_word = b.word;
  if (!(s.final_word == word_sd(e)))
    throw MoveError("script_td_to_sd_mirrored: did not land on S_{d+1}");
  return s;
}

MoveScript script_td_to_sd(int64_t d, int direction) {
  if (direction != 1 && direction != -1)
    throw MoveError("script_td_to_sd: direction must be +1 or -1");
  if (direction == -1) return script_td_to_sd_forward(d, -1);
  try {
    return script_td_to_sd_forward(d, 1);
  } catch (const MoveError&) {
    return script_td_to_sd_mirrored(d);
  }
}

ReplayReport replay_verify(const MoveScript& s) {
  auto failed = [](const std::string& why) { return ReplayReport{false, why}; };
  if (s.direction != 1 && s.direction != -1) return failed("direction is not +-1");
  if (!(s.initial == word_td(s.d))) return failed("initial word is not T_d");
  ProductWord cur = s.initial;
  for (size_t i = 0; i < s.moves.size(); ++i) {
    const Move& m = s.moves[i];
    CostTerm cost;
    try {
      cur = m.kind == Move::Kind::Switch ? apply_switch(cur, m.pos, &cost)
                                         : apply_updown(cur, m.pos, m.d4, &cost);
    } catch (const MoveError& e) {
      return failed("move " + std::to_string(i) + ": " + e.what());
    }
    if (!(cost == m.cost)) return failed("move " + std::to_string(i) + ": recorded cost differs");
  }
  if (!(cur == s.final_word)) return failed("replay does not reach the recorded final word");
  if (!(cur == word_sd(s.d + s.direction)))
    return failed("final word is not S_{d+direction}");
  return ReplayReport{};
}

double eval_total_cost(const MoveScript& s, double C, double r) {
  if (!(C > 0)) throw MoveError("eval_total_cost: C must be > 0");
  if (!(r >= 0 && r < 1)) throw MoveError("eval_total_cost: r must be in [0,1)");
  double total = 0;
  for (const Move& m : s.moves) total += m.cost.eval(C, r);
  return total;
}

double cost_bound(int64_t d, double C, double r) {
  return (42.0 * C + 16.0) * double(d) * std::pow(r, std::sqrt(double(d)));
}

// JSON certificates ---------------------------------------------------------

namespace {

using nlohmann::json;

json word_to_json(const ProductWord& w) {
  json a = json::array();
  for (const Token& t : w) a.push_back({t.i, t.k, t.exp});
  return a;
}

ProductWord word_from_json(const json& a) {
  ProductWord w;
  for (const auto& t : a) {
    if (!t.is_array() || t.size() != 3) throw MoveError("script load: bad token");
    w.push_back(Token{t[0].get<int>(), t[1].get<int>(), t[2].get<int64_t>()});
  }
  return w;
}

json cost_to_json(const CostTerm& c) {
  if (c.form == CostTerm::Form::HalfPow)
    return {{"form", "half-pow"}, {"coeff", c.coeff}, {"exp", c.exp}};
  return {{"form", "sqrt-decay"}, {"mult", c.mult}, {"min_d", c.min_d}};
}

CostTerm cost_from_json(const json& j) {
  CostTerm c;
  std::string form = j.at("form").get<std::string>();
  if (form == "half-pow") {
    c.form = CostTerm::Form::HalfPow;
    c.coeff = j.at("coeff").get<int64_t>();
    c.exp = j.at("exp").get<int64_t>();
  } else if (form == "sqrt-decay") {
    c.form = CostTerm::Form::SqrtDecay;
    c.mult = j.at("mult").get<int64_t>();
    c.min_d = j.at("min_d").get<int64_t>();
  } else {
    throw MoveError("script load: unknown cost form " + form);
  }
  return c;
}

}  // namespace

void save_script(std::ostream& os, const MoveScript& s) {
  json j;
  j["format"] = "tlab-move-script";
  j["version"] = 1;
  j["d"] = s.d;
  j["direction"] = s.direction;
  j["derivation"] = s.derivation;
  j["initial"] = word_to_json(s.initial);
  j["final"] = word_to_json(s.final_word);
  json moves = json::array();
  for (const Move& m : s.moves) {
    json jm;
    jm["kind"] = m.kind == Move::Kind::Switch ? "switch" : "updown";
    jm["pos"] = m.pos;
    if (m.kind == Move::Kind::UpDown) jm["d4"] = m.d4;
    jm["cost"] = cost_to_json(m.cost);
    moves.push_back(jm);
  }
  j["moves"] = moves;
  os << j.dump(2) << "\n";
}

MoveScript load_script(std::istream& is) {
  json j = json::parse(is);
  if (j.value("format", "") != "tlab-move-script" || j.value("version", 0) != 1)
    throw MoveError("script load: bad header");
  MoveScript s;
  s.d = j.at("d").get<int64_t>();
  s.direction = j.at("direction").get<int>();
  s.derivation = j.value("derivation", "");
  s.initial = word_from_json(j.at("initial"));
  s.final_word = word_from_json(j.at("final"));
  for (const auto& jm : j.at("moves")) {
    Move m;
    std::string kind = jm.at("kind").get<std::string>();
    if (kind == "switch")
      m.kind = Move::Kind::Switch;
    else if (kind == "updown")
      m.kind = Move::Kind::UpDown;
    else
      throw MoveError("script load: unknown move kind " + kind);
    m.pos = jm.at("pos").get<int>();
    m.d4 = jm.value("d4", int64_t(0));
    m.cost = cost_from_json(jm.at("cost"));
    s.moves.push_back(m);
  }
  return s;
}

}  // namespace tlab
