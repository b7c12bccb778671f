#include "tlab/group_table.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>

namespace tlab {

namespace {

int bits_for(uint32_t m) {
  int b = std::bit_width(m - 1);
  if (b == 0) b = 1;
  return b;
}

}  // namespace

uint64_t GroupTable::pack(const ModMat3& x) const {
  uint64_t key = 0;
  for (int i = 0; i < 9; ++i) key = (key << bits_) | x.a[size_t(i)];
  return key;
}

GroupTable GroupTable::from_elements(uint32_t modulus, std::vector<ModMat3> elems) {
  if (modulus < 2) throw ValidationError("GroupTable: modulus must be >= 2");
  if (9 * bits_for(modulus) > 64)
    throw CapacityError("GroupTable: modulus too large to pack element keys");
  GroupTable t;
  t.m_ = modulus;
  t.bits_ = bits_for(modulus);
  std::sort(elems.begin(), elems.end(), modmat_less);
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  t.elems_ = std::move(elems);
  t.index_.reserve(t.elems_.size() * 2);
  for (uint32_t i = 0; i < t.size(); ++i) t.index_.emplace(t.pack(t.elems_[i]), i);
  auto id = t.find(identity_mod());
  if (!id) throw ValidationError("GroupTable: identity not among elements");
  t.id_ = *id;
  t.inv_.resize(t.size());
  for (uint32_t i = 0; i < t.size(); ++i) {
    auto j = t.find(inverse_mod(t.elems_[i], modulus));
    if (!j) throw ValidationError("GroupTable: inverse not among elements");
    t.inv_[i] = *j;
  }
  if (t.size() <= kMemoCap) {
    t.memo_.resize(size_t(t.size()) * t.size());
    for (uint32_t i = 0; i < t.size(); ++i) {
      for (uint32_t j = 0; j < t.size(); ++j) {
        ModMat3 p = mul_mod(t.elems_[i], t.elems_[j], modulus);
        auto k = t.find(p);
        if (!k) throw ValidationError("GroupTable: product left the element set");
        t.memo_[size_t(i) * t.size() + j] = *k;
      }
    }
  }
  return t;
}

uint32_t GroupTable::product(uint32_t i, uint32_t j) const {
  if (!memo_.empty()) return memo_[size_t(i) * size() + j];
  ModMat3 p = mul_mod(elems_[i], elems_[j], m_);
  auto it = index_.find(pack(p));
  if (it == index_.end()) throw ValidationError("GroupTable: product left the element set");
  return it->second;
}

std::optional<uint32_t> GroupTable::find(const ModMat3& x) const {
  auto it = index_.find(pack(x));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

uint32_t GroupTable::index_of(const ModMat3& x) const {
  auto i = find(x);
  if (!i) throw ValidationError("GroupTable: element not in table: " + to_string(x));
  return *i;
}

std::vector<uint32_t> GroupTable::translation_perm(uint32_t g) const {
  std::vector<uint32_t> perm(size());
  uint32_t gi = inverse(g);
  for (uint32_t h = 0; h < size(); ++h) perm[h] = product(gi, h);
  return perm;
}

void GroupTable::save(std::ostream& os) const {
  os << "tlab-group-table 1\n" << m_ << " " << size() << "\n";
  for (const auto& e : elems_) {
    for (int i = 0; i < 9; ++i) os << e.a[size_t(i)] << (i == 8 ? '\n' : ' ');
  }
}

GroupTable GroupTable::load(std::istream& is) {
  std::string tag;
  int version = 0;
  is >> tag >> version;
  if (!is || tag != "tlab-group-table" || version != 1)
    throw ValidationError("GroupTable::load: bad header");
  uint32_t m = 0, n = 0;
  is >> m >> n;
  if (!is || m < 2) throw ValidationError("GroupTable::load: bad modulus/count");
  std::vector<ModMat3> elems(n);
  for (uint32_t r = 0; r < n; ++r) {
    for (int i = 0; i < 9; ++i) {
      is >> elems[r].a[size_t(i)];
      if (!is) throw ValidationError("GroupTable::load: truncated element list");
      if (elems[r].a[size_t(i)] >= m) throw ValidationError("GroupTable::load: entry >= modulus");
    }
  }
  return from_elements(m, std::move(elems));
}

// enumerators -------------------------------------------------------------

Int sl3_order_formula(uint32_t m) {
  // multiplicative over prime powers; |SL3(Z/p^k)| = p^{8(k-1)} p^3 (p^2-1)(p^3-1)
  Int order = 1;
  uint32_t rest = m;
  for (uint32_t p = 2; uint64_t(p) * p <= rest; ++p) {
    if (rest % p) continue;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    Int pi = p;
    Int local = pow(pi, unsigned(8 * (k - 1))) * pow(pi, 3) * (pow(pi, 2) - 1) * (pow(pi, 3) - 1);
    order *= local;
  }
  if (rest > 1) {
    Int pi = rest;
    order *= pow(pi, 3) * (pow(pi, 2) - 1) * (pow(pi, 3) - 1);
  }
  return order;
}

std::vector<ModMat3> elementary_generators(uint32_t m) {
  std::vector<ModMat3> gens;
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      gens.push_back(elementary_mod(i, j, 1, m));
      gens.push_back(elementary_mod(i, j, -1, m));
    }
  }
  return gens;
}

namespace {

void check_order_cap(uint32_t m, uint64_t order_cap) {
  Int order = sl3_order_formula(m);
  if (order > order_cap)
    throw CapacityError("enumerate_sl3: |SL3(Z/" + std::to_string(m) +
                        ")| = " + order.str() + " exceeds the order cap");
}

}  // namespace

GroupTable enumerate_sl3_filter(uint32_t m, uint64_t order_cap) {
  check_order_cap(m, order_cap);
  uint64_t total = 1;
  for (int i = 0; i < 9; ++i) {
    total *= m;
    if (total > (uint64_t(1) << 34))
      throw CapacityError("enumerate_sl3_filter: m^9 search space too large");
  }
  std::vector<ModMat3> elems;
  ModMat3 x{{0, 0, 0, 0, 0, 0, 0, 0, 0}};
  for (uint64_t it = 0;; ++it) {
    if (det_mod(x, m) == 1) elems.push_back(x);
    int pos = 8;  // odometer over entries
    while (pos >= 0) {
      if (++x.a[size_t(pos)] < m) break;
      x.a[size_t(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  GroupTable t = GroupTable::from_elements(m, std::move(elems));
  if (Int(t.size()) != sl3_order_formula(m))
    throw ValidationError("enumerate_sl3_filter: element count disagrees with the order formula");
  return t;
}

namespace {

// closure of a generator set under multiplication, as raw matrices
std::vector<ModMat3> bfs_closure(uint32_t m, const std::vector<ModMat3>& gens,
                                 uint64_t order_cap) {
  int bits = std::bit_width(m - 1);
  if (bits == 0) bits = 1;
  if (9 * bits > 64) throw CapacityError("bfs_closure: modulus too large to pack");
  auto pack = [&](const ModMat3& x) {
    uint64_t key = 0;
    for (int i = 0; i < 9; ++i) key = (key << bits) | x.a[size_t(i)];
    return key;
  };
  std::unordered_map<uint64_t, uint32_t> seen;
  std::vector<ModMat3> elems;
  std::deque<ModMat3> queue;
  auto push = [&](const ModMat3& x) {
    auto [it, fresh] = seen.emplace(pack(x), uint32_t(elems.size()));
    (void)it;
    if (fresh) {
      if (elems.size() >= order_cap) throw CapacityError("bfs_closure: order cap exceeded");
      elems.push_back(x);
      queue.push_back(x);
    }
  };
  push(identity_mod());
  while (!queue.empty()) {
    ModMat3 cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) push(mul_mod(cur, g, m));
  }
  return elems;
}

}  // namespace

GroupTable enumerate_sl3_bfs(uint32_t m, uint64_t order_cap) {
  check_order_cap(m, order_cap);
  auto elems = bfs_closure(m, elementary_generators(m), order_cap);
  GroupTable t = GroupTable::from_elements(m, std::move(elems));
  if (Int(t.size()) != sl3_order_formula(m))
    throw ValidationError("enumerate_sl3_bfs: element count disagrees with the order formula");
  return t;
}

GroupTable enumerate_sl3(uint32_t m, uint64_t order_cap) {
  if (m <= 5) return enumerate_sl3_filter(m, order_cap);
  return enumerate_sl3_bfs(m, order_cap);
}

GroupTable enumerate_heisenberg(uint32_t m, uint64_t order_cap) {
  uint64_t n = uint64_t(m) * m * m;
  if (n > order_cap) throw CapacityError("enumerate_heisenberg: m^3 exceeds the order cap");
  std::vector<ModMat3> elems;
  elems.reserve(n);
  for (uint32_t a = 0; a < m; ++a)
    for (uint32_t b = 0; b < m; ++b)
      for (uint32_t c = 0; c < m; ++c)
        elems.push_back(ModMat3{{1, a, c, 0, 1, b, 0, 0, 1}});
  return GroupTable::from_elements(m, std::move(elems));
}

GroupTable enumerate_cyclic_z(uint32_t m) {
  std::vector<ModMat3> elems;
  elems.reserve(m);
  for (uint32_t c = 0; c < m; ++c) elems.push_back(ModMat3{{1, 0, c, 0, 1, 0, 0, 0, 1}});
  return GroupTable::from_elements(m, std::move(elems));
}

std::vector<uint32_t> subgroup_image(const GroupTable& t, const std::vector<ModMat3>& gens) {
  std::vector<uint32_t> gen_idx;
  gen_idx.reserve(gens.size());
  for (const auto& g : gens) gen_idx.push_back(t.index_of(g));
  std::vector<bool> seen(t.size(), false);
  std::deque<uint32_t> queue;
  seen[t.identity()] = true;
  queue.push_back(t.identity());
  std::vector<uint32_t> members{t.identity()};
  while (!queue.empty()) {
    uint32_t cur = queue.front();
    queue.pop_front();
    for (uint32_t g : gen_idx) {
      uint32_t nxt = t.product(cur, g);
      if (!seen[nxt]) {
        seen[nxt] = true;
        members.push_back(nxt);
        queue.push_back(nxt);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace tlab
