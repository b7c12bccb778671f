#pragma once

// Indexed multiplication structure for finite matrix groups mod m.
// Elements are sorted row-major so every index is reproducible across runs.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tlab/sl3.hpp"

namespace tlab {

class GroupTable {
 public:
  // Sorts, dedups, locates the identity, precomputes inverses. Throws
  // ValidationError if the identity or some inverse is missing; closure is
  // the caller's responsibility (enumerators guarantee it, tests spot-check).
  static GroupTable from_elements(uint32_t modulus, std::vector<ModMat3> elems);

  uint32_t modulus() const { return m_; }
  uint32_t size() const { return uint32_t(elems_.size()); }
  uint32_t identity() const { return id_; }
  const ModMat3& element(uint32_t idx) const { return elems_[idx]; }

  uint32_t product(uint32_t i, uint32_t j) const;
  uint32_t inverse(uint32_t i) const { return inv_[i]; }
  std::optional<uint32_t> find(const ModMat3& x) const;
  uint32_t index_of(const ModMat3& x) const;  // throws ValidationError if absent

  // gather map for the left regular action: perm[h] = index(g^{-1} h)
  std::vector<uint32_t> translation_perm(uint32_t g) const;

  void save(std::ostream& os) const;
  static GroupTable load(std::istream& is);

  static constexpr uint32_t kMemoCap = 4096;  // full n^2 product table below this

 private:
  GroupTable() = default;
  uint64_t pack(const ModMat3& x) const;

  uint32_t m_ = 0;
  int bits_ = 0;
  uint32_t id_ = 0;
  std::vector<ModMat3> elems_;
  std::vector<uint32_t> inv_;
  std::unordered_map<uint64_t, uint32_t> index_;
  std::vector<uint32_t> memo_;  // n*n product table when n <= kMemoCap
};

// |SL3(Z/m)| by the multiplicative formula over prime powers.
Int sl3_order_formula(uint32_t m);

// Direct determinant filter for m <= 5, generator BFS closure beyond.
// Throws CapacityError when the group order exceeds order_cap.
GroupTable enumerate_sl3(uint32_t m, uint64_t order_cap = (uint64_t(1) << 22));

// Same group, forced through the other construction (for cross-checks).
GroupTable enumerate_sl3_filter(uint32_t m, uint64_t order_cap = (uint64_t(1) << 22));
GroupTable enumerate_sl3_bfs(uint32_t m, uint64_t order_cap = (uint64_t(1) << 22));

// Upper unitriangular matrices mod m: the Heisenberg quotient, m^3 elements.
GroupTable enumerate_heisenberg(uint32_t m, uint64_t order_cap = (uint64_t(1) << 22));

// Cyclic subgroup {e_{1,3}(c)} as its own table (order m).
GroupTable enumerate_cyclic_z(uint32_t m);

// BFS closure of the given generators inside the table; sorted indices.
std::vector<uint32_t> subgroup_image(const GroupTable& t, const std::vector<ModMat3>& gens);

// the twelve e_{i,j}(+-1) images
std::vector<ModMat3> elementary_generators(uint32_t m);

}  // namespace tlab
