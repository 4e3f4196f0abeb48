#pragma once

// Glue between library objects and the oracle representation (prime q only).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qlattice/qlattice.hpp"

namespace support {

inline oracle::VecSet vecset_of(const oracle::PrimeSpace& V, const qlattice::Subspace& s) {
  std::vector<int> gens;
  for (const auto& r : s.rows) {
    std::vector<int> d(r.begin(), r.end());
    gens.push_back(V.code(d));
  }
  return V.span(gens);
}

/// Oracle view of the whole lattice, in library index order.
struct Mirror {
  oracle::PrimeSpace V;
  std::vector<oracle::VecSet> elems;
  oracle::Order order;

  explicit Mirror(const qlattice::LinearLattice& L) : V(L.n(), L.q()) {
    for (std::size_t i = 0; i < L.size(); ++i) elems.push_back(vecset_of(V, L.element(i)));
    order = oracle::subspace_order(elems);
  }

  std::uint64_t mask_of(const qlattice::Family& F) const {
    std::uint64_t m = 0;
    for (auto i : F.indices()) m |= std::uint64_t{1} << i;
    return m;
  }
};

inline qlattice::Family family_of_mask(const qlattice::LatticePtr& L, std::uint64_t mask) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < L->size(); ++i)
    if ((mask >> i) & 1u) idx.push_back(i);
  return qlattice::Family(L, idx);
}

}  // namespace support
