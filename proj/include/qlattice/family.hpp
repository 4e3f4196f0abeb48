#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "qlattice/error.hpp"
#include "qlattice/lattice.hpp"

namespace qlattice {

using LatticePtr = std::shared_ptr<const LinearLattice>;

inline LatticePtr make_lattice(int n, int q) { return std::make_shared<const LinearLattice>(build_lattice(n, q)); }

/// A family of subspaces: a membership bitset over the elements of one
/// lattice. Values are immutable; the set operations return new families.
class Family {
 public:
  Family() = default;
  explicit Family(LatticePtr lattice) : lattice_(std::move(lattice)), members_(lattice_->size()) {}
  Family(LatticePtr lattice, const std::vector<std::size_t>& indices) : Family(std::move(lattice)) {
    for (auto i : indices) {
      if (i >= members_.size()) throw Error(Errc::OutOfRange, "element index outside the lattice");
      members_.set(i);
    }
  }
  Family(LatticePtr lattice, Bitset members) : lattice_(std::move(lattice)), members_(std::move(members)) {
    if (members_.size() != lattice_->size()) throw Error(Errc::WrongLattice, "bitset size differs from lattice size");
  }

  const LinearLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  const Bitset& members() const { return members_; }

  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(std::size_t i) const { return i < members_.size() && members_.test(i); }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i)) out.push_back(i);
    return out;
  }

  /// F_s for s = 0..n.
  std::vector<std::size_t> level_counts() const {
    std::vector<std::size_t> c(lattice_->n() + 1, 0);
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i)) ++c[lattice_->dim(i)];
    return c;
  }

  std::vector<std::size_t> level_members(int s) const {
    std::vector<std::size_t> out;
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i))
      if (lattice_->dim(i) == s) out.push_back(i);
    return out;
  }

  /// Largest dimension present, or -1 when empty.
  int top_dim() const {
    int t = -1;
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i)) t = std::max(t, lattice_->dim(i));
    return t;
  }
  int bottom_dim() const {
    int b = lattice_->n() + 1;
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i)) b = std::min(b, lattice_->dim(i));
    return empty() ? -1 : b;
  }

  Family with(std::size_t i) const {
    Family f = *this;
    f.members_.set(i);
    return f;
  }
  Family without(std::size_t i) const {
    Family f = *this;
    f.members_.reset(i);
    return f;
  }
  Family unite(const Family& o) const {
    check_same(o);
    return Family(lattice_, members_ | o.members_);
  }
  Family intersect(const Family& o) const {
    check_same(o);
    return Family(lattice_, members_ & o.members_);
  }
  Family minus(const Family& o) const {
    check_same(o);
    return Family(lattice_, members_ - o.members_);
  }

  /// Image under the orthogonal-complement anti-automorphism.
  Family dual() const {
    Family f(lattice_);
    for (auto i = members_.find_first(); i != Bitset::npos; i = members_.find_next(i))
      f.members_.set(lattice_->complement_index(i));
    return f;
  }

  bool operator==(const Family& o) const { return lattice_ == o.lattice_ && members_ == o.members_; }

  /// Canonical order: size first, then the sorted member index lists.
  friend bool operator<(const Family& a, const Family& b) {
    const auto ia = a.indices();
    const auto ib = b.indices();
    if (ia.size() != ib.size()) return ia.size() < ib.size();
    return ia < ib;
  }

 private:
  void check_same(const Family& o) const {
    if (lattice_ != o.lattice_) throw Error(Errc::WrongLattice, "families belong to different lattices");
  }

  LatticePtr lattice_;
  Bitset members_;
};

}  // namespace qlattice
