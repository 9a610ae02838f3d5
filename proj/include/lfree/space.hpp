#pragma once

#include <set>
#include <string>
#include <vector>

#include "lfree/ordinal.hpp"

namespace lfree {

/// Half-open ordinal interval (low, high]; always clopen in [0, top].
struct ClopenBlock {
  Ordinal low;
  Ordinal high;

  bool contains(const Ordinal& x) const { return low < x && x <= high; }
  bool overlaps(const ClopenBlock& other) const {
    return low < other.high && other.low < high;
  }
  bool operator==(const ClopenBlock&) const = default;
};

std::string to_string(const ClopenBlock& b);

/// The compact scattered space [0, top] with the order topology.  Points not
/// listed as infinite primes are the finite primes; infinite primes must be
/// limit ordinals because finite primes are dense.
///
/// Ordinal intervals are first countable, so the Frechet-Urysohn hypothesis
/// holds structurally, and scattered, so the perfect hull is always empty.
class ScatteredSpace {
 public:
  ScatteredSpace(Ordinal top, std::set<Ordinal> infinite_primes);

  const Ordinal& top() const { return top_; }
  const std::set<Ordinal>& infinite_primes() const { return infinite_primes_; }

  bool contains(const Ordinal& x) const { return x <= top_; }
  bool is_infinite_prime(const Ordinal& x) const { return infinite_primes_.count(x) > 0; }
  bool is_finite_prime(const Ordinal& x) const { return contains(x) && !is_infinite_prime(x); }

  /// point in D^gamma([0, top]).
  bool in_derived_set(const Ordinal& point, const Ordinal& gamma) const;
  Ordinal cb_rank(const Ordinal& point) const;
  /// Smallest alpha with D^alpha = D^(alpha+1) = empty: cb_rank(top) + 1.
  Ordinal cb_rank_space() const;

  /// Points of rank exactly gamma (>= 1) inside the block.  Throws
  /// ErrorKind::InfiniteSlice when there are infinitely many.
  std::vector<Ordinal> rank_slice(const Ordinal& gamma, const ClopenBlock& within) const;

  /// Block (low, point] in which point is the only point of rank >= cb_rank(point).
  ClopenBlock isolating_block(const Ordinal& point) const;

  ClopenBlock whole() const;
  void check_block(const ClopenBlock& b) const;

  bool operator==(const ScatteredSpace&) const = default;

 private:
  void check_point(const Ordinal& x) const;

  Ordinal top_;
  std::set<Ordinal> infinite_primes_;
};

}  // namespace lfree
