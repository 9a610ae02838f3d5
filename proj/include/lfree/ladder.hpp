#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lfree/ordinal.hpp"
#include "lfree/space.hpp"

namespace lfree {

/// Growth profile of one residue-basis label on a ladder.  Values are
/// positive for every k >= 0:
///   one              1
///   pow:b            b^k            (b >= 2)
///   factorial        k!
///   factorial_poly:j (k+1)^j * k!   (j >= 1)
/// Families are totally ordered by eventual domination in the order listed
/// (pow by base, factorial_poly by degree).
class Weight {
 public:
  enum class Kind { One, Pow, Factorial, FactorialPoly };

  Weight(std::string label, Kind kind, unsigned parameter = 0);
  static Weight parse(std::string label, const std::string& tag);

  const std::string& label() const { return label_; }
  Kind kind() const { return kind_; }
  unsigned parameter() const { return parameter_; }
  std::string tag() const;

  mpz_class operator()(std::uint64_t k) const;
  /// Least k such that a coefficient with this denominator is integral at every k' >= k.
  std::optional<std::uint64_t> integral_from(const mpz_class& denominator) const;
  bool integral_at(const mpz_class& denominator, std::uint64_t k) const;

  /// Strict eventual-domination order.
  bool dominated_by(const Weight& other) const;
  /// Index from which (*this)(k) / higher(k) is nonincreasing; requires dominated_by(higher).
  std::uint64_t crossover(const Weight& higher) const;

  bool operator==(const Weight&) const = default;

 private:
  std::string label_;
  Kind kind_;
  unsigned parameter_;
};

/// Cofinal sequence of finite primes converging to an infinite prime:
///   point(k) = fundamental(target, k + offset) + shift.
/// Weights are listed in strictly increasing domination order.
class Ladder {
 public:
  Ladder(std::string id, Ordinal target, std::uint64_t offset, std::uint64_t shift,
         std::vector<Weight> weights);

  const std::string& id() const { return id_; }
  const Ordinal& target() const { return target_; }
  std::uint64_t offset() const { return offset_; }
  std::uint64_t shift() const { return shift_; }
  const std::vector<Weight>& weights() const { return weights_; }
  std::optional<std::size_t> weight_index(const std::string& label) const;

  Ordinal point(std::uint64_t k) const;
  std::optional<std::uint64_t> index_of(const Ordinal& x) const;

  /// Max pairwise crossover of the weight family.
  std::uint64_t crossover() const { return crossover_; }

  /// Whether infinitely many ladder points have Cantor-Bendixson rank >= gamma.
  bool cofinally_of_rank_at_least(const Ordinal& gamma) const;

  bool operator==(const Ladder&) const = default;

 private:
  std::string id_;
  Ordinal target_;
  std::uint64_t offset_;
  std::uint64_t shift_;
  std::vector<Weight> weights_;
  std::uint64_t crossover_ = 0;
};

/// Space plus the ladders every element over it may carry tails on.
struct Ambient {
  ScatteredSpace space;
  std::vector<Ladder> ladders;

  std::optional<std::size_t> ladder_index(const std::string& id) const;
  std::optional<std::size_t> ladder_for_target(const Ordinal& prime) const;
  /// (ladder index, rung) of a ladder point.
  std::optional<std::pair<std::size_t, std::uint64_t>> locate(const Ordinal& x) const;

  bool operator==(const Ambient&) const = default;
};

using AmbientPtr = std::shared_ptr<const Ambient>;

/// Validates ladder targets (distinct infinite primes), that rungs are finite
/// primes of the space, and that distinct ladders share no rung.
AmbientPtr make_ambient(ScatteredSpace space, std::vector<Ladder> ladders);

bool same_ambient(const AmbientPtr& a, const AmbientPtr& b);

}  // namespace lfree
