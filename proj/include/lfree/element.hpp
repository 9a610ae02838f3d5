#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lfree/ladder.hpp"

namespace lfree {

/// Tail on one ladder: value at rung k >= start is sum_i coefficients[i] * w_i(k).
struct Tail {
  std::vector<mpq_class> coefficients;  // one per ladder weight
  std::uint64_t start = 0;

  bool operator==(const Tail&) const = default;
};

struct Support {
  std::set<Ordinal> points;         // finitely many explicit points
  std::set<std::string> ladders;    // ladders carrying a nonzero tail
  bool empty() const { return points.empty() && ladders.empty(); }
};

/// Integer-valued function on the finite primes of an ambient space, stored
/// canonically: a finite map of explicit values plus, per ladder, an eventually
/// valid weighted tail.  Canonical form has the least start for every tail (so
/// no explicit value sits at or past it) and no zero entries, which makes
/// equality structural.
class Element {
 public:
  explicit Element(AmbientPtr ambient);

  static Element zero(AmbientPtr ambient) { return Element(std::move(ambient)); }
  /// Basis element e_x.
  static Element basis(AmbientPtr ambient, const Ordinal& x, const mpz_class& value = 1);
  /// r * w_label(k) for k >= start on the ladder, 0 below.
  static Element tail(AmbientPtr ambient, const std::string& ladder, std::size_t weight,
                      const mpq_class& r, std::uint64_t start);
  /// Explicit values plus tails keyed by ladder index; canonicalized.
  static Element from_parts(AmbientPtr ambient, std::map<Ordinal, mpz_class> prefix,
                            std::map<std::size_t, Tail> tails);

  const AmbientPtr& ambient() const { return ambient_; }
  const std::map<Ordinal, mpz_class>& prefix() const { return prefix_; }
  const std::map<std::size_t, Tail>& tails() const { return tails_; }
  bool is_zero() const { return prefix_.empty() && tails_.empty(); }
  bool tail_free() const { return tails_.empty(); }

  mpz_class eval(const Ordinal& x) const;
  /// Value at rung k of ladder l.
  mpz_class eval_rung(std::size_t ladder, std::uint64_t k) const;

  Element operator-() const;
  Element operator+(const Element& g) const;
  Element operator-(const Element& g) const;
  Element scaled(const mpz_class& n) const;
  /// g with n*g == *this; throws when *this is not divisible by n.
  Element divided(const mpz_class& n) const;

  Element meet(const Element& g) const;
  Element join(const Element& g) const;
  Element positive_part() const;  // f v 0
  Element negative_part() const;  // f ^ 0  (so f = f+ + f-)

  bool is_positive() const;  // f >= 0 everywhere
  bool leq(const Element& g) const { return (g - *this).is_positive(); }

  Support support() const;
  /// Least rung with nonzero value; throws ErrorKind::ZeroOnLadder.
  std::uint64_t mu(const std::string& ladder) const;
  std::uint64_t mu(std::size_t ladder) const;
  /// Tail coefficient vector on the ladder converging to the infinite prime.
  std::vector<mpq_class> residue_at(const Ordinal& infinite_prime) const;
  std::vector<mpq_class> residue_on(std::size_t ladder) const;
  Ordinal cb() const;

  /// Earliest point (ordinal order) with a negative value, if any.
  std::optional<Ordinal> first_negative_point() const;

  bool operator==(const Element& g) const;

 private:
  enum class Op { Add, Min, Max };
  Element combine(const Element& g, Op op) const;
  void canonicalize();
  mpq_class tail_value(std::size_t ladder, const Tail& t, std::uint64_t k) const;
  bool tail_integral_at(std::size_t ladder, const Tail& t, std::uint64_t k) const;
  void check_same(const Element& g) const;

  AmbientPtr ambient_;
  std::map<Ordinal, mpz_class> prefix_;
  std::map<std::size_t, Tail> tails_;
};

inline Element operator*(const mpz_class& n, const Element& f) { return f.scaled(n); }
inline Element operator*(long n, const Element& f) { return f.scaled(mpz_class(n)); }

/// Sum of coefficient * element; coefficients and elements must have equal length.
Element linear_combination(const AmbientPtr& ambient, const std::vector<mpz_class>& coefficients,
                           const std::vector<Element>& elements);

/// Least k >= from such that for all k' >= k the sign of sum c_i w_i(k') equals
/// the sign of the dominant nonzero coefficient.  All-zero vectors return from.
std::uint64_t sign_threshold(const Ladder& ladder, const std::vector<mpq_class>& c, std::uint64_t from);
/// Sign (-1, 0, 1) of the dominant nonzero coefficient.
int eventual_sign(const std::vector<mpq_class>& c);
/// Index of the dominant nonzero coefficient.
std::optional<std::size_t> dominant_index(const std::vector<mpq_class>& c);

/// q(x) = 1, q >= 0 and supp(q) meets D^cb(x) only in x.
bool is_semibasic(const Element& q, const Ordinal& x);

/// Least positive n with n*f >= g; none when the supports differ or the ratio
/// is unbounded.  Both arguments must be positive.
std::optional<mpz_class> bounded_ratio_witness(const Element& f, const Element& g);

bool same_support(const Element& f, const Element& g);

/// Every prefix point, the first 3 rungs from each tail start and one rung past
/// each ladder's crossover, sorted.
std::vector<Ordinal> probe_points(const std::vector<Element>& family);

/// f times the indicator of the union of the blocks (inside) or of its
/// complement (outside).
Element restrict_to_blocks(const Element& f, const std::vector<ClopenBlock>& blocks, bool inside);

/// Literal syntax:  e(3) - 2*e(w+1) + tail(ladder=main, r=1/2, start=2)
/// Tails on ladders with several weights name one with label=...
Element parse_element(std::string_view text, const AmbientPtr& ambient);
std::string to_string(const Element& f);

}  // namespace lfree
