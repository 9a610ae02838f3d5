#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lfree {

struct OrdinalTerm;

/// Countable ordinal below epsilon_0 in Cantor normal form
///   w^e1*c1 + w^e2*c2 + ... + w^ek*ck,   e1 > e2 > ... > ek, ci >= 1.
///
/// The representation is canonical, so structural equality is ordinal
/// equality.  Exponents nest at most `kMaxDepth` levels and coefficients stay
/// below `kMaxCoefficient`; both limits throw ErrorKind::OrdinalBound.
class Ordinal {
 public:
  static constexpr int kMaxDepth = 8;
  static constexpr std::uint64_t kMaxCoefficient = std::uint64_t{1} << 31;

  Ordinal() = default;  // zero
  Ordinal(std::uint64_t n);  // NOLINT: naturals convert implicitly

  /// w^exponent * coefficient
  static Ordinal power(const Ordinal& exponent, std::uint64_t coefficient = 1);
  static Ordinal omega() { return power(Ordinal(1)); }
  /// Builds from terms, validating the CNF invariants.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::optional<std::uint64_t> as_natural() const;
  int depth() const;

  std::strong_ordering operator<=>(const Ordinal& other) const;
  bool operator==(const Ordinal& other) const;

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  bool operator==(const OrdinalTerm&) const = default;
};

enum class OrdinalKind { Zero, Successor, Limit };

struct Classification {
  OrdinalKind kind;
  Ordinal predecessor;  // meaningful for Successor only
};

Ordinal add(const Ordinal& a, const Ordinal& b);
inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }

Classification classify(const Ordinal& a);
bool is_limit(const Ordinal& a);
bool is_successor(const Ordinal& a);

/// Exponent of the final CNF term.  Throws ErrorKind::ZeroOrdinal on 0.
Ordinal last_exponent(const Ordinal& a);

/// a with its final term's coefficient lowered by one (drops the term at 1).
/// For a > 0 this is the largest ordinal below a whose last exponent is at
/// least last_exponent(a), or 0 when none exists.
Ordinal drop_last_unit(const Ordinal& a);

/// The terms of a whose exponent is >= e (largest multiple of w^e <= a).
Ordinal truncate_below(const Ordinal& a, const Ordinal& e);

/// k-th member of the standard fundamental sequence of a limit ordinal:
/// tau + w^(d+1) -> tau + w^d*k, and tau + w^d (d limit) -> tau + w^(d[k]).
Ordinal fundamental(const Ordinal& limit, std::uint64_t k);

Ordinal parse_ordinal(std::string_view text);
std::string to_string(const Ordinal& a);

}  // namespace lfree
