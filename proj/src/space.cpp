#include "lfree/space.hpp"

#include "lfree/error.hpp"

namespace lfree {

namespace {
constexpr std::size_t kSliceCap = 1'000'000;
}

std::string to_string(const ClopenBlock& b) {
  return "(" + to_string(b.low) + ", " + to_string(b.high) + "]";
}

ScatteredSpace::ScatteredSpace(Ordinal top, std::set<Ordinal> infinite_primes)
    : top_(std::move(top)), infinite_primes_(std::move(infinite_primes)) {
  for (const auto& p : infinite_primes_) {
    if (p > top_) throw Error(ErrorKind::NotAPoint, to_string(p) + " exceeds top " + to_string(top_));
    // Isolated points are open, and the finite primes are dense, so an
    // infinite prime can never be isolated.
    if (!is_limit(p)) {
      throw Error(ErrorKind::Precondition,
                  "infinite prime " + to_string(p) + " must be a limit ordinal");
    }
  }
}

void ScatteredSpace::check_point(const Ordinal& x) const {
  if (!contains(x)) throw Error(ErrorKind::NotAPoint, to_string(x) + " > top " + to_string(top_));
}

bool ScatteredSpace::in_derived_set(const Ordinal& point, const Ordinal& gamma) const {
  check_point(point);
  if (gamma.is_zero()) return true;
  return !point.is_zero() && last_exponent(point) >= gamma;
}

Ordinal ScatteredSpace::cb_rank(const Ordinal& point) const {
  check_point(point);
  return point.is_zero() ? Ordinal() : last_exponent(point);
}

Ordinal ScatteredSpace::cb_rank_space() const { return add(cb_rank(top_), Ordinal(1)); }

ClopenBlock ScatteredSpace::whole() const {
  // [0, top] is not of the form (low, high]; callers treat 0 separately.
  return ClopenBlock{Ordinal(), top_};
}

void ScatteredSpace::check_block(const ClopenBlock& b) const {
  if (!(b.low < b.high) || b.high > top_) {
    throw Error(ErrorKind::Precondition, "invalid block " + to_string(b) + " in [0, " + to_string(top_) + "]");
  }
}

std::vector<Ordinal> ScatteredSpace::rank_slice(const Ordinal& gamma, const ClopenBlock& within) const {
  if (gamma.is_zero()) throw Error(ErrorKind::Precondition, "rank slice needs gamma >= 1");
  check_block(within);
  const Ordinal step = Ordinal::power(gamma);
  // Points of rank exactly gamma are t + w^gamma*m with t the w^gamma-multiple
  // part of low; they accumulate at t + w^(gamma+1).
  const Ordinal base = truncate_below(within.low, gamma);
  const Ordinal accumulation = add(base, Ordinal::power(add(gamma, Ordinal(1))));
  if (within.high >= accumulation) {
    throw Error(ErrorKind::InfiniteSlice, "infinitely many rank-" + to_string(gamma) + " points in " +
                                              to_string(within));
  }
  std::vector<Ordinal> out;
  for (Ordinal x = add(base, step); x <= within.high; x = add(x, step)) {
    out.push_back(x);
    if (out.size() > kSliceCap) throw Error(ErrorKind::OrdinalBound, "rank slice too large");
  }
  return out;
}

ClopenBlock ScatteredSpace::isolating_block(const Ordinal& point) const {
  check_point(point);
  if (point.is_zero()) throw Error(ErrorKind::Precondition, "isolating block needs point > 0");
  return ClopenBlock{drop_last_unit(point), point};
}

}  // namespace lfree
