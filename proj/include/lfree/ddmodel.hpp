#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lfree/group.hpp"

namespace lfree {

/// nu_I on the discrete core.  Larger values mean smaller ideals.
struct IdealFunction {
  Element inner;

  bool is_unit() const { return inner.is_zero(); }
  bool operator==(const IdealFunction& o) const { return inner == o.inner; }
};

IdealFunction ideal_product(const IdealFunction& i, const IdealFunction& j);
/// I + J, which is I ^ J in Inv(D).
IdealFunction ideal_sum(const IdealFunction& i, const IdealFunction& j);
IdealFunction ideal_inverse(const IdealFunction& i);
/// I contained in J, i.e. nu_I >= nu_J.
bool ideal_contains(const IdealFunction& j, const IdealFunction& i);

/// The element operations the facade is checked against.  Tests swap one out
/// to make sure a wrong operation is caught.
struct DdOps {
  std::function<Element(const Element&, const Element&)> product;
  std::function<Element(const Element&, const Element&)> sum;
  std::function<Element(const Element&)> inverse;

  static DdOps standard();
};

struct LawReport {
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<std::string> violations;

  bool passed() const { return violations.empty(); }
};

/// Random member: up to `terms` generators with coefficients in [-bound, bound],
/// plus a few e_x on probe points when the group has finite support.
Element random_member(const GroupPresentation& g, std::mt19937_64& rng, int bound = 3, std::size_t terms = 3);

/// Homomorphism, lattice and injectivity laws on `cases` random ideal pairs.
LawReport phi_homomorphism_check(const GroupPresentation& g, std::size_t cases, std::uint64_t seed,
                                 const DdOps& ops = DdOps::standard());

/// Least n with I^n inside J; none when the radicals (supports) differ.
std::optional<mpz_class> radical_power_witness(const IdealFunction& i, const IdealFunction& j);

struct SpecMapReport {
  std::vector<Ordinal> probes;
  std::vector<Ordinal> d_side;        // probes x with f outside P_x
  std::vector<Ordinal> v_complement;  // probes x with f(x) != 0
  bool consistent = false;
};

SpecMapReport spec_map_check(const GroupPresentation& g, const Element& f);

}  // namespace lfree
