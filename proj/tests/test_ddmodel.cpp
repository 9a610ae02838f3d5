#include <doctest.h>

#include <random>

#include "lfree/ddmodel.hpp"
#include "lfree/error.hpp"
#include "support.hpp"

using namespace lfree;

namespace {
Ordinal O(const char* s) { return parse_ordinal(s); }
}  // namespace

TEST_CASE("ideal arithmetic") {
  const auto amb = make_ambient(ScatteredSpace(O("w"), {O("w")}), {});
  const IdealFunction i{parse_element("e(0)", amb)}, j{parse_element("2*e(1)", amb)};
  CHECK(ideal_product(i, j).inner == parse_element("e(0) + 2*e(1)", amb));
  CHECK(ideal_sum(i, j).is_unit());
  CHECK(ideal_product(i, ideal_inverse(i)).is_unit());
  CHECK(ideal_sum(i, i) == i);
  CHECK(ideal_contains(i, ideal_product(i, j)));
  CHECK_FALSE(ideal_contains(ideal_product(i, j), i));
  const auto other = limitq_ambient();
  CHECK_THROWS_AS(ideal_product(i, IdealFunction{limitq_a(other, 0)}), Error);
}

TEST_CASE("homomorphism laws hold on limitQ") {
  const auto r = phi_homomorphism_check(limitq_presentation(), 200, 1);
  CHECK(r.passed());
  CHECK(r.cases == 200);
}

TEST_CASE("a corrupted meet is caught") {
  DdOps ops = DdOps::standard();
  ops.sum = [](const Element& a, const Element& b) { return a.join(b); };
  const auto r = phi_homomorphism_check(limitq_presentation(), 50, 1, ops);
  CHECK_FALSE(r.passed());
  DdOps bad_product = DdOps::standard();
  bad_product.product = [](const Element& a, const Element& b) { return a - b; };
  CHECK_FALSE(phi_homomorphism_check(two_prime_presentation().group, 50, 2, bad_product).passed());
}

TEST_CASE("singleton core") {
  const auto amb = make_ambient(ScatteredSpace(Ordinal(0), {}), {});
  GroupPresentation g{amb, {parse_element("e(0)", amb)}, {}, false, {}};
  CHECK(phi_homomorphism_check(g, 20, 3).passed());
}

TEST_CASE("radical power witnesses") {
  const auto amb = make_ambient(ScatteredSpace(O("w"), {O("w")}), {});
  const IdealFunction i{parse_element("e(0) + e(1)", amb)}, j{parse_element("3*e(0) + 2*e(1)", amb)};
  CHECK(radical_power_witness(i, j) == mpz_class(3));
  CHECK(radical_power_witness(i, i) == mpz_class(1));
  CHECK_FALSE(radical_power_witness(i, IdealFunction{parse_element("e(0)", amb)}));
}

TEST_CASE("radical power witnesses are minimal on random pairs") {
  const auto g = limitq_presentation();
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> small(1, 4);
  int checked = 0;
  while (checked < 100) {
    const Element base = random_member(g, rng).positive_part();
    if (base.is_zero()) continue;
    const Element j = base.scaled(small(rng)) + random_member(g, rng).positive_part().meet(base.scaled(small(rng)));
    CHECK(same_support(base, j));
    const auto n = radical_power_witness({base}, {j});
    REQUIRE(n);
    CHECK(j.leq(base.scaled(*n)));
    if (*n > 1) CHECK_FALSE(j.leq(base.scaled(*n - 1)));
    ++checked;
  }
}

TEST_CASE("order reversal on probes") {
  const auto g = two_prime_presentation().group;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Element f = random_member(g, rng), h = random_member(g, rng);
    const Element m = f.meet(h);  // m <= f always, so ideal(m) contains ideal(f)
    bool probes = true;
    for (const auto& x : probe_points({f, m})) probes = probes && m.eval(x) <= f.eval(x);
    CHECK(probes);
    CHECK(ideal_contains(IdealFunction{m}, IdealFunction{f}));
    CHECK(ideal_contains(IdealFunction{h}, IdealFunction{f}) == h.leq(f));
  }
}

TEST_CASE("spectral map") {
  const auto g = limitq_presentation();
  const auto& amb = g.ambient;
  const auto e = spec_map_check(g, Element::basis(amb, Ordinal(2)));
  CHECK(e.consistent);
  CHECK(e.d_side == std::vector<Ordinal>{Ordinal(2)});
  const auto a = spec_map_check(g, limitq_a(amb, 0));
  CHECK(a.consistent);
  CHECK(a.d_side == a.probes);
  const auto z = spec_map_check(g, Element::zero(amb));
  CHECK(z.consistent);
  CHECK(z.d_side.empty());
}
