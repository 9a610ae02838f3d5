#include <doctest.h>

#include "lfree/error.hpp"
#include "lfree/freeness.hpp"
#include "support.hpp"

using namespace lfree;

namespace {

Ordinal O(const char* s) { return parse_ordinal(s); }

mpz_class fact(unsigned long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

const AxiomCheck& axiom(const StaircaseReport& r, const std::string& name) {
  for (const auto& a : r.axioms) {
    if (a.axiom == name) return a;
  }
  throw std::logic_error(name);
}

bool has_element(const std::vector<Element>& v, const Element& f) { return std::find(v.begin(), v.end(), f) != v.end(); }

// limitQ moved one rung up, with every e_x in the group.
GroupPresentation shifted_limitq() {
  const auto amb = make_ambient(ScatteredSpace(O("w"), {O("w")}),
                                {Ladder("main", O("w"), 1, 0, {Weight::parse("b", "factorial")})});
  GroupPresentation g{amb, {}, {}, true, {}};
  for (unsigned long n = 0; n < 6; ++n) g.generators.push_back(Element::tail(amb, "main", 0, mpq_class(1, fact(n)), n));
  return g;
}

}  // namespace

TEST_CASE("limitQ is a staircase base") {
  const auto g = limitq_presentation(9);
  auto s = staircase_from_sequence(g, g.generators);
  REQUIRE(s);
  for (unsigned long n = 0; n <= 8; ++n) CHECK(s->divisors[n] == fact(n));
  CHECK(verify_staircase(*s, g).passed());
}

TEST_CASE("staircase violations") {
  const auto g = limitq_presentation(9);
  auto s = *staircase_from_sequence(g, g.generators);
  auto swapped = s;
  std::swap(swapped.elements[0], swapped.elements[1]);
  const auto r = verify_staircase(swapped, g);
  CHECK_FALSE(axiom(r, "mu-increasing").passed);
  CHECK(axiom(r, "mu-increasing").index == std::optional<std::size_t>(1));
  auto bumped = s;
  for (std::size_t n = 0; n < bumped.divisors.size(); ++n) bumped.divisors[n] = fact(n) + 1;
  const auto r2 = verify_staircase(bumped, g);
  CHECK_FALSE(axiom(r2, "divisor-vanishing").passed);
  CHECK(axiom(r2, "divisor-vanishing").index == std::optional<std::size_t>(0));
  auto negative = s;
  negative.elements[3] = negative.elements[3] - Element::basis(g.ambient, Ordinal(20), 100000);
  CHECK_FALSE(axiom(verify_staircase(negative, g), "positive-member").passed);
}

TEST_CASE("constructed staircase on limitQ") {
  // a'_n = a_n - e_n needs a_{n+1}, so nine terms need eleven generators;
  // the nine residues then reach only 1/8!, short of the group's 1/10!
  const auto g = limitq_presentation();
  const auto s = construct_staircase(g, g.generators[0], 9);
  const auto r = verify_staircase(s, g);
  CHECK(axiom(r, "positive-member").passed);
  CHECK(axiom(r, "mu-increasing").passed);
  CHECK(axiom(r, "divisor-vanishing").passed);
  CHECK_FALSE(axiom(r, "residue-generation").passed);
  for (unsigned long n = 0; n <= 8; ++n) {
    CHECK(s.divisors[n] == fact(n));
    CHECK(s.residue_targets[n] == mpq_class(1, fact(n)));
    CHECK((s.elements[n] - limitq_a(g.ambient, n)).tail_free());
    for (unsigned long k = s.elements[n].mu(0); k < s.elements[n].mu(0) + 6; ++k) {
      CHECK((s.elements[n].scaled(fact(n)) - s.elements[0]).eval(Ordinal(k)) == 0);
    }
  }
}

TEST_CASE("constructed staircase with integer residues") {
  const auto amb = limitq_ambient();
  GroupPresentation g{amb, {Element::tail(amb, "main", 0, 1, 0), Element::tail(amb, "main", 0, 3, 0)}, {}, true, {}};
  const auto s = construct_staircase(g, g.generators[0], 5);
  for (const auto& d : s.divisors) CHECK(d == 1);
  CHECK(verify_staircase(s, g).passed());
  CHECK_THROWS_AS(construct_staircase(g, Element::basis(amb, Ordinal(0)), 3), Error);
}

TEST_CASE("constructed staircase when generators are not one") {
  const auto p = two_prime_presentation();
  GroupPresentation g = p.group;
  g.focus = O("w*2");
  const auto s = construct_staircase(g, g.generators[6], 7);
  CHECK(verify_staircase(s, g).passed());
}

TEST_CASE("free from bounded torsion") {
  const auto amb = make_ambient(ScatteredSpace(O("w"), {O("w")}), {});
  const Element ex = parse_element("e(1)", amb), ey = parse_element("e(2)", amb);
  CHECK(free_from_bounded_torsion({ex}, {}, 1) == std::vector<Element>{ex});
  const auto b = free_from_bounded_torsion({2 * ex, ey}, {ex}, 2);
  REQUIRE(b.size() == 2);
  CHECK(has_element(b, ex));
  CHECK(has_element(b, ey));
  CHECK(free_from_bounded_torsion({2 * ex, ey}, {2 * ex + ey}, 3).size() == 2);
  CHECK_THROWS_AS(free_from_bounded_torsion({2 * ex}, {ey}, 2), Error);
}

TEST_CASE("successor chain on limitQ") {
  const auto g = limitq_presentation();
  const auto cert = build_chain_successor(g, 4);
  REQUIRE(cert.steps.size() == 5);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK(cert.steps[r].rank == Ordinal(r));
    CHECK(cert.steps[r].torsion_bound == fact(r));
  }
  std::set<std::string> names;
  for (const auto& d : cert.decompositions) names.insert(d.name);
  for (int n = 0; n <= 4; ++n) {
    CHECK(names.count("a" + std::to_string(n)));
    CHECK(names.count("e(" + std::to_string(n) + ")"));
  }
  CHECK(smooth_chain_check(cert).ok);
  // 6 a_3 - a_0 lies in <e_0..e_3>
  const Element h = 6 * limitq_a(g.ambient, 3) - limitq_a(g.ambient, 0);
  CHECK(h.tail_free());
  for (const auto& [x, v] : h.prefix()) CHECK(x <= Ordinal(3));
}

TEST_CASE("successor chain with R = 0") {
  const auto g = limitq_presentation();
  const auto cert = build_chain_successor(g, 0);
  REQUIRE(cert.steps.size() == 1);
  CHECK(cert.final_basis == std::vector<Element>{Element::basis(g.ambient, Ordinal(0)), limitq_a(g.ambient, 0)});
  CHECK(smooth_chain_check(cert).ok);
}

TEST_CASE("the literal chain leaves torsion in its quotients") {
  const auto g = limitq_presentation();
  const auto r = smooth_chain_check(build_chain_successor(g, 4));
  CHECK(r.ok);
  CHECK(r.torsion_quotient_step == std::optional<std::size_t>(2));
  // 2 a_2 = a_0 - e_0 - e_1 is in B_1 while a_2 is not
  const auto& amb = g.ambient;
  CHECK(2 * limitq_a(amb, 2) == limitq_a(amb, 0) - Element::basis(amb, Ordinal(0)) - Element::basis(amb, Ordinal(1)));
}

TEST_CASE("limit chain pads low-rank gaps") {
  const auto p = limit_chain_presentation();
  const auto cert = extract_basis(p.group, 4, p.alphas, p.blocks);
  CHECK(smooth_chain_check(cert).ok);
  CHECK(cert.segments.front().kind == ChainSegment::Kind::Limit);
  std::vector<Element> extras;
  for (const auto& s : cert.steps) extras.insert(extras.end(), s.extra_generators.begin(), s.extra_generators.end());
  const auto& amb = p.group.ambient;
  CHECK(has_element(extras, parse_element("tail(ladder=spine, label=b0, r=1, start=1) + e(w^3)", amb)));
  CHECK(has_element(extras, p.group.generators[2]));  // already above alpha_2, left alone
  for (const auto& s : cert.steps) {
    CHECK(s.torsion_bound == *required_torsion_bound(cert.segments[s.segment], s.rank));
  }
  for (const auto& f : p.group.generators) {
    bool found = false;
    for (const auto& d : cert.decompositions) found = found || d.element == f;
    CHECK(found);
  }
}

TEST_CASE("chain preconditions") {
  const auto lc = limit_chain_presentation();
  CHECK_THROWS_AS(build_chain_successor(lc.group, 2), Error);
  CHECK_THROWS_AS(build_chain_limit(limitq_presentation(), default_alphas(Ordinal(1), 4), 2), Error);
  CHECK_THROWS_AS(build_chain_limit(lc.group, {Ordinal(2), Ordinal(1)}, 2), Error);
}

TEST_CASE("multi-prime composition") {
  const auto p = two_prime_presentation();
  const auto cert = multi_prime_compose(p.group, p.blocks, 4);
  CHECK(smooth_chain_check(cert).ok);
  CHECK(cert.segments.front().kind == ChainSegment::Kind::Residual);
  CHECK(cert.segments.size() == 3);
  CHECK_THROWS_AS(multi_prime_compose(p.group, {p.blocks[0]}, 2), Error);
  CHECK_THROWS_AS(multi_prime_compose(p.group, {p.blocks[0], ClopenBlock{Ordinal(3), O("w*2")}}, 2), Error);
  try {
    multi_prime_compose(p.group, {p.blocks[1]}, 2);
    FAIL("expected an uncovered prime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UncoveredInfinitePrime);
  }
}

TEST_CASE("one block over the only prime reduces to the successor chain") {
  const auto g = shifted_limitq();
  const auto direct = build_chain_successor(g, 3);
  const auto composed = multi_prime_compose(g, {ClopenBlock{Ordinal(0), O("w")}}, 3);
  REQUIRE(direct.steps.size() == composed.steps.size());
  for (std::size_t i = 0; i < direct.steps.size(); ++i) CHECK(direct.steps[i].basis == composed.steps[i].basis);
  CHECK(direct.final_basis == composed.final_basis);
}
