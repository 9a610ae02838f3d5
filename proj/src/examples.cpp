#include "lfree/examples.hpp"

namespace lfree {

namespace {

mpq_class inverse_factorial(std::uint64_t n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return mpq_class(1, f);
}

mpq_class inverse_power(unsigned base, std::uint64_t n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, n);
  return mpq_class(1, p);
}

}  // namespace

AmbientPtr limitq_ambient() {
  ScatteredSpace space(parse_ordinal("w"), {parse_ordinal("w")});
  return make_ambient(std::move(space),
                      {Ladder("main", parse_ordinal("w"), 0, 0, {Weight::parse("b", "factorial")})});
}

Element limitq_a(const AmbientPtr& amb, std::uint64_t n) {
  return Element::tail(amb, "main", 0, inverse_factorial(n), n);
}

GroupPresentation limitq_presentation(std::size_t count) {
  GroupPresentation g;
  g.ambient = limitq_ambient();
  for (std::size_t n = 0; n < count; ++n) {
    g.generators.push_back(limitq_a(g.ambient, n));
    g.names.push_back("a" + std::to_string(n));
  }
  return g;
}

PresentationFile limit_chain_presentation() {
  const Ordinal top = parse_ordinal("w^w");
  ScatteredSpace space(top, {top});
  auto amb = make_ambient(
      std::move(space),
      {Ladder("spine", top, 1, 0, {Weight::parse("b0", "factorial"), Weight::parse("b1", "factorial_poly:1")})});
  PresentationFile p;
  auto& g = p.group;
  g.ambient = amb;
  g.contains_finite_support = true;
  for (std::uint64_t n = 0; n < 5; ++n) {
    Element f = Element::tail(amb, "spine", 0, inverse_factorial(n), n);
    if (n == 2) f = f + Element::basis(amb, parse_ordinal("w^4*2"));
    g.generators.push_back(f);
    g.names.push_back("f" + std::to_string(n));
  }
  for (std::uint64_t n = 0; n < 4; ++n) {
    g.generators.push_back(Element::tail(amb, "spine", 1, inverse_factorial(n), n));
    g.names.push_back("h" + std::to_string(n));
  }
  g.generators.push_back(parse_element("3*e(w*3+2) - e(w^2+w)", amb));
  g.names.push_back("k0");
  return p;
}

PresentationFile two_prime_presentation() {
  const Ordinal w = parse_ordinal("w"), w2 = parse_ordinal("w*2");
  ScatteredSpace space(w2, {w, w2});
  auto amb = make_ambient(std::move(space), {Ladder("left", w, 1, 0, {Weight::parse("b", "factorial")}),
                                             Ladder("right", w2, 1, 0, {Weight::parse("c", "pow:2")})});
  PresentationFile p;
  auto& g = p.group;
  g.ambient = amb;
  g.contains_finite_support = true;
  for (std::uint64_t n = 0; n < 6; ++n) {
    g.generators.push_back(Element::tail(amb, "left", 0, inverse_factorial(n), n));
    g.names.push_back("a" + std::to_string(n));
  }
  for (std::uint64_t n = 0; n < 5; ++n) {
    g.generators.push_back(Element::tail(amb, "right", 0, inverse_power(2, n), n));
    g.names.push_back("c" + std::to_string(n));
  }
  g.generators.push_back(parse_element("e(0) + 2*e(3) - e(w+5)", amb));
  g.names.push_back("k0");
  p.blocks = {ClopenBlock{Ordinal(), w}, ClopenBlock{w, w2}};
  return p;
}

}  // namespace lfree
