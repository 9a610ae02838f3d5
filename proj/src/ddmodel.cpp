#include "lfree/ddmodel.hpp"

#include "lfree/error.hpp"

namespace lfree {

namespace {

void check_same(const IdealFunction& i, const IdealFunction& j) {
  if (!same_ambient(i.inner.ambient(), j.inner.ambient())) {
    throw Error(ErrorKind::SpaceMismatch, "ideal functions over different presentations");
  }
}

std::string show(const Element& f) { return to_string(f); }

}  // namespace

IdealFunction ideal_product(const IdealFunction& i, const IdealFunction& j) {
  check_same(i, j);
  return {i.inner + j.inner};
}

IdealFunction ideal_sum(const IdealFunction& i, const IdealFunction& j) {
  check_same(i, j);
  return {i.inner.meet(j.inner)};
}

IdealFunction ideal_inverse(const IdealFunction& i) { return {-i.inner}; }

bool ideal_contains(const IdealFunction& j, const IdealFunction& i) {
  check_same(i, j);
  return j.inner.leq(i.inner);
}

DdOps DdOps::standard() {
  return DdOps{[](const Element& a, const Element& b) { return a + b; },
               [](const Element& a, const Element& b) { return a.meet(b); },
               [](const Element& a) { return -a; }};
}

Element random_member(const GroupPresentation& g, std::mt19937_64& rng, int bound, std::size_t terms) {
  Element out = Element::zero(g.ambient);
  std::uniform_int_distribution<int> coef(-bound, bound);
  if (!g.generators.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, g.generators.size() - 1);
    for (std::size_t t = 0; t < terms; ++t) out = out + coef(rng) * g.generators[pick(rng)];
  }
  if (g.contains_finite_support) {
    const auto probes = probe_points(g.generators);
    if (!probes.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, probes.size() - 1);
      for (std::size_t t = 0; t < 2; ++t) out = out + Element::basis(g.ambient, probes[pick(rng)], coef(rng));
    }
  }
  return out;
}

LawReport phi_homomorphism_check(const GroupPresentation& g, std::size_t cases, std::uint64_t seed,
                                 const DdOps& ops) {
  LawReport report;
  report.seed = seed;
  report.cases = cases;
  std::mt19937_64 rng(seed);
  auto violation = [&](std::size_t c, const std::string& law, const Element& f, const Element& h) {
    report.violations.push_back("case " + std::to_string(c) + ": " + law + " fails for I = " + show(f) +
                                ", J = " + show(h));
  };
  for (std::size_t c = 0; c < cases; ++c) {
    const Element f = random_member(g, rng);
    const Element h = random_member(g, rng);
    const Element k = random_member(g, rng);
    const Element prod = ops.product(f, h);
    const Element sum = ops.sum(f, h);
    const Element inv = ops.inverse(f);

    bool pointwise = true;
    for (const auto& x : probe_points({f, h, prod, sum})) {
      const mpz_class a = f.eval(x), b = h.eval(x);
      if (prod.eval(x) != a + b) {
        violation(c, "product at " + to_string(x), f, h);
        pointwise = false;
      }
      if (sum.eval(x) != (a < b ? a : b)) {
        violation(c, "sum at " + to_string(x), f, h);
        pointwise = false;
      }
      if (inv.eval(x) != -a) {
        violation(c, "inverse at " + to_string(x), f, h);
        pointwise = false;
      }
    }
    if (!pointwise) continue;
    if (!(prod == f + h)) violation(c, "product is not add", f, h);
    if (!(sum == f.meet(h))) violation(c, "sum is not meet", f, h);
    if (!ops.product(f, inv).is_zero()) violation(c, "I * I^-1 is not the unit ideal", f, h);
    if (!(ops.sum(f, f) == f)) violation(c, "sum idempotence", f, h);
    if (!(ops.sum(f, h) == ops.sum(h, f))) violation(c, "sum commutativity", f, h);
    if (!(ops.sum(f, ops.sum(h, k)) == ops.sum(ops.sum(f, h), k))) violation(c, "sum associativity", f, h);
    if (!(ops.product(f, ops.sum(h, k)) == ops.sum(ops.product(f, h), ops.product(f, k)))) {
      violation(c, "product distributes over sum", f, h);
    }
    const bool contained = h.leq(f);
    if (contained != (ops.sum(f, h) == h)) violation(c, "containment disagrees with sum", f, h);
    if (f.is_zero() != IdealFunction{f}.is_unit()) violation(c, "zero function is not the unit ideal", f, h);
  }
  return report;
}

std::optional<mpz_class> radical_power_witness(const IdealFunction& i, const IdealFunction& j) {
  check_same(i, j);
  if (!i.inner.is_positive() || !j.inner.is_positive()) {
    throw Error(ErrorKind::Precondition, "radical power witness needs integral ideals");
  }
  return bounded_ratio_witness(i.inner, j.inner);
}

SpecMapReport spec_map_check(const GroupPresentation& g, const Element& f) {
  if (!same_ambient(f.ambient(), g.ambient)) throw Error(ErrorKind::SpaceMismatch, "element and group");
  SpecMapReport out;
  std::vector<Element> family = g.generators;
  family.push_back(f);
  for (const auto& x : probe_points(family)) {
    if (!g.ambient->space.is_finite_prime(x)) continue;
    out.probes.push_back(x);
    if (!finite_prime_test(g, x)(f)) out.d_side.push_back(x);
    if (f.eval(x) != 0) out.v_complement.push_back(x);
  }
  out.consistent = out.d_side == out.v_complement;
  return out;
}

}  // namespace lfree
