#include "lfree/certificate.hpp"

#include "lfree/error.hpp"
#include "lfree/frame.hpp"

namespace lfree {

namespace {

mpz_class factorial(std::uint64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

std::vector<Element> concat(const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Coordinates of every element of `targets` over `basis`, or none if one is
// outside its span.
std::optional<IntMatrix> coordinates_over(const AmbientPtr& amb, const std::vector<Element>& basis,
                                          const std::vector<Element>& targets) {
  CoordinateFrame frame(amb, concat(basis, targets));
  const HermiteForm h = hermite(frame.coordinates(basis), frame.size());
  IntMatrix out;
  for (const auto& t : targets) {
    auto sol = solve_left(h, frame.coordinates(t));
    if (!sol) return std::nullopt;
    out.push_back(sol->coefficients);
  }
  return out;
}

std::size_t rank_of(const AmbientPtr& amb, const std::vector<Element>& family) {
  CoordinateFrame frame(amb, family);
  return integer_rank(frame.coordinates(family), frame.size());
}

ChainCheckReport fail(std::optional<std::size_t> step, std::string reason) {
  ChainCheckReport r;
  r.ok = false;
  r.failed_step = step;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

std::string to_string(ChainSegment::Kind k) {
  switch (k) {
    case ChainSegment::Kind::Successor: return "successor";
    case ChainSegment::Kind::Limit: return "limit";
    case ChainSegment::Kind::Residual: return "residual";
  }
  return "?";
}

ChainSegment::Kind parse_segment_kind(const std::string& s) {
  if (s == "successor") return ChainSegment::Kind::Successor;
  if (s == "limit") return ChainSegment::Kind::Limit;
  if (s == "residual") return ChainSegment::Kind::Residual;
  throw Error(ErrorKind::Schema, "unknown segment kind '" + s + "'");
}

std::optional<mpz_class> required_torsion_bound(const ChainSegment& segment, const Ordinal& rank) {
  switch (segment.kind) {
    case ChainSegment::Kind::Residual: return mpz_class(1);
    case ChainSegment::Kind::Successor: {
      auto r = rank.as_natural();
      if (!r) return std::nullopt;
      return factorial(*r);
    }
    case ChainSegment::Kind::Limit:
      for (std::size_t n = 0; n < segment.alphas.size(); ++n) {
        if (rank <= segment.alphas[n]) return factorial(n);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

ChainCheckReport smooth_chain_check(const FreenessCertificate& cert) {
  if (!cert.ambient) return fail(std::nullopt, "certificate has no ambient space");
  const auto& amb = cert.ambient;
  if (cert.steps.empty()) return fail(std::nullopt, "certificate has no steps");
  std::optional<std::size_t> current;
  ChainCheckReport report;
  try {
    std::vector<Element> previous;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      current = i;
      const ChainStep& s = cert.steps[i];
      if (s.segment >= cert.segments.size()) return fail(i, "unknown segment index");
      const std::vector<Element> a = concat(previous, s.quotient_basis);

      const std::size_t ra = rank_of(amb, a);
      if (ra != a.size()) {
        return fail(i, "quotient basis is dependent modulo the previous step: Hermite rank " + std::to_string(ra) +
                           " < " + std::to_string(a.size()));
      }

      const auto bound = required_torsion_bound(cert.segments[s.segment], s.rank);
      if (!bound) return fail(i, "no torsion bound rule covers rank " + to_string(s.rank));
      if (s.torsion_bound != *bound) {
        return fail(i, "torsion bound " + s.torsion_bound.get_str() + " differs from the required " + bound->get_str());
      }

      if (s.torsion_witnesses.size() != s.extra_generators.size()) {
        return fail(i, "expected one torsion witness per extra generator");
      }
      for (std::size_t j = 0; j < s.extra_generators.size(); ++j) {
        const IntVector& w = s.torsion_witnesses[j];
        if (w.size() != a.size()) return fail(i, "torsion witness " + std::to_string(j) + " has the wrong length");
        if (!(linear_combination(amb, w, a) == s.extra_generators[j].scaled(s.torsion_bound))) {
          return fail(i, "torsion witness " + std::to_string(j) + " does not reproduce bound * extra generator");
        }
      }

      const std::size_t rb = rank_of(amb, s.basis);
      if (rb != s.basis.size()) return fail(i, "step basis is dependent: Hermite rank " + std::to_string(rb));
      const std::vector<Element> gens = concat(a, s.extra_generators);
      if (!coordinates_over(amb, s.basis, gens)) return fail(i, "step basis does not span A + extra generators");
      if (!coordinates_over(amb, gens, s.basis)) return fail(i, "step basis leaves A + extra generators");

      if (!previous.empty()) {
        auto inner = coordinates_over(amb, s.basis, previous);
        if (!inner) return fail(i, "step basis does not contain the previous step");
        if (!report.torsion_quotient_step && !saturated(*inner, s.basis.size())) {
          report.torsion_quotient_step = i;
          report.torsion_detail = "the quotient by step " + std::to_string(i - 1) + " has torsion";
        }
      }
      previous = s.basis;
    }
    current.reset();

    if (cert.final_basis != previous) return fail(std::nullopt, "final basis differs from the last step basis");
    for (const auto& d : cert.decompositions) {
      if (d.coefficients.size() != cert.final_basis.size() ||
          !(linear_combination(amb, d.coefficients, cert.final_basis) == d.element)) {
        return fail(std::nullopt, "decomposition of " + d.name + " does not hold");
      }
    }
  } catch (const Error& e) {
    return fail(current, std::string("evaluation error: ") + e.what());
  }
  return report;
}

}  // namespace lfree
