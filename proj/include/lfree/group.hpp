#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfree/element.hpp"
#include "lfree/frame.hpp"

namespace lfree {

/// Finitely generated subgroup of integer-valued functions on the finite
/// primes of an ambient space.  With `contains_finite_support` the group also
/// contains every e_x, which the generator list need not spell out.
struct GroupPresentation {
  AmbientPtr ambient;
  std::vector<Element> generators;
  std::vector<std::string> names;  // parallel to generators; may be empty
  bool contains_finite_support = false;
  /// Infinite prime the presentation is about when the ambient has several.
  std::optional<Ordinal> focus;

  std::string name_of(std::size_t i) const;
  /// The focus, else the unique infinite prime; throws ErrorKind::Precondition otherwise.
  const Ordinal& infinite_prime() const;
};

struct DecompositionResult {
  std::map<std::size_t, mpz_class> coefficients;  // generator index -> coefficient
  std::map<Ordinal, mpz_class> finite_part;       // e_x coefficients (finite-support groups)
  Element residual;                               // always zero on success
  bool unique = false;
  std::vector<std::string> window;
};

/// Integer coordinates of f over the generators, or none when f is not a member.
std::optional<DecompositionResult> member_decompose(const Element& f, const GroupPresentation& g);
bool is_member(const Element& f, const GroupPresentation& g);

/// f |-> f(x) == 0, the prime P_x.
std::function<bool(const Element&)> finite_prime_test(const GroupPresentation& g, const Ordinal& x);

/// Index of the evaluation image at x in Z.  Throws ErrorKind::AllZero when every generator vanishes at x.
mpz_class residue_index_at(const GroupPresentation& g, const Ordinal& x);

struct SemibasicSearch {
  int coefficient_bound = 4;
  std::size_t max_terms = 3;
};

/// A semibasic element of g at x (e_x when it is a member).
Element semibasic_construct(const GroupPresentation& g, const Ordinal& x, SemibasicSearch bound = {});

/// Coefficients c with f = sum c_x q_x by descending Cantor-Bendixson rank.
/// f and every q used must be tail-free; cb(f) <= beta.
std::map<Ordinal, mpz_class> spanqx_decompose(const Element& f, const std::map<Ordinal, Element>& q,
                                              const Ordinal& beta);

struct KernelBasisCertificate {
  std::vector<Ordinal> points;        // rank-descending, then increasing
  std::vector<Element> elements;      // q_x per point
  IntMatrix evaluation;               // evaluation[i][j] = q_{points[j]}(points[i])
  bool unitriangular = false;
};
KernelBasisCertificate kernel_basis_certificate(const GroupPresentation& g, const std::vector<Ordinal>& window);

/// Residue groups: the gcd (in Q) of the generators' residues on one weight.
mpq_class rational_gcd(const mpq_class& a, const mpq_class& b);
mpq_class rational_lcm(const mpq_class& a, const mpq_class& b);

/// The single weight carrying f's residue on ladder l, or none when f has no
/// tail there.  Throws ErrorKind::ResidueNotRank1 when several weights do.
std::optional<std::size_t> residue_weight(const Element& f, std::size_t l);

}  // namespace lfree
