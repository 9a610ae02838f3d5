#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfree/certificate.hpp"
#include "lfree/group.hpp"

namespace lfree {

/// Positive sequence a_n with d_n * a_n - a_0 vanishing on the ladder from
/// mu(a_n) on.  residue_targets[n] is the residue of a_n on its weight.
struct StaircaseBase {
  std::vector<Element> elements;
  std::vector<mpz_class> divisors;
  std::vector<mpq_class> residue_targets;
};

struct AxiomCheck {
  std::string axiom;
  bool passed = true;
  std::optional<std::size_t> index;  // first violating n
  std::string detail;
};

struct StaircaseReport {
  std::vector<AxiomCheck> axioms;
  bool passed() const;
};

/// Axioms, in order: positive-member, residue-generation, mu-increasing,
/// divisor-vanishing (d_n | n! and (d_n a_n - a_0)(k) = 0 for k >= mu(a_n)).
StaircaseReport verify_staircase(const StaircaseBase& candidate, const GroupPresentation& g);

/// Divisors d_n = residue(a_0) / residue(a_n); none when one is not a positive integer.
std::optional<StaircaseBase> staircase_from_sequence(const GroupPresentation& g, std::vector<Element> seq);

/// The first `count` terms of the recursive construction started at a0.
StaircaseBase construct_staircase(const GroupPresentation& g, const Element& a0, std::size_t count);

/// Basis of <a_basis, b_gens> when n * b lies in <a_basis> for every b.
std::vector<Element> free_from_bounded_torsion(const std::vector<Element>& a_basis,
                                               const std::vector<Element>& b_gens, const mpz_class& n);

/// Chain B_0 <= ... <= B_R for a group whose infinite prime has rank 1.
FreenessCertificate build_chain_successor(const GroupPresentation& g, std::uint64_t rank_bound);

/// Rank-indexed chain for an infinite prime of limit rank; alphas increase to
/// that rank.  Generators with residue on a weight, in presentation order, are
/// the sequence f~_n; only n <= rank_bound are used.
FreenessCertificate build_chain_limit(const GroupPresentation& g, const std::vector<Ordinal>& alphas,
                                      std::uint64_t rank_bound);

/// Direct sum of the residual finite-support part and one chain per block.
FreenessCertificate multi_prime_compose(const GroupPresentation& g, const std::vector<ClopenBlock>& blocks,
                                        std::uint64_t rank_bound);

/// Blocks (p_{i-1}, p_i] between consecutive infinite primes.
std::vector<ClopenBlock> default_blocks(const ScatteredSpace& space);
/// alphas[n] = fundamental(rank, n + 1).
std::vector<Ordinal> default_alphas(const Ordinal& limit_rank, std::size_t count);

/// Chooses the construction from the shape of the space.
FreenessCertificate extract_basis(const GroupPresentation& g, std::uint64_t rank_bound,
                                  const std::vector<Ordinal>& alphas = {},
                                  const std::vector<ClopenBlock>& blocks = {});

}  // namespace lfree
