#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfree/element.hpp"
#include "lfree/hermite.hpp"

namespace lfree {

/// A run of chain steps produced by one construction.
///   successor  step rank r, torsion bound r!
///   limit      step rank beta, torsion bound n! for the least n with beta <= alphas[n]
///   residual   finite-support part, torsion bound 1
struct ChainSegment {
  enum class Kind { Successor, Limit, Residual };
  Kind kind = Kind::Successor;
  std::string label;
  std::vector<Ordinal> alphas;
};

std::string to_string(ChainSegment::Kind k);
ChainSegment::Kind parse_segment_kind(const std::string& s);

/// One link B_prev <= A <= B of the chain, where A is spanned by the previous
/// basis followed by quotient_basis and B by A plus extra_generators.
/// torsion_witnesses[j] holds the coordinates of torsion_bound * extra[j]
/// over that A basis; basis is a basis of B.
struct ChainStep {
  std::size_t segment = 0;
  Ordinal rank;
  std::vector<Element> quotient_basis;
  std::vector<Element> extra_generators;
  mpz_class torsion_bound = 1;
  IntMatrix torsion_witnesses;
  std::vector<Element> basis;
};

struct CertifiedDecomposition {
  std::string name;
  Element element;
  IntVector coefficients;  // over final_basis
};

struct FreenessCertificate {
  AmbientPtr ambient;
  std::vector<ChainSegment> segments;
  std::vector<ChainStep> steps;
  std::vector<Element> final_basis;
  std::vector<CertifiedDecomposition> decompositions;
  std::vector<std::string> beyond_truncation;  // generators outside the truncated chain
  std::vector<std::string> probe_window;
  std::uint64_t seed = 0;
};

/// Torsion bound a step of the segment must carry, or none when the rank is
/// not covered (limit segment with too few alphas, successor rank not finite).
std::optional<mpz_class> required_torsion_bound(const ChainSegment& segment, const Ordinal& rank);

struct ChainCheckReport {
  bool ok = true;
  std::optional<std::size_t> failed_step;  // none for whole-certificate failures
  std::string reason;
  /// First step whose group leaves torsion over the previous one.  Reported
  /// only; it does not clear `ok`.
  std::optional<std::size_t> torsion_quotient_step;
  std::string torsion_detail;
};

/// Re-verifies every step from scratch: independence of the A basis, the
/// torsion bound rule, every witness equation, that the step basis spans
/// A + extras and contains the previous basis, the final basis, and every
/// recorded decomposition.
ChainCheckReport smooth_chain_check(const FreenessCertificate& cert);

}  // namespace lfree
