#include "lfree/freeness.hpp"

#include <algorithm>
#include <set>

#include "lfree/error.hpp"
#include "lfree/frame.hpp"

namespace lfree {

namespace {

constexpr std::size_t kPaddingCandidates = 64;

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

std::size_t ladder_of(const GroupPresentation& g) {
  const Ordinal& p = g.infinite_prime();
  auto l = g.ambient->ladder_for_target(p);
  if (!l) throw Error(ErrorKind::NoLadder, "no ladder converges to " + to_string(p));
  return *l;
}

// Generators grouped by the weight carrying their residue; zero-residue ones apart.
struct WeightSplit {
  std::map<std::size_t, std::vector<std::size_t>> by_weight;
  std::vector<std::size_t> kernel;
};

WeightSplit split_by_weight(const GroupPresentation& g, std::size_t l) {
  WeightSplit out;
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    const auto& f = g.generators[i];
    for (const auto& [m, t] : f.tails()) {
      if (m != l) throw Error(ErrorKind::Precondition, g.name_of(i) + " carries a tail off the chain's ladder");
    }
    if (auto w = residue_weight(f, l)) {
      out.by_weight[*w].push_back(i);
    } else {
      out.kernel.push_back(i);
    }
  }
  return out;
}

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

std::vector<Element> basis_from_witnesses(const std::vector<Element>& a, const IntMatrix& witnesses,
                                          const mpz_class& n) {
  const AmbientPtr& amb = a.front().ambient();
  const std::size_t m = a.size();
  IntMatrix rows(m, IntVector(m, mpz_class(0)));
  for (std::size_t i = 0; i < m; ++i) rows[i][i] = n;
  rows.insert(rows.end(), witnesses.begin(), witnesses.end());
  const HermiteForm h = hermite(rows, m);
  std::vector<Element> out;
  for (std::size_t i = 0; i < h.rank; ++i) out.push_back(linear_combination(amb, h.form[i], a).divided(n));
  return out;
}

struct StepPlan {
  std::size_t segment = 0;
  Ordinal rank;
  std::vector<Element> quotient;
  std::vector<Element> extras;
  mpz_class bound = 1;
};

std::vector<ChainStep> assemble(const AmbientPtr& amb, std::vector<Element> previous,
                                const std::vector<StepPlan>& plans) {
  std::vector<ChainStep> out;
  for (const auto& p : plans) {
    const std::vector<Element> a = concat(previous, p.quotient);
    std::vector<Element> scaled;
    for (const auto& x : p.extras) scaled.push_back(x.scaled(p.bound));
    CoordinateFrame frame(amb, concat(a, scaled));
    const HermiteForm h = hermite(frame.coordinates(a), frame.size());
    if (h.rank != a.size()) {
      throw Error(ErrorKind::Precondition, "chain generators at rank " + to_string(p.rank) + " are dependent");
    }
    ChainStep step;
    step.segment = p.segment;
    step.rank = p.rank;
    step.quotient_basis = p.quotient;
    step.extra_generators = p.extras;
    step.torsion_bound = p.bound;
    for (std::size_t j = 0; j < scaled.size(); ++j) {
      auto sol = solve_left(h, frame.coordinates(scaled[j]));
      if (!sol) {
        throw Error(ErrorKind::WitnessNotFound, p.bound.get_str() + " * " + to_string(p.extras[j]) +
                                                    " is not in A at rank " + to_string(p.rank));
      }
      step.torsion_witnesses.push_back(sol->coefficients);
    }
    step.basis = p.extras.empty() ? a : basis_from_witnesses(a, step.torsion_witnesses, p.bound);
    previous = step.basis;
    out.push_back(std::move(step));
  }
  return out;
}

void finish(FreenessCertificate& cert, const std::vector<std::pair<std::string, Element>>& wanted) {
  cert.final_basis = cert.steps.empty() ? std::vector<Element>{} : cert.steps.back().basis;
  std::vector<Element> family = cert.final_basis;
  for (const auto& [name, f] : wanted) {
    if (cert.final_basis.empty()) {
      if (f.is_zero()) cert.decompositions.push_back({name, f, {}});
      else cert.beyond_truncation.push_back(name);
      continue;
    }
    auto c = coordinates_over(cert.ambient, cert.final_basis, {f});
    if (c) {
      cert.decompositions.push_back({name, f, c->front()});
      family.push_back(f);
    } else {
      cert.beyond_truncation.push_back(name);
    }
  }
  cert.probe_window = CoordinateFrame(cert.ambient, family).slot_names();
}

// Least finite prime of rank gamma whose padding lifts the rank above alpha.
std::optional<Ordinal> padding_point(const ScatteredSpace& space, const Ordinal& gamma, std::uint64_t c) {
  const Ordinal x = Ordinal::power(gamma, c);
  if (!space.is_finite_prime(x) || space.cb_rank(x) != gamma) return std::nullopt;
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

bool StaircaseReport::passed() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomCheck& a) { return a.passed; });
}

StaircaseReport verify_staircase(const StaircaseBase& c, const GroupPresentation& g) {
  AxiomCheck pos, gen, mono, div;
  pos.axiom = "positive-member";
  gen.axiom = "residue-generation";
  mono.axiom = "mu-increasing";
  div.axiom = "divisor-vanishing";
  auto flag = [](AxiomCheck& a, std::size_t n, const std::string& detail) {
    if (!a.passed) return;
    a.passed = false;
    a.index = n;
    a.detail = detail;
  };
  const std::size_t l = ladder_of(g);
  const auto& lad = g.ambient->ladders[l];
  const auto& a = c.elements;
  if (a.empty()) {
    flag(gen, 0, "empty sequence");
    return StaircaseReport{{pos, gen, mono, div}};
  }

  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!a[n].is_positive()) flag(pos, n, "a_" + std::to_string(n) + " takes a negative value");
    else if (!is_member(a[n], g)) flag(pos, n, "a_" + std::to_string(n) + " is not in the group");
  }

  std::optional<std::size_t> weight;
  try {
    weight = residue_weight(a[0], l);
  } catch (const Error& e) {
    flag(gen, 0, e.what());
  }
  if (gen.passed && !weight) flag(gen, 0, "a_0 has zero residue");
  if (gen.passed) {
    mpq_class span = 0, kappa = 0;
    for (std::size_t n = 0; n < a.size(); ++n) {
      const auto r = a[n].residue_on(l);
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i != *weight && r[i] != 0) flag(gen, n, "residue leaves the weight of a_0");
      }
      if (n < c.residue_targets.size() && c.residue_targets[n] != r[*weight]) {
        flag(gen, n, "residue " + r[*weight].get_str() + " differs from the target " + c.residue_targets[n].get_str());
      }
      span = rational_gcd(span, r[*weight]);
    }
    for (const auto& f : g.generators) kappa = rational_gcd(kappa, f.residue_on(l)[*weight]);
    if (gen.passed && span != kappa) {
      flag(gen, a.size() - 1, "residues generate " + span.get_str() + "Z, the group's residues " + kappa.get_str() + "Z");
    }
  }

  std::vector<std::optional<std::uint64_t>> mu(a.size());
  for (std::size_t n = 0; n < a.size(); ++n) {
    try {
      mu[n] = a[n].mu(l);
    } catch (const Error&) {
      flag(mono, n, "a_" + std::to_string(n) + " vanishes on the ladder");
      continue;
    }
    if (n > 0 && mu[n - 1] && *mu[n] <= *mu[n - 1]) {
      flag(mono, n, "mu(a_" + std::to_string(n) + ") = " + std::to_string(*mu[n]) + " <= mu(a_" +
                        std::to_string(n - 1) + ") = " + std::to_string(*mu[n - 1]));
    }
  }

  if (c.divisors.size() != a.size()) {
    flag(div, 0, "expected one divisor per element");
  } else {
    for (std::size_t n = 0; n < a.size(); ++n) {
      const mpz_class& d = c.divisors[n];
      if (d <= 0 || mpz_divisible_p(factorial(n).get_mpz_t(), d.get_mpz_t()) == 0) {
        flag(div, n, "d_" + std::to_string(n) + " = " + d.get_str() + " does not divide " + std::to_string(n) + "!");
        continue;
      }
      if (!mu[n]) continue;
      const Element h = a[n].scaled(d) - a[0];
      if (!h.tails().empty()) {
        flag(div, n, "d_n a_n - a_0 keeps a tail");
        continue;
      }
      for (const auto& [x, v] : h.prefix()) {
        auto k = lad.index_of(x);
        if (k && *k >= *mu[n]) {
          flag(div, n, "(d_n a_n - a_0)(" + std::to_string(*k) + ") = " + v.get_str());
          break;
        }
      }
    }
  }
  return StaircaseReport{{pos, gen, mono, div}};
}

std::optional<StaircaseBase> staircase_from_sequence(const GroupPresentation& g, std::vector<Element> seq) {
  if (seq.empty()) return std::nullopt;
  const std::size_t l = ladder_of(g);
  const auto w = residue_weight(seq[0], l);
  if (!w) return std::nullopt;
  StaircaseBase out;
  const mpq_class a0 = seq[0].residue_on(l)[*w];
  for (const auto& f : seq) {
    const mpq_class r = f.residue_on(l)[*w];
    if (r == 0) return std::nullopt;
    const mpq_class d = a0 / r;
    if (d.get_den() != 1 || d <= 0) return std::nullopt;
    out.divisors.push_back(d.get_num());
    out.residue_targets.push_back(r);
  }
  out.elements = std::move(seq);
  return out;
}

StaircaseBase construct_staircase(const GroupPresentation& g, const Element& a0, std::size_t count) {
  const auto& amb = g.ambient;
  const std::size_t l = ladder_of(g);
  const auto& lad = amb->ladders[l];
  const auto w = residue_weight(a0, l);
  if (!w) throw Error(ErrorKind::Precondition, "a_0 must have a nonzero residue");
  const mpq_class alpha0 = a0.residue_on(l)[*w];
  if (alpha0 <= 0 || !a0.is_positive()) throw Error(ErrorKind::Precondition, "a_0 must be positive");

  std::vector<std::size_t> carriers;
  mpq_class kappa = 0;
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    const auto gw = residue_weight(g.generators[i], l);
    if (!gw) continue;
    if (*gw != *w) throw Error(ErrorKind::ResidueNotRank1, "the residue group spans several weights");
    carriers.push_back(i);
    kappa = rational_gcd(kappa, g.generators[i].residue_on(l)[*w]);
  }
  if (kappa == 0) throw Error(ErrorKind::Precondition, "no generator has a residue");

  StaircaseBase out;
  out.elements.push_back(a0);
  out.divisors.push_back(1);
  out.residue_targets.push_back(alpha0);
  std::uint64_t prev_mu = a0.mu(l);

  // residue equation scaled to integers
  mpz_class scale = 1;
  for (std::size_t i : carriers) {
    const auto& den = g.generators[i].residue_on(l)[*w].get_den();
    mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
  }
  IntMatrix residue_rows;
  for (std::size_t i : carriers) {
    const mpq_class r = g.generators[i].residue_on(l)[*w] * scale;
    residue_rows.push_back({r.get_num()});
  }
  const HermiteForm residue_hnf = hermite(residue_rows, 1);

  for (std::size_t n = 1; n < count; ++n) {
    const mpq_class alpha = rational_lcm(alpha0 / mpq_class(factorial(n)), kappa);
    const mpq_class dq = alpha0 / alpha;
    if (dq.get_den() != 1) throw Error(ErrorKind::Precondition, "residue target does not divide a_0's residue");
    const mpz_class d = dq.get_num();

    std::optional<Element> b;
    for (std::size_t i : carriers) {
      if (g.generators[i].residue_on(l)[*w] == alpha) {
        b = g.generators[i];
        break;
      }
    }
    if (!b) {
      const mpq_class target = alpha * scale;
      auto sol = target.get_den() == 1 ? solve_left(residue_hnf, {target.get_num()}) : std::nullopt;
      if (!sol) throw Error(ErrorKind::PreimageExhausted, "no generator combination has residue " + alpha.get_str());
      Element acc = Element::zero(amb);
      for (std::size_t j = 0; j < carriers.size(); ++j) acc = acc + sol->coefficients[j] * g.generators[carriers[j]];
      b = acc;
    }

    const Element h = b->scaled(d) - a0;
    std::uint64_t lambda = 0;
    for (const auto& [x, v] : h.prefix()) {
      if (auto k = lad.index_of(x)) lambda = std::max(lambda, *k + 1);
    }
    const Tail& bt = b->tails().at(l);
    const std::uint64_t settle = sign_threshold(lad, bt.coefficients, bt.start);
    std::uint64_t cut = std::max({lambda, prev_mu, settle == 0 ? std::uint64_t{0} : settle - 1});

    std::map<Ordinal, mpz_class> strip;
    for (const auto& [x, v] : b->prefix()) {
      if (!lad.index_of(x)) strip[x] = v;
    }
    for (std::uint64_t i = 0; i <= cut; ++i) {
      const mpz_class v = b->eval_rung(l, i);
      if (v != 0) strip[lad.point(i)] = v;
    }
    const Element a = *b - Element::from_parts(amb, std::move(strip), {});
    prev_mu = a.mu(l);
    out.elements.push_back(a);
    out.divisors.push_back(d);
    out.residue_targets.push_back(alpha);
  }
  return out;
}

std::vector<Element> free_from_bounded_torsion(const std::vector<Element>& a_basis,
                                               const std::vector<Element>& b_gens, const mpz_class& n) {
  if (n <= 0) throw Error(ErrorKind::Precondition, "torsion bound must be positive");
  if (b_gens.empty()) return a_basis;
  if (a_basis.empty()) {
    for (const auto& b : b_gens) {
      if (!b.is_zero()) throw Error(ErrorKind::WitnessNotFound, "n * b is not in the zero group");
    }
    return {};
  }
  std::vector<Element> scaled;
  for (const auto& b : b_gens) scaled.push_back(b.scaled(n));
  auto w = coordinates_over(a_basis.front().ambient(), a_basis, scaled);
  if (!w) throw Error(ErrorKind::WitnessNotFound, "some n * b is not in <A>");
  return basis_from_witnesses(a_basis, *w, n);
}

// ---------------------------------------------------------------------------

FreenessCertificate build_chain_successor(const GroupPresentation& g, std::uint64_t rank_bound) {
  const auto& amb = g.ambient;
  const auto& space = amb->space;
  const Ordinal& prime = g.infinite_prime();
  if (space.cb_rank(prime) != Ordinal(1)) {
    throw Error(ErrorKind::Precondition, "successor chain needs an infinite prime of rank 1, got rank " +
                                             to_string(space.cb_rank(prime)));
  }
  const std::size_t l = ladder_of(g);
  const auto& lad = amb->ladders[l];
  const WeightSplit split = split_by_weight(g, l);

  // staircase per weight: the generators themselves when they already are one
  std::map<std::size_t, StaircaseBase> stairs;
  for (const auto& [w, idx] : split.by_weight) {
    std::vector<Element> seq;
    for (std::size_t i : idx) seq.push_back(g.generators[i]);
    auto cand = staircase_from_sequence(g, seq);
    if (cand && verify_staircase(*cand, g).passed()) {
      stairs[w] = std::move(*cand);
      continue;
    }
    GroupPresentation gw{amb, {}, {}, g.contains_finite_support, g.focus};
    for (std::size_t i : idx) gw.generators.push_back(g.generators[i]);
    for (std::size_t i : split.kernel) gw.generators.push_back(g.generators[i]);
    std::optional<Element> a0;
    for (const auto& f : seq) {
      if (f.is_positive() && residue_weight(f, l)) {
        a0 = f;
        break;
      }
    }
    if (!a0) throw Error(ErrorKind::Precondition, "no positive generator carries the residue of a weight");
    stairs[w] = construct_staircase(gw, *a0, rank_bound + 1);
  }

  std::set<Ordinal> off_ladder;
  auto note = [&](const Element& f) {
    for (const auto& [x, v] : f.prefix()) {
      if (!lad.index_of(x)) off_ladder.insert(x);
    }
  };
  for (const auto& f : g.generators) note(f);
  for (const auto& [w, s] : stairs) {
    for (const auto& f : s.elements) note(f);
  }
  for (const auto& x : off_ladder) {
    if (space.cb_rank(x) != Ordinal(0)) {
      throw Error(ErrorKind::Precondition, "finite prime " + to_string(x) + " is not isolated");
    }
  }

  auto unit = [&](const Ordinal& x) {
    Element e = Element::basis(amb, x);
    if (!is_member(e, g)) throw Error(ErrorKind::WitnessNotFound, "e(" + to_string(x) + ") is not in the group");
    return e;
  };

  FreenessCertificate cert;
  cert.ambient = amb;
  cert.segments.push_back({ChainSegment::Kind::Successor, "ladder " + lad.id(), {}});
  std::vector<StepPlan> plans;
  std::vector<std::pair<std::string, Element>> wanted;
  for (std::uint64_t r = 0; r <= rank_bound; ++r) {
    StepPlan p;
    p.rank = Ordinal(r);
    p.bound = factorial(r);
    if (r == 0) {
      for (const auto& x : off_ladder) {
        p.quotient.push_back(unit(x));
        wanted.emplace_back("e(" + to_string(x) + ")", p.quotient.back());
      }
    }
    p.quotient.push_back(unit(lad.point(r)));
    wanted.emplace_back("e(" + to_string(lad.point(r)) + ")", p.quotient.back());
    for (const auto& [w, s] : stairs) {
      for (std::size_t k = 0; k < s.elements.size(); ++k) {
        if (s.elements[k].mu(l) != r) continue;
        (k == 0 ? p.quotient : p.extras).push_back(s.elements[k]);
      }
    }
    plans.push_back(std::move(p));
  }
  cert.steps = assemble(amb, {}, plans);
  std::vector<std::pair<std::string, Element>> all;
  for (std::size_t i = 0; i < g.generators.size(); ++i) all.emplace_back(g.name_of(i), g.generators[i]);
  all.insert(all.end(), wanted.begin(), wanted.end());
  finish(cert, all);
  return cert;
}

FreenessCertificate build_chain_limit(const GroupPresentation& g, const std::vector<Ordinal>& alphas,
                                      std::uint64_t rank_bound) {
  const auto& amb = g.ambient;
  const auto& space = amb->space;
  const Ordinal& prime = g.infinite_prime();
  const Ordinal top_rank = space.cb_rank(prime);
  if (!is_limit(top_rank)) {
    throw Error(ErrorKind::Precondition, "limit chain needs an infinite prime of limit rank, got " + to_string(top_rank));
  }
  if (alphas.empty() || alphas.front().is_zero()) throw Error(ErrorKind::Precondition, "alphas must start above 0");
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    if ((n > 0 && !(alphas[n - 1] < alphas[n])) || !(alphas[n] < top_rank)) {
      throw Error(ErrorKind::Precondition, "alphas must increase strictly below " + to_string(top_rank));
    }
  }
  const std::size_t l = ladder_of(g);
  const WeightSplit split = split_by_weight(g, l);

  struct Leader {
    std::size_t weight;
    std::size_t index;  // n
    Element f;
    Element gap;        // n! f_n - t f_0
    Ordinal rank;       // cb(gap)
  };
  std::vector<Element> leaders0;
  std::vector<Leader> followers;
  std::vector<Element> pads;
  std::vector<std::pair<std::string, Element>> wanted;
  std::vector<std::string> skipped;

  for (const auto& [w, idx] : split.by_weight) {
    const Element& f0 = g.generators[idx[0]];
    const mpq_class r0 = f0.residue_on(l)[w];
    leaders0.push_back(f0);
    wanted.emplace_back(g.name_of(idx[0]), f0);
    for (std::size_t n = 1; n < idx.size(); ++n) {
      if (n > rank_bound) {
        skipped.push_back(g.name_of(idx[n]));
        continue;
      }
      const Element& ft = g.generators[idx[n]];
      wanted.emplace_back(g.name_of(idx[n]), ft);
      const mpq_class tq = mpq_class(factorial(n)) * ft.residue_on(l)[w] / r0;
      if (tq.get_den() != 1) {
        throw Error(ErrorKind::Precondition, g.name_of(idx[n]) + ": n! times its residue is not a multiple of f_0's");
      }
      const mpz_class t = tq.get_num();
      if (n >= alphas.size()) throw Error(ErrorKind::Precondition, "alphas do not reach index " + std::to_string(n));
      const Ordinal& alpha = alphas[n];
      auto lift = [&](const Element& f) { return f.scaled(factorial(n)) - f0.scaled(t); };
      Element f = ft;
      Element gap = lift(f);
      if (!gap.tail_free()) throw Error(ErrorKind::Precondition, "n! f_n - t f_0 keeps a tail");
      if (gap.is_zero() || gap.cb() <= alpha) {
        bool padded = false;
        const Ordinal gamma = alpha + Ordinal(1);
        for (std::uint64_t c = 1; c <= kPaddingCandidates && !padded; ++c) {
          auto x = padding_point(space, gamma, c);
          if (!x) continue;
          const Element q = semibasic_construct(g, *x);
          const Element cand = ft + q;
          const Element cand_gap = lift(cand);
          if (!cand_gap.is_zero() && alpha < cand_gap.cb()) {
            f = cand;
            gap = cand_gap;
            pads.push_back(q);
            padded = true;
          }
        }
        if (!padded) {
          throw Error(ErrorKind::NoPaddingPoint, "no finite prime of rank " + to_string(gamma) + " pads " +
                                                     g.name_of(idx[n]));
        }
      }
      followers.push_back(Leader{w, n, f, gap, gap.cb()});
    }
  }

  // the kernel window: every point the chain touches, closed under q supports
  std::set<Ordinal> window;
  auto absorb = [&](const Element& f) {
    for (const auto& [x, v] : f.prefix()) window.insert(x);
  };
  for (const auto& f : leaders0) absorb(f);
  for (const auto& fl : followers) {
    absorb(fl.f);
    absorb(fl.gap);
  }
  for (std::size_t i : split.kernel) {
    absorb(g.generators[i]);
    wanted.emplace_back(g.name_of(i), g.generators[i]);
  }
  std::map<Ordinal, Element> q;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& x : std::vector<Ordinal>(window.begin(), window.end())) {
      if (q.count(x)) continue;
      Element qx = semibasic_construct(g, x);
      if (!qx.tail_free()) throw Error(ErrorKind::Precondition, "semibasic element at " + to_string(x) + " has a tail");
      for (const auto& [y, v] : qx.prefix()) grew = window.insert(y).second || grew;
      q.emplace(x, std::move(qx));
    }
  }
  for (const auto& [x, qx] : q) wanted.emplace_back("q(" + to_string(x) + ")", qx);

  FreenessCertificate cert;
  cert.ambient = amb;
  cert.segments.push_back({ChainSegment::Kind::Limit, "ladder " + amb->ladders[l].id(), alphas});
  std::set<Ordinal> ranks{Ordinal(0)};
  for (const auto& x : window) ranks.insert(space.cb_rank(x));
  for (const auto& fl : followers) ranks.insert(fl.rank);
  std::vector<StepPlan> plans;
  for (const auto& beta : ranks) {
    StepPlan p;
    p.rank = beta;
    auto bound = required_torsion_bound(cert.segments[0], beta);
    if (!bound) throw Error(ErrorKind::Precondition, "alphas do not reach rank " + to_string(beta));
    p.bound = *bound;
    for (const auto& [x, qx] : q) {
      if (space.cb_rank(x) == beta) p.quotient.push_back(qx);
    }
    if (beta.is_zero()) p.quotient.insert(p.quotient.end(), leaders0.begin(), leaders0.end());
    for (const auto& fl : followers) {
      if (fl.rank == beta) p.extras.push_back(fl.f);
    }
    plans.push_back(std::move(p));
  }
  cert.steps = assemble(amb, {}, plans);
  finish(cert, wanted);
  cert.beyond_truncation.insert(cert.beyond_truncation.end(), skipped.begin(), skipped.end());
  return cert;
}

// ---------------------------------------------------------------------------

std::vector<ClopenBlock> default_blocks(const ScatteredSpace& space) {
  std::vector<ClopenBlock> out;
  Ordinal low;
  for (const auto& p : space.infinite_primes()) {
    out.push_back(ClopenBlock{low, p});
    low = p;
  }
  return out;
}

std::vector<Ordinal> default_alphas(const Ordinal& limit_rank, std::size_t count) {
  std::vector<Ordinal> out;
  for (std::size_t n = 0; n < count; ++n) out.push_back(fundamental(limit_rank, n + 1));
  return out;
}

namespace {

FreenessCertificate single_prime_chain(const GroupPresentation& g, std::uint64_t rank_bound,
                                       const std::vector<Ordinal>& alphas) {
  const Ordinal rank = g.ambient->space.cb_rank(g.infinite_prime());
  if (is_limit(rank)) {
    return build_chain_limit(g, alphas.empty() ? default_alphas(rank, 64) : alphas, rank_bound);
  }
  return build_chain_successor(g, rank_bound);
}

}  // namespace

FreenessCertificate multi_prime_compose(const GroupPresentation& g, const std::vector<ClopenBlock>& blocks,
                                        std::uint64_t rank_bound) {
  const auto& amb = g.ambient;
  const auto& space = amb->space;
  std::vector<ClopenBlock> sorted = blocks;
  std::sort(sorted.begin(), sorted.end(), [](const ClopenBlock& a, const ClopenBlock& b) { return a.low < b.low; });
  for (const auto& b : sorted) space.check_block(b);
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i].overlaps(sorted[i + 1])) {
      throw Error(ErrorKind::BlockOverlap, to_string(sorted[i]) + " overlaps " + to_string(sorted[i + 1]));
    }
  }
  std::vector<Ordinal> focus;
  for (const auto& b : sorted) {
    std::vector<Ordinal> inside;
    for (const auto& p : space.infinite_primes()) {
      if (b.contains(p)) inside.push_back(p);
    }
    if (inside.size() != 1) {
      throw Error(ErrorKind::Precondition, to_string(b) + " holds " + std::to_string(inside.size()) +
                                               " infinite primes, expected 1");
    }
    focus.push_back(inside.front());
  }
  for (const auto& p : space.infinite_primes()) {
    if (std::find(focus.begin(), focus.end(), p) == focus.end()) {
      throw Error(ErrorKind::UncoveredInfinitePrime, "no block covers infinite prime " + to_string(p));
    }
  }

  FreenessCertificate cert;
  cert.ambient = amb;

  // residual finite-support part
  std::vector<Element> residual;
  for (const auto& f : g.generators) {
    Element r = restrict_to_blocks(f, sorted, false);
    if (!r.is_zero()) residual.push_back(r);
  }
  if (g.contains_finite_support) {
    std::set<Ordinal> pts;
    for (const auto& f : residual) {
      for (const auto& [x, v] : f.prefix()) pts.insert(x);
    }
    for (const auto& x : pts) residual.push_back(Element::basis(amb, x));
  }
  if (!residual.empty()) {
    CoordinateFrame frame(amb, residual);
    const HermiteForm h = hermite(frame.coordinates(residual), frame.size());
    StepPlan p;
    p.segment = 0;
    for (std::size_t i = 0; i < h.rank; ++i) p.quotient.push_back(linear_combination(amb, h.transform[i], residual));
    cert.segments.push_back({ChainSegment::Kind::Residual, "outside the blocks", {}});
    cert.steps = assemble(amb, {}, {p});
  }

  for (std::size_t b = 0; b < sorted.size(); ++b) {
    GroupPresentation gb{amb, {}, {}, g.contains_finite_support, focus[b]};
    for (std::size_t i = 0; i < g.generators.size(); ++i) {
      Element r = restrict_to_blocks(g.generators[i], {sorted[b]}, true);
      if (r.is_zero()) continue;
      gb.generators.push_back(std::move(r));
      gb.names.push_back(g.name_of(i) + "|" + to_string(sorted[b]));
    }
    const FreenessCertificate sub = single_prime_chain(gb, rank_bound, {});
    const std::vector<Element> prefix = cert.steps.empty() ? std::vector<Element>{} : cert.steps.back().basis;
    const std::size_t offset = cert.segments.size();
    for (auto seg : sub.segments) {
      seg.label += " in " + to_string(sorted[b]);
      cert.segments.push_back(std::move(seg));
    }
    for (const auto& s : sub.steps) {
      ChainStep t = s;
      t.segment += offset;
      for (auto& w : t.torsion_witnesses) w.insert(w.begin(), prefix.size(), mpz_class(0));
      t.basis = concat(prefix, s.basis);
      cert.steps.push_back(std::move(t));
    }
  }

  std::vector<std::pair<std::string, Element>> wanted;
  for (std::size_t i = 0; i < g.generators.size(); ++i) wanted.emplace_back(g.name_of(i), g.generators[i]);
  finish(cert, wanted);
  return cert;
}

FreenessCertificate extract_basis(const GroupPresentation& g, std::uint64_t rank_bound,
                                  const std::vector<Ordinal>& alphas, const std::vector<ClopenBlock>& blocks) {
  const auto& primes = g.ambient->space.infinite_primes();
  if (primes.size() == 1 && blocks.empty() && !g.focus) return single_prime_chain(g, rank_bound, alphas);
  return multi_prime_compose(g, blocks.empty() ? default_blocks(g.ambient->space) : blocks, rank_bound);
}

}  // namespace lfree
