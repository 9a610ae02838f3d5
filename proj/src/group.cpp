#include "lfree/group.hpp"

#include <algorithm>

#include "lfree/error.hpp"

namespace lfree {

namespace {

constexpr std::size_t kCandidateCap = 64;

// Calls visit(indices, coefficients) for every combination of at most m
// generators with nonzero coefficients in [-b, b]; stops when visit returns true.
bool for_each_combination(std::size_t n, std::size_t m, int b,
                          const std::function<bool(const std::vector<std::size_t>&, const std::vector<int>&)>& visit) {
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t)> choose = [&](std::size_t from) -> bool {
    if (!idx.empty()) {
      std::vector<int> c(idx.size(), -b);
      for (;;) {
        bool zero = std::any_of(c.begin(), c.end(), [](int v) { return v == 0; });
        if (!zero && visit(idx, c)) return true;
        std::size_t i = 0;
        while (i < c.size() && c[i] == b) c[i++] = -b;
        if (i == c.size()) break;
        ++c[i];
      }
    }
    if (idx.size() == m) return false;
    for (std::size_t j = from; j < n; ++j) {
      idx.push_back(j);
      if (choose(j + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  return choose(0);
}

}  // namespace

std::string GroupPresentation::name_of(std::size_t i) const {
  if (i < names.size() && !names[i].empty()) return names[i];
  return "g" + std::to_string(i);
}

const Ordinal& GroupPresentation::infinite_prime() const {
  if (focus) return *focus;
  const auto& primes = ambient->space.infinite_primes();
  if (primes.size() != 1) {
    throw Error(ErrorKind::Precondition, "expected exactly one infinite prime, found " + std::to_string(primes.size()));
  }
  return *primes.begin();
}

std::optional<DecompositionResult> member_decompose(const Element& f, const GroupPresentation& g) {
  if (!same_ambient(f.ambient(), g.ambient)) throw Error(ErrorKind::SpaceMismatch, "element and group");
  std::vector<Element> family = g.generators;
  family.push_back(f);
  CoordinateFrame frame(g.ambient, family);
  IntMatrix rows = frame.coordinates(g.generators);
  std::vector<Ordinal> unit_points;
  if (g.contains_finite_support) {
    for (const auto& x : frame.points()) {
      rows.push_back(frame.coordinates(Element::basis(g.ambient, x)));
      unit_points.push_back(x);
    }
  }
  auto sol = solve_left(rows, frame.size(), frame.coordinates(f));
  if (!sol) return std::nullopt;
  DecompositionResult out{{}, {}, Element::zero(g.ambient), sol->unique, frame.slot_names()};
  for (std::size_t i = 0; i < g.generators.size(); ++i) {
    if (sol->coefficients[i] != 0) out.coefficients[i] = sol->coefficients[i];
  }
  for (std::size_t j = 0; j < unit_points.size(); ++j) {
    const auto& c = sol->coefficients[g.generators.size() + j];
    if (c != 0) out.finite_part[unit_points[j]] = c;
  }
  return out;
}

bool is_member(const Element& f, const GroupPresentation& g) { return member_decompose(f, g).has_value(); }

std::function<bool(const Element&)> finite_prime_test(const GroupPresentation& g, const Ordinal& x) {
  if (!g.ambient->space.is_finite_prime(x)) throw Error(ErrorKind::NotAPoint, to_string(x) + " is not a finite prime");
  return [x](const Element& f) { return f.eval(x) == 0; };
}

mpz_class residue_index_at(const GroupPresentation& g, const Ordinal& x) {
  if (!g.ambient->space.is_finite_prime(x)) throw Error(ErrorKind::NotAPoint, to_string(x) + " is not a finite prime");
  if (g.contains_finite_support) return 1;
  mpz_class d = 0;
  for (const auto& f : g.generators) {
    const mpz_class v = f.eval(x);
    mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), v.get_mpz_t());
  }
  if (d == 0) throw Error(ErrorKind::AllZero, "every generator vanishes at " + to_string(x));
  return d;
}

Element semibasic_construct(const GroupPresentation& g, const Ordinal& x, SemibasicSearch bound) {
  const auto& amb = g.ambient;
  if (!amb->space.is_finite_prime(x)) throw Error(ErrorKind::NotAPoint, to_string(x) + " is not a finite prime");
  const Element ex = Element::basis(amb, x);
  if (is_member(ex, g)) return ex;

  std::vector<Element> wide;   // f >= 0, f(x) >= 1
  std::vector<Element> unit;   // g >= 0, g(x) = 1
  for_each_combination(g.generators.size(), bound.max_terms, bound.coefficient_bound,
                       [&](const std::vector<std::size_t>& idx, const std::vector<int>& c) {
                         Element h = Element::zero(amb);
                         for (std::size_t i = 0; i < idx.size(); ++i) h = h + c[i] * g.generators[idx[i]];
                         const mpz_class v = h.eval(x);
                         if (v >= 1 && h.is_positive()) {
                           if (is_semibasic(h, x)) {
                             unit.insert(unit.begin(), h);
                             return true;
                           }
                           if (wide.size() < kCandidateCap) wide.push_back(h);
                           if (v == 1 && unit.size() < kCandidateCap) unit.push_back(h);
                         }
                         return false;
                       });
  if (!unit.empty() && is_semibasic(unit.front(), x)) return unit.front();
  for (const auto& f : wide) {
    for (const auto& u : unit) {
      Element q = f.meet(u);
      if (is_semibasic(q, x)) return q;
    }
  }
  throw Error(ErrorKind::SearchExhausted,
              "no semibasic element at " + to_string(x) + " with at most " + std::to_string(bound.max_terms) +
                  " generators and coefficients in [-" + std::to_string(bound.coefficient_bound) + ", " +
                  std::to_string(bound.coefficient_bound) + "]");
}

std::map<Ordinal, mpz_class> spanqx_decompose(const Element& f, const std::map<Ordinal, Element>& q,
                                              const Ordinal& beta) {
  const auto& space = f.ambient()->space;
  if (!f.tail_free()) throw Error(ErrorKind::Precondition, "spanqx needs zero residue at infinity: " + to_string(f));
  if (f.cb() > beta) {
    throw Error(ErrorKind::Precondition, "cb(f) = " + to_string(f.cb()) + " exceeds " + to_string(beta));
  }
  std::map<Ordinal, mpz_class> out;
  Element rest = f;
  while (!rest.is_zero()) {
    if (!rest.tail_free()) throw Error(ErrorKind::Precondition, "a q_x carries a tail");
    const Ordinal gamma = rest.cb();
    std::vector<Ordinal> slice;
    for (const auto& [x, v] : rest.prefix()) {
      if (space.cb_rank(x) == gamma) slice.push_back(x);
    }
    for (const auto& x : slice) {
      auto it = q.find(x);
      if (it == q.end()) throw Error(ErrorKind::Precondition, "no q_x for x = " + to_string(x));
      if (!it->second.tail_free() || !is_semibasic(it->second, x)) {
        throw Error(ErrorKind::Precondition, "q_x at " + to_string(x) + " is not a tail-free semibasic element");
      }
      const mpz_class c = rest.eval(x);
      rest = rest - c * it->second;
      out[x] += c;
    }
    if (!rest.is_zero() && !(rest.cb() < gamma)) {
      throw Error(ErrorKind::Precondition, "rank failed to drop below " + to_string(gamma));
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

KernelBasisCertificate kernel_basis_certificate(const GroupPresentation& g, const std::vector<Ordinal>& window) {
  const auto& space = g.ambient->space;
  KernelBasisCertificate out;
  out.points = window;
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  std::stable_sort(out.points.begin(), out.points.end(), [&](const Ordinal& a, const Ordinal& b) {
    return space.cb_rank(a) > space.cb_rank(b);
  });
  for (const auto& x : out.points) out.elements.push_back(semibasic_construct(g, x));
  const std::size_t n = out.points.size();
  out.evaluation.assign(n, IntVector(n));
  out.unitriangular = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.evaluation[i][j] = out.elements[j].eval(out.points[i]);
      if (i == j && out.evaluation[i][j] != 1) out.unitriangular = false;
      if (j > i && out.evaluation[i][j] != 0) out.unitriangular = false;
    }
  }
  return out;
}

mpq_class rational_gcd(const mpq_class& a, const mpq_class& b) {
  mpz_class num, den;
  const mpz_class x = abs(a.get_num()) * b.get_den();
  const mpz_class y = abs(b.get_num()) * a.get_den();
  mpz_gcd(num.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpq_class out(num, a.get_den() * b.get_den());
  out.canonicalize();
  return out;
}

mpq_class rational_lcm(const mpq_class& a, const mpq_class& b) {
  if (a == 0 || b == 0) return 0;
  mpz_class num;
  const mpz_class x = abs(a.get_num()) * b.get_den();
  const mpz_class y = abs(b.get_num()) * a.get_den();
  mpz_lcm(num.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpq_class out(num, a.get_den() * b.get_den());
  out.canonicalize();
  return out;
}

std::optional<std::size_t> residue_weight(const Element& f, std::size_t l) {
  const auto r = f.residue_on(l);
  std::optional<std::size_t> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == 0) continue;
    if (out) throw Error(ErrorKind::ResidueNotRank1, to_string(f) + " has a residue on several weights");
    out = i;
  }
  return out;
}

}  // namespace lfree
