#pragma once

// Test-side oracles and fixtures.  Nothing here calls the library's Hermite
// code or its CB-rank routine.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "lfree/ddmodel.hpp"
#include "lfree/examples.hpp"
#include "lfree/group.hpp"

namespace lfree::oracle {

// Ordinals below w^4 as digit tuples (c3, c2, c1, c0), compared lexicographically.
using Digits = std::array<std::uint64_t, 4>;

inline Ordinal to_ordinal(const Digits& d) {
  Ordinal out;
  for (int i = 0; i < 4; ++i) {
    if (d[i] != 0) out = out + Ordinal::power(Ordinal(3 - i), d[i]);
  }
  return out;
}

// Every tuple <= top with all digits <= n, plus top itself.
inline std::vector<Digits> truncation(const Digits& top, std::uint64_t n) {
  std::vector<Digits> out;
  Digits d{};
  for (d[0] = 0; d[0] <= n; ++d[0])
    for (d[1] = 0; d[1] <= n; ++d[1])
      for (d[2] = 0; d[2] <= n; ++d[2])
        for (d[3] = 0; d[3] <= n; ++d[3])
          if (d <= top) out.push_back(d);
  if (std::find(out.begin(), out.end(), top) == out.end()) out.push_back(top);
  std::sort(out.begin(), out.end());
  return out;
}

// Cantor-Bendixson rank by iterating derived sets of the truncation.  x is a
// limit point of S when x is a limit ordinal and S meets (z_k, x) for the
// basic neighbourhoods z_k = x - w^e + w^(e-1) * k, k < n, e the lowest
// nonzero position of x.
inline std::map<Digits, std::uint64_t> derived_rank(const Digits& top, std::uint64_t n) {
  std::vector<Digits> s = truncation(top, n);
  std::map<Digits, std::uint64_t> rank;
  for (const auto& x : s) rank[x] = 0;
  for (std::uint64_t level = 1; !s.empty(); ++level) {
    std::vector<Digits> next;
    for (const auto& x : s) {
      int low = -1;  // index of the lowest nonzero digit
      for (int i = 3; i >= 0; --i) {
        if (x[i] != 0) {
          low = i;
          break;
        }
      }
      if (low == -1 || low == 3) continue;  // zero or successor
      bool limit_point = true;
      for (std::uint64_t k = 0; k < n && limit_point; ++k) {
        Digits z = x;
        z[low] -= 1;
        z[low + 1] = k;
        limit_point = std::any_of(s.begin(), s.end(), [&](const Digits& y) { return z < y && y < x; });
      }
      if (limit_point) next.push_back(x);
    }
    for (const auto& x : next) rank[x] = level;
    s = std::move(next);
  }
  return rank;
}

// Exact rational elimination: the unique c with sum c_j * columns[j] == target,
// or none when there is no rational solution or it is not unique.
inline std::optional<std::vector<mpq_class>> rational_solve(const std::vector<std::vector<mpq_class>>& columns,
                                                            const std::vector<mpq_class>& target) {
  const std::size_t m = target.size(), n = columns.size();
  std::vector<std::vector<mpq_class>> a(m, std::vector<mpq_class>(n + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j][i];
    a[i][n] = target[i];
  }
  std::size_t row = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = row;
    while (p < m && a[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || a[i][c] == 0) continue;
      const mpq_class f = a[i][c] / a[row][c];
      for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (pivot_col.size() != n) return std::nullopt;
  for (std::size_t i = row; i < m; ++i) {
    if (a[i][n] != 0) return std::nullopt;
  }
  std::vector<mpq_class> out(n);
  for (std::size_t i = 0; i < n; ++i) out[pivot_col[i]] = a[i][n] / a[i][pivot_col[i]];
  return out;
}

// Kernel models: tail-free groups where some q_x is not e_x.
struct KernelModel {
  GroupPresentation group;
  std::vector<Ordinal> window;
};

inline KernelModel kernel_model(const std::string& top_text) {
  const Ordinal top = parse_ordinal(top_text);
  KernelModel m;
  auto& g = m.group;
  auto add = [&](const std::string& lit) {
    g.generators.push_back(parse_element(lit, g.ambient));
    g.names.push_back(lit);
  };
  if (top_text == "w+1") {
    g.ambient = make_ambient(ScatteredSpace(top, {parse_ordinal("w")}),
                             {Ladder("main", parse_ordinal("w"), 0, 0, {Weight::parse("b", "factorial")})});
    for (const char* lit : {"e(0)", "e(1)", "e(2)", "e(3)", "e(4)", "e(5)", "e(w+1)"}) add(lit);
  } else if (top_text == "w*2") {
    g.ambient = make_ambient(ScatteredSpace(top, {top}),
                             {Ladder("main", top, 1, 0, {Weight::parse("b", "factorial")})});
    for (const char* lit : {"e(0)", "e(1)", "e(2)", "e(4)", "e(5)", "e(w+1)", "e(w+3)", "e(w) + e(3) + 2*e(w+2)"}) {
      add(lit);
    }
  } else if (top_text == "w^2") {
    g.ambient = make_ambient(ScatteredSpace(top, {top}),
                             {Ladder("main", top, 1, 0, {Weight::parse("b", "factorial")})});
    for (const char* lit : {"e(0)", "e(1)", "e(3)", "e(4)", "e(w+1)", "e(w+2)", "e(w*2+1)", "e(w) + e(2)",
                            "e(w*2) + 3*e(w+1)", "e(w*3) + e(w*2+5) + e(4)"}) {
      add(lit);
    }
  } else {
    throw std::invalid_argument(top_text);
  }
  std::set<Ordinal> pts;
  for (const auto& f : g.generators) {
    for (const auto& [x, v] : f.prefix()) pts.insert(x);
  }
  m.window.assign(pts.begin(), pts.end());
  return m;
}

inline Element random_combination(const GroupPresentation& g, std::mt19937_64& rng, std::size_t terms, int bound) {
  std::uniform_int_distribution<std::size_t> pick(0, g.generators.size() - 1);
  std::uniform_int_distribution<int> coef(-bound, bound);
  Element out = Element::zero(g.ambient);
  for (std::size_t t = 0; t < terms; ++t) out = out + coef(rng) * g.generators[pick(rng)];
  return out;
}

// Random element over an ambient: a few e_x on the given points and, per
// ladder, an integral tail with a small coefficient.
inline Element random_element(const AmbientPtr& amb, const std::vector<Ordinal>& points, std::mt19937_64& rng,
                              bool positive = false, bool with_tails = true) {
  std::uniform_int_distribution<int> coef(positive ? 0 : -3, 3);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::map<Ordinal, mpz_class> prefix;
  for (int t = 0; t < 3; ++t) prefix[points[pick(rng)]] += coef(rng);
  std::map<std::size_t, Tail> tails;
  if (with_tails) {
    std::uniform_int_distribution<std::uint64_t> start(0, 4);
    for (std::size_t l = 0; l < amb->ladders.size(); ++l) {
      if (coin(rng) == 0) continue;
      const auto& lad = amb->ladders[l];
      Tail t;
      t.start = start(rng);
      for (std::size_t w = 0; w < lad.weights().size(); ++w) {
        // denominators kept integral from t.start on
        const mpz_class den = w == 0 && lad.weights()[w].kind() == Weight::Kind::Factorial ? mpz_class(1 + (t.start >= 2)) : 1;
        t.coefficients.emplace_back(mpz_class(coef(rng)), den);
        t.coefficients.back().canonicalize();
      }
      tails[l] = std::move(t);
    }
  }
  Element f = Element::from_parts(amb, prefix, {}) + Element::from_parts(amb, {}, tails);
  if (positive) f = f.positive_part();
  return f;
}

}  // namespace lfree::oracle
