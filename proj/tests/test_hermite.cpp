#include <doctest.h>

#include <random>

#include "lfree/hermite.hpp"
#include "support.hpp"

using namespace lfree;

namespace {

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b, std::size_t cols) {
  IntMatrix out(a.size(), IntVector(cols, mpz_class(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

mpz_class determinant(IntMatrix m) {
  // Bareiss elimination
  const std::size_t n = m.size();
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return n == 0 ? mpz_class(1) : sign * m[n - 1][n - 1];
}

}  // namespace

TEST_CASE("hermite form properties on random matrices") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> v(-6, 6), dim(1, 5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = dim(rng), c = dim(rng);
    IntMatrix a(r, IntVector(c));
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    const HermiteForm h = hermite(a, c);
    CHECK(multiply(h.transform, a, c) == h.form);
    CHECK(abs(determinant(h.transform)) == 1);
    for (std::size_t i = 0; i < h.rank; ++i) {
      const std::size_t p = h.pivots[i];
      CHECK(h.form[i][p] > 0);
      if (i > 0) CHECK(h.pivots[i - 1] < p);
      for (std::size_t k = 0; k < i; ++k) {
        CHECK(h.form[k][p] >= 0);
        CHECK(h.form[k][p] < h.form[i][p]);
      }
    }
    for (std::size_t i = h.rank; i < r; ++i) {
      for (const auto& x : h.form[i]) CHECK(x == 0);
    }
  }
}

TEST_CASE("integer solving against rational elimination") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> v(-4, 4);
  for (int t = 0; t < 200; ++t) {
    IntMatrix a(3, IntVector(4));
    for (auto& row : a)
      for (auto& x : row) x = v(rng);
    IntVector target(4, mpz_class(0));
    IntVector coef{v(rng), v(rng), v(rng)};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) target[j] += coef[i] * a[i][j];
    auto sol = solve_left(a, 4, target);
    REQUIRE(sol);
    IntVector back(4, mpz_class(0));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 4; ++j) back[j] += sol->coefficients[i] * a[i][j];
    CHECK(back == target);
    std::vector<std::vector<mpq_class>> cols;
    for (const auto& row : a) cols.emplace_back(row.begin(), row.end());
    auto q = oracle::rational_solve(cols, std::vector<mpq_class>(target.begin(), target.end()));
    CHECK(sol->unique == q.has_value());
    if (q) {
      for (std::size_t i = 0; i < 3; ++i) CHECK(mpq_class(sol->coefficients[i]) == (*q)[i]);
    }
  }
}

TEST_CASE("parity obstruction") {
  CHECK_FALSE(solve_left({{2, 0}, {0, 2}}, 2, {1, 0}));
  CHECK(solve_left({{2, 1}, {0, 1}}, 2, {2, 0}));
}

TEST_CASE("rank and saturation") {
  CHECK(integer_rank({{1, 2}, {2, 4}}, 2) == 1);
  CHECK(integer_rank({}, 3) == 0);
  CHECK(saturated({{1, 0, 0}, {0, 1, 0}}, 3));
  CHECK_FALSE(saturated({{2, 0}}, 2));
  CHECK(saturated({{2, 3}}, 2));
  CHECK_FALSE(saturated({{1, 1}, {1, -1}}, 2));
}
