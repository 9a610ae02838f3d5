#include "lfree/hermite.hpp"

#include <utility>

#include "lfree/error.hpp"

namespace lfree {

namespace {

// rows a, b  <-  p*a + q*b,  u*a + v*b   with  p*v - q*u = 1
void combine_rows(IntVector& a, IntVector& b, const mpz_class& p, const mpz_class& q, const mpz_class& u,
                  const mpz_class& v) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    mpz_class na = p * a[j] + q * b[j];
    mpz_class nb = u * a[j] + v * b[j];
    a[j] = std::move(na);
    b[j] = std::move(nb);
  }
}

void axpy(IntVector& dst, const mpz_class& c, const IntVector& src) {
  if (c == 0) return;
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += c * src[j];
}

}  // namespace

HermiteForm hermite(const IntMatrix& rows, std::size_t columns) {
  const std::size_t m = rows.size();
  HermiteForm h;
  h.form = rows;
  for (const auto& r : h.form) {
    if (r.size() != columns) throw Error(ErrorKind::Precondition, "ragged matrix");
  }
  h.transform.assign(m, IntVector(m, mpz_class(0)));
  for (std::size_t i = 0; i < m; ++i) h.transform[i][i] = 1;

  std::size_t r = 0;
  for (std::size_t c = 0; c < columns && r < m; ++c) {
    // fold column c of rows r+1.. into row r with extended gcd steps
    for (std::size_t i = r + 1; i < m; ++i) {
      if (h.form[i][c] == 0) continue;
      if (h.form[r][c] == 0) {
        std::swap(h.form[r], h.form[i]);
        std::swap(h.transform[r], h.transform[i]);
        continue;
      }
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h.form[r][c].get_mpz_t(), h.form[i][c].get_mpz_t());
      const mpz_class a = h.form[r][c] / g;
      const mpz_class b = h.form[i][c] / g;
      // [s t; -b a] has determinant s*a + t*b = 1
      combine_rows(h.form[r], h.form[i], s, t, -b, a);
      combine_rows(h.transform[r], h.transform[i], s, t, -b, a);
    }
    if (h.form[r][c] == 0) continue;
    if (h.form[r][c] < 0) {
      for (auto& v : h.form[r]) v = -v;
      for (auto& v : h.transform[r]) v = -v;
    }
    const mpz_class& piv = h.form[r][c];
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h.form[i][c].get_mpz_t(), piv.get_mpz_t());
      if (q != 0) {
        axpy(h.form[i], -q, h.form[r]);
        axpy(h.transform[i], -q, h.transform[r]);
      }
    }
    h.pivots.push_back(c);
    ++r;
  }
  h.rank = r;
  return h;
}

std::size_t integer_rank(const IntMatrix& rows, std::size_t columns) { return hermite(rows, columns).rank; }

std::optional<IntegerSolution> solve_left(const HermiteForm& h, const IntVector& target) {
  IntVector rest = target;
  IntVector y(h.rank);
  for (std::size_t i = 0; i < h.rank; ++i) {
    const std::size_t c = h.pivots[i];
    const mpz_class& piv = h.form[i][c];
    if (mpz_divisible_p(rest[c].get_mpz_t(), piv.get_mpz_t()) == 0) return std::nullopt;
    y[i] = rest[c] / piv;
    axpy(rest, -y[i], h.form[i]);
  }
  for (const auto& v : rest) {
    if (v != 0) return std::nullopt;
  }
  const std::size_t m = h.transform.size();
  IntegerSolution out;
  out.coefficients.assign(m, mpz_class(0));
  for (std::size_t i = 0; i < h.rank; ++i) axpy(out.coefficients, y[i], h.transform[i]);
  out.unique = h.rank == m;
  return out;
}

std::optional<IntegerSolution> solve_left(const IntMatrix& rows, std::size_t columns, const IntVector& target) {
  if (target.size() != columns) throw Error(ErrorKind::Precondition, "target length mismatch");
  return solve_left(hermite(rows, columns), target);
}

bool saturated(const IntMatrix& rows, std::size_t columns) {
  if (rows.empty()) return true;
  // Z^n / L is torsion-free iff the columns of the r x n matrix span Z^r.
  IntMatrix transposed(columns, IntVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < columns; ++j) transposed[j][i] = rows[i][j];
  }
  const HermiteForm h = hermite(transposed, rows.size());
  if (h.rank != rows.size()) return false;
  for (std::size_t i = 0; i < h.rank; ++i) {
    if (h.form[i][h.pivots[i]] != 1) return false;
  }
  return true;
}

}  // namespace lfree
