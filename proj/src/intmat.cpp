#include "loopalg/intmat.hpp"

#include <algorithm>

#include "loopalg/errors.hpp"

namespace loopalg {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::mul(const IntMat& rhs) const {
  IntMat out(rows, rhs.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& x = at(i, k);
      if (x == 0) continue;
      for (int j = 0; j < rhs.cols; ++j) out.at(i, j) += x * rhs.at(k, j);
    }
  return out;
}

std::vector<Int> SnfResult::diagonal() const {
  std::vector<Int> out;
  const int n = std::min(d.rows, d.cols);
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(d.at(i, i));
  return out;
}

int SnfResult::rank() const {
  int r = 0;
  for (const Int& x : diagonal())
    if (x != 0) ++r;
  return r;
}

namespace {

void swap_rows(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntMat& m, int i, int j) {
  if (i == j) return;
  for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row_i -= q * row_j
void row_axpy(IntMat& m, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
}

void col_axpy(IntMat& m, int i, int j, const Int& q) {
  if (q == 0) return;
  for (int r = 0; r < m.rows; ++r) m.at(r, i) -= q * m.at(r, j);
}

}  // namespace

SnfResult smith_normal_form(const IntMat& m) {
  SnfResult res;
  res.d = m;
  res.u = IntMat::identity(m.rows);
  res.v = IntMat::identity(m.cols);
  IntMat& d = res.d;
  const int n = std::min(m.rows, m.cols);

  for (int s = 0; s < n; ++s) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing submatrix; first position on ties.
      int pi = -1, pj = -1;
      Int best;
      for (int i = s; i < d.rows; ++i)
        for (int j = s; j < d.cols; ++j) {
          const Int& x = d.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (pi < 0 || ax < best) {
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        pi = -2;  // trailing submatrix is zero
        break;
      }
      swap_rows(d, s, pi);
      swap_rows(res.u, s, pi);
      swap_cols(d, s, pj);
      swap_cols(res.v, s, pj);

      bool clean = true;
      for (int i = s + 1; i < d.rows; ++i) {
        Int q = d.at(i, s) / d.at(s, s);
        row_axpy(d, i, s, q);
        row_axpy(res.u, i, s, q);
        if (d.at(i, s) != 0) clean = false;
      }
      for (int j = s + 1; j < d.cols; ++j) {
        Int q = d.at(s, j) / d.at(s, s);
        col_axpy(d, j, s, q);
        col_axpy(res.v, j, s, q);
        if (d.at(s, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility fix-up: pivot must divide the trailing submatrix.
      int bi = -1, bj = -1;
      for (int i = s + 1; i < d.rows && bi < 0; ++i)
        for (int j = s + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(s, s) != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0) break;
      row_axpy(d, s, bi, Int(-1));
      row_axpy(res.u, s, bi, Int(-1));
    }
    if (s < n && d.at(s, s) == 0) break;
  }

  for (int s = 0; s < n; ++s)
    if (d.at(s, s) < 0) {
      for (int c = 0; c < d.cols; ++c) d.at(s, c) = -d.at(s, c);
      for (int c = 0; c < res.u.cols; ++c) res.u.at(s, c) = -res.u.at(s, c);
    }
  return res;
}

Int determinant(const IntMat& m) {
  if (m.rows != m.cols) throw Error(errkind::kBadArgument, "determinant of non-square matrix");
  const int n = m.rows;
  if (n == 0) return 1;
  IntMat a = m;
  Int prev = 1;
  int sign = 1;
  for (int s = 0; s < n - 1; ++s) {
    if (a.at(s, s) == 0) {
      int p = -1;
      for (int i = s + 1; i < n; ++i)
        if (a.at(i, s) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      swap_rows(a, s, p);
      sign = -sign;
    }
    for (int i = s + 1; i < n; ++i)
      for (int j = s + 1; j < n; ++j) {
        a.at(i, j) = (a.at(i, j) * a.at(s, s) - a.at(i, s) * a.at(s, j)) / prev;
      }
    prev = a.at(s, s);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

IntMat unimodular_inverse(const IntMat& u) {
  // Gauss-Jordan over the rationals is overkill here: |det| = 1, so the
  // adjugate route via SNF factors works exactly. We solve U X = I by
  // reducing U to the identity with integer row operations.
  if (u.rows != u.cols) throw Error(errkind::kBadArgument, "inverse of non-square matrix");
  const int n = u.rows;
  IntMat a = u;
  IntMat inv = IntMat::identity(n);
  for (int s = 0; s < n; ++s) {
    // Euclidean elimination in column s, rows s..n-1.
    for (;;) {
      int p = -1;
      Int best;
      for (int i = s; i < n; ++i) {
        const Int& x = a.at(i, s);
        if (x == 0) continue;
        Int ax = abs(x);
        if (p < 0 || ax < best) {
          best = ax;
          p = i;
        }
      }
      if (p < 0) throw Error(errkind::kBadArgument, "matrix is singular");
      swap_rows(a, s, p);
      swap_rows(inv, s, p);
      bool clean = true;
      for (int i = s + 1; i < n; ++i) {
        Int q = a.at(i, s) / a.at(s, s);
        row_axpy(a, i, s, q);
        row_axpy(inv, i, s, q);
        if (a.at(i, s) != 0) clean = false;
      }
      if (clean) break;
    }
    if (abs(a.at(s, s)) != 1) throw Error(errkind::kBadArgument, "matrix is not unimodular");
    if (a.at(s, s) < 0) {
      for (int c = 0; c < n; ++c) a.at(s, c) = -a.at(s, c);
      for (int c = 0; c < n; ++c) inv.at(s, c) = -inv.at(s, c);
    }
  }
  for (int s = n - 1; s >= 0; --s)
    for (int i = 0; i < s; ++i) {
      Int q = a.at(i, s);
      row_axpy(a, i, s, q);
      row_axpy(inv, i, s, q);
    }
  return inv;
}

}  // namespace loopalg
