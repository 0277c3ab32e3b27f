#include "loopalg/linalg.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

// Pivot size measure: largest |numerator|/|denominator| appearing in the
// coefficient vector. Small measure first keeps Bareiss growth down and makes
// the pivot choice deterministic.
Int magnitude(const Scalar& s) {
  Int m = 0;
  for (const Rat& r : s.coeffs()) {
    Int n = abs(numerator(r));
    Int d = abs(denominator(r));
    if (n > m) m = n;
    if (d > m) m = d;
  }
  return m;
}

}  // namespace

namespace {
LinearSolution linear_solve_impl(const ScalarRows& a, const ScalarVec& b, bool want_certificate);
}

LinearSolution linear_solve(const ScalarRows& a, const ScalarVec& b) {
  return linear_solve_impl(a, b, /*want_certificate=*/true);
}

namespace {
LinearSolution linear_solve_impl(const ScalarRows& a, const ScalarVec& b, bool want_certificate) {
  const int m = static_cast<int>(a.size());
  const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  if (static_cast<int>(b.size()) != m)
    throw Error(errkind::kBadArgument, "right-hand side has wrong length");

  // Augmented working copy [A | b].
  ScalarRows w(m, ScalarVec(n + 1, Scalar::zero()));
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(a[i].size()) != n)
      throw Error(errkind::kBadArgument, "ragged coefficient matrix");
    for (int j = 0; j < n; ++j) w[i][j] = a[i][j];
    w[i][n] = b[i];
  }

  LinearSolution out;
  std::vector<int> pivot_col;  // per pivot row
  Scalar prev = Scalar::one();
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    Int best;
    for (int i = row; i < m; ++i) {
      if (w[i][col].is_zero()) continue;
      Int mag = magnitude(w[i][col]);
      if (p < 0 || mag < best) {
        best = mag;
        p = i;
      }
    }
    if (p < 0) continue;
    std::swap(w[row], w[p]);
    // Bareiss step: w[i][j] = (w[i][j]*pivot - w[i][col]*w[row][j]) / prev.
    const Scalar pivot = w[row][col];
    for (int i = row + 1; i < m; ++i) {
      if (w[i][col].is_zero()) {
        for (int j = col; j <= n; ++j)
          if (!w[i][j].is_zero()) w[i][j] = w[i][j] * pivot / prev;
        continue;
      }
      const Scalar f = w[i][col];
      for (int j = col; j <= n; ++j) w[i][j] = (w[i][j] * pivot - f * w[row][j]) / prev;
    }
    prev = pivot;
    pivot_col.push_back(col);
    ++row;
  }
  out.rank = row;

  // Inconsistency: a zero row of A with a nonzero entry in b.
  for (int i = row; i < m; ++i) {
    if (!w[i][n].is_zero()) {
      out.consistent = false;
      if (want_certificate && m <= 512) {
        // Certificate y with y^T A = 0, y^T b != 0: solve the transposed system.
        ScalarRows rows_t(n + 1, ScalarVec(m, Scalar::zero()));
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < n; ++c) rows_t[c][r] = a[r][c];
          rows_t[n][r] = b[r];
        }
        ScalarVec rhs(n + 1, Scalar::zero());
        rhs[n] = Scalar::one();
        LinearSolution cert = linear_solve_impl(rows_t, rhs, /*want_certificate=*/false);
        if (cert.consistent) out.certificate = cert.particular;
      }
      return out;
    }
  }
  out.consistent = true;

  // Back substitution to reduced echelon form (over the field).
  for (int r = row - 1; r >= 0; --r) {
    const int c = pivot_col[r];
    const Scalar inv = w[r][c].inv();
    for (int j = c; j <= n; ++j) w[r][j] = w[r][j] * inv;
    for (int i = 0; i < r; ++i) {
      if (w[i][c].is_zero()) continue;
      const Scalar f = w[i][c];
      for (int j = c; j <= n; ++j) w[i][j] = w[i][j] - f * w[r][j];
    }
  }

  out.particular.assign(n, Scalar::zero());
  for (int r = 0; r < row; ++r) out.particular[pivot_col[r]] = w[r][n];

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    ScalarVec k(n, Scalar::zero());
    k[c] = Scalar::one();
    for (int r = 0; r < row; ++r) k[pivot_col[r]] = -w[r][c];
    out.kernel.push_back(std::move(k));
  }
  return out;
}
}  // namespace

// ---------------------------------------------------------------------------
// EchelonBasis

bool EchelonBasis::insert(ScalarVec v) {
  for (int c = 0; c < ncols_; ++c) {
    if (v[c].is_zero()) continue;
    auto it = rows_.find(c);
    if (it == rows_.end()) {
      const Scalar inv = v[c].inv();
      for (int j = c; j < ncols_; ++j)
        if (!v[j].is_zero()) v[j] = v[j] * inv;
      // Reduce existing rows against the new pivot.
      for (auto& [pc, r] : rows_) {
        if (r[c].is_zero()) continue;
        const Scalar f = r[c];
        for (int j = c; j < ncols_; ++j)
          if (!v[j].is_zero()) r[j] = r[j] - f * v[j];
      }
      rows_.emplace(c, std::move(v));
      return true;
    }
    const Scalar f = v[c];
    const ScalarVec& r = it->second;
    for (int j = c; j < ncols_; ++j)
      if (!r[j].is_zero()) v[j] = v[j] - f * r[j];
  }
  return false;
}

bool EchelonBasis::contains(ScalarVec v) const {
  for (int c = 0; c < ncols_; ++c) {
    if (v[c].is_zero()) continue;
    auto it = rows_.find(c);
    if (it == rows_.end()) return false;
    const Scalar f = v[c];
    const ScalarVec& r = it->second;
    for (int j = c; j < ncols_; ++j)
      if (!r[j].is_zero()) v[j] = v[j] - f * r[j];
  }
  return true;
}

ScalarRows EchelonBasis::basis() const {
  ScalarRows out;
  out.reserve(rows_.size());
  for (const auto& [c, r] : rows_) out.push_back(r);
  return out;
}

ScalarRows EchelonBasis::kernel() const {
  ScalarRows out;
  for (int c = 0; c < ncols_; ++c) {
    if (rows_.count(c)) continue;
    ScalarVec k(ncols_, Scalar::zero());
    k[c] = Scalar::one();
    for (const auto& [pc, r] : rows_) k[pc] = -r[c];
    out.push_back(std::move(k));
  }
  return out;
}

NullspaceResult sparse_nullspace(const std::vector<SparseRow>& rows, int ncols) {
  EchelonBasis ech(ncols);
  for (const SparseRow& sr : rows) {
    if (sr.empty()) continue;
    ScalarVec dense(ncols, Scalar::zero());
    bool nonzero = false;
    for (const auto& [c, val] : sr) {
      dense[c] = dense[c] + val;
      nonzero = true;
    }
    if (!nonzero) continue;
    ech.insert(std::move(dense));
  }
  return NullspaceResult{ech.kernel(), ech.rank()};
}

ScalarRows row_space(const ScalarRows& vectors) {
  if (vectors.empty()) return {};
  EchelonBasis ech(static_cast<int>(vectors[0].size()));
  for (const auto& v : vectors) ech.insert(v);
  return ech.basis();
}

int rank_of(const ScalarRows& vectors) {
  if (vectors.empty()) return 0;
  EchelonBasis ech(static_cast<int>(vectors[0].size()));
  for (const auto& v : vectors) ech.insert(v);
  return ech.rank();
}

std::optional<ScalarVec> in_span(const ScalarRows& basis, const ScalarVec& v) {
  // Solve basis^T coeffs = v.
  if (basis.empty()) {
    for (const Scalar& x : v)
      if (!x.is_zero()) return std::nullopt;
    return ScalarVec{};
  }
  const int n = static_cast<int>(v.size());
  ScalarRows a(n, ScalarVec(basis.size(), Scalar::zero()));
  for (size_t k = 0; k < basis.size(); ++k)
    for (int i = 0; i < n; ++i) a[i][k] = basis[k][i];
  LinearSolution sol = linear_solve(a, v);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

CongruenceSolution integer_affine_solve(const IntMat& c, const std::vector<Int>& moduli,
                                        const std::vector<Int>& t) {
  const int m = c.rows, n = c.cols;
  if (static_cast<int>(moduli.size()) != m || static_cast<int>(t.size()) != m)
    throw Error(errkind::kBadArgument, "moduli/rhs length mismatch");

  // Slack columns: one per row with a nonzero modulus.
  std::vector<int> slack_rows;
  for (int i = 0; i < m; ++i)
    if (moduli[i] != 0) slack_rows.push_back(i);
  const int cols = n + static_cast<int>(slack_rows.size());
  IntMat full(m, cols);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) full.at(i, j) = c.at(i, j);
  for (size_t k = 0; k < slack_rows.size(); ++k)
    full.at(slack_rows[k], n + static_cast<int>(k)) = moduli[slack_rows[k]];

  SnfResult snf = smith_normal_form(full);
  std::vector<Int> w(m, Int(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w[i] += snf.u.at(i, j) * t[j];

  CongruenceSolution out;
  const int r = std::min(m, cols);
  std::vector<Int> y(cols, Int(0));
  for (int i = 0; i < m; ++i) {
    Int d = i < r ? snf.d.at(i, i) : Int(0);
    if (d == 0) {
      if (w[i] != 0) {
        std::ostringstream os;
        os << "row combination " << i << " requires 0 = " << w[i];
        out.certificate = os.str();
        return out;
      }
    } else {
      if (w[i] % d != 0) {
        std::ostringstream os;
        os << "row combination " << i << " requires " << d << " | " << w[i];
        out.certificate = os.str();
        return out;
      }
      y[i] = w[i] / d;
    }
  }
  out.solvable = true;
  out.x.assign(n, Int(0));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < cols; ++k) out.x[j] += snf.v.at(j, k) * y[k];
  // Homogeneous lattice: x-projections of the V-columns past the rank.
  int rank = snf.rank();
  for (int k = rank; k < cols; ++k) {
    std::vector<Int> basis(n, Int(0));
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      basis[j] = snf.v.at(j, k);
      if (basis[j] != 0) nonzero = true;
    }
    if (nonzero) out.lattice.push_back(std::move(basis));
  }
  return out;
}

}  // namespace loopalg
