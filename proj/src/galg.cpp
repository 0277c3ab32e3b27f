#include "loopalg/galg.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

Mat zero_mat(int n) { return Mat(n, ScalarVec(n, Scalar::zero())); }

Mat identity_mat(int n) {
  Mat m = zero_mat(n);
  for (int i = 0; i < n; ++i) m[i][i] = Scalar::one();
  return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat out = zero_mat(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] = out[i][j] + a[i][k] * b[k][j];
      }
    }
  return out;
}

ScalarVec mat_apply(const Mat& m, const ScalarVec& v) {
  const int n = static_cast<int>(m.size());
  ScalarVec out(n, Scalar::zero());
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (!m[r][c].is_zero() && !v[c].is_zero()) out[r] = out[r] + m[r][c] * v[c];
  return out;
}

ScalarVec flatten(const Mat& m) {
  ScalarVec out;
  out.reserve(m.size() * m.size());
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

Mat unflatten(const ScalarVec& v, int n) {
  Mat m = zero_mat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = v[static_cast<size_t>(i) * n + j];
  return m;
}

Mat mat_scale(const Mat& m, const Scalar& s) {
  Mat out = m;
  for (auto& row : out)
    for (auto& x : row) x = x * s;
  return out;
}

Scalar trace_dot(const Mat& a, const Mat& b) {
  // tr(a b) without forming the product.
  const int n = static_cast<int>(a.size());
  Scalar s = Scalar::zero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a[i][j].is_zero() && !b[j][i].is_zero()) s = s + a[i][j] * b[j][i];
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// GradedAlgebra basics

ScalarVec GradedAlgebra::basis_vec(int i) const {
  ScalarVec v(dim(), Scalar::zero());
  v[i] = Scalar::one();
  return v;
}

ScalarVec GradedAlgebra::mul_vec(const ScalarVec& x, const ScalarVec& y) const {
  const int n = dim();
  ScalarVec out(n, Scalar::zero());
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j].is_zero()) continue;
      Scalar f = x[i] * y[j];
      for (const auto& [k, c] : at(i, j)) out[k] = out[k] + f * c;
    }
  }
  return out;
}

std::map<GroupElement, std::vector<int>> GradedAlgebra::components() const {
  std::map<GroupElement, std::vector<int>> out;
  for (int i = 0; i < dim(); ++i) out[degrees[i]].push_back(i);
  return out;
}

GradedAlgebra validate_algebra(const FiniteAbelianGroup& group, int64_t conductor,
                               std::vector<GroupElement> degrees,
                               std::vector<std::vector<std::pair<int, Scalar>>> products,
                               int max_dim) {
  const int n = static_cast<int>(degrees.size());
  if (n < 1) throw Error(errkind::kBadDocument, "algebra must have at least one basis element");
  if (n > max_dim)
    throw Error(errkind::kCapExceeded,
                "algebra dimension exceeds the configured cap (" + std::to_string(max_dim) + ")");
  if (conductor < 1) throw Error(errkind::kBadDocument, "conductor must be >= 1");
  for (const auto& d : degrees)
    if (static_cast<int>(d.c.size()) != group.rank())
      throw Error(errkind::kBadDocument, "degree has wrong coordinate length");
  if (static_cast<int>(products.size()) != n * n)
    throw Error(errkind::kBadDocument, "structure tensor has wrong size");

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& terms = products[static_cast<size_t>(i) * n + j];
      std::sort(terms.begin(), terms.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      std::vector<std::pair<int, Scalar>> cleaned;
      for (auto& [k, c] : terms) {
        if (k < 0 || k >= n) throw Error(errkind::kBadDocument, "structure constant index range");
        if (!cleaned.empty() && cleaned.back().first == k)
          throw Error(errkind::kBadDocument, "duplicate structure constant entry");
        if (c.is_zero()) continue;
        if (!(degrees[k] == group.add(degrees[i], degrees[j])))
          throw Error(errkind::kGradingViolation,
                      "product (" + std::to_string(i) + "," + std::to_string(j) +
                          ") hits basis index " + std::to_string(k) + " of wrong degree");
        cleaned.emplace_back(k, std::move(c));
      }
      terms = std::move(cleaned);
    }
  return GradedAlgebra{group, conductor, std::move(degrees), std::move(products)};
}

// ---------------------------------------------------------------------------
// Twists

GradedAlgebra twist(const GradedAlgebra& a, const SymCocycle& tau) {
  if (!(tau.group == a.group))
    throw Error(errkind::kGroupMismatch, "cocycle group differs from the algebra group");
  GradedAlgebra out = a;
  int64_t cond = a.conductor;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& terms = out.products[static_cast<size_t>(i) * n + j];
      if (terms.empty()) continue;
      Scalar f = tau.scalar_at(a.degrees[i], a.degrees[j]);
      cond = std::lcm(cond, f.conductor());
      for (auto& [k, c] : terms) c = c * f;
    }
  out.conductor = cond;
  return out;
}

GradedAlgebra twisted_group_algebra(const FiniteAbelianGroup& g,
                                    const std::vector<std::vector<Scalar>>& t) {
  const int64_t n = g.order();
  if (static_cast<int64_t>(t.size()) != n)
    throw Error(errkind::kBadDocument, "cocycle table has wrong number of rows");
  for (const auto& row : t)
    if (static_cast<int64_t>(row.size()) != n)
      throw Error(errkind::kBadDocument, "cocycle table has wrong number of columns");
  auto elems = g.elements();
  int64_t cond = 1;
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b) {
      if (t[a][b].is_zero())
        throw Error(errkind::kBadDocument, "cocycle values must be nonzero field elements");
      cond = std::lcm(cond, t[a][b].conductor());
      int64_t ab = g.index_of(g.add(elems[a], elems[b]));
      for (int64_t c = 0; c < n; ++c) {
        int64_t bc = g.index_of(g.add(elems[b], elems[c]));
        if (!(t[a][b] * t[ab][c] == t[a][bc] * t[b][c]))
          throw Error(errkind::kCocycleIdentityViolation,
                      "witness triple (" + g.show(elems[a]) + ", " + g.show(elems[b]) + ", " +
                          g.show(elems[c]) + ")");
      }
    }

  std::vector<GroupElement> degrees = elems;
  std::vector<std::vector<std::pair<int, Scalar>>> products(n * n);
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b) {
      int64_t ab = g.index_of(g.add(elems[a], elems[b]));
      products[a * n + b] = {{static_cast<int>(ab), t[a][b]}};
    }
  return validate_algebra(g, cond, std::move(degrees), std::move(products),
                          std::max<int>(GradedAlgebra::kDefaultMaxDim, static_cast<int>(n)));
}

GradedAlgebra group_algebra(const FiniteAbelianGroup& g) {
  std::vector<std::vector<Scalar>> t(g.order(), std::vector<Scalar>(g.order(), Scalar::one()));
  return twisted_group_algebra(g, t);
}

bool is_associative(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ScalarVec ij = a.mul_vec(a.basis_vec(i), a.basis_vec(j));
      for (int k = 0; k < n; ++k) {
        ScalarVec lhs = a.mul_vec(ij, a.basis_vec(k));
        ScalarVec rhs = a.mul_vec(a.basis_vec(i), a.mul_vec(a.basis_vec(j), a.basis_vec(k)));
        if (lhs != rhs) return false;
      }
    }
  return true;
}

bool is_commutative(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (a.mul_vec(a.basis_vec(i), a.basis_vec(j)) != a.mul_vec(a.basis_vec(j), a.basis_vec(i)))
        return false;
  return true;
}

bool is_anticommutative(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ScalarVec ij = a.mul_vec(a.basis_vec(i), a.basis_vec(j));
      ScalarVec ji = a.mul_vec(a.basis_vec(j), a.basis_vec(i));
      for (int k = 0; k < n; ++k)
        if (!(ij[k] + ji[k]).is_zero()) return false;
    }
  return true;
}

bool satisfies_jacobi(const GradedAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        ScalarVec t1 = a.mul_vec(a.mul_vec(a.basis_vec(i), a.basis_vec(j)), a.basis_vec(k));
        ScalarVec t2 = a.mul_vec(a.mul_vec(a.basis_vec(j), a.basis_vec(k)), a.basis_vec(i));
        ScalarVec t3 = a.mul_vec(a.mul_vec(a.basis_vec(k), a.basis_vec(i)), a.basis_vec(j));
        for (int x = 0; x < n; ++x)
          if (!(t1[x] + t2[x] + t3[x]).is_zero()) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Centroid

CentroidDescription centroid(const GradedAlgebra& a) {
  const int n = a.dim();
  // Unknowns X[l][k], flattened l*n + k; conditions c(xy) = c(x)y and
  // c(xy) = x c(y) on all basis pairs.
  std::vector<SparseRow> rows;
  rows.reserve(static_cast<size_t>(2) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& terms = a.at(i, j);
      for (int l = 0; l < n; ++l) {
        std::map<int, Scalar> r1, r2;
        auto add = [](std::map<int, Scalar>& m, int idx, const Scalar& v) {
          auto [it, fresh] = m.emplace(idx, v);
          if (!fresh) it->second = it->second + v;
        };
        for (const auto& [k, c] : terms) {
          add(r1, l * n + k, c);
          add(r2, l * n + k, c);
        }
        for (int m = 0; m < n; ++m) {
          for (const auto& [k, c] : a.at(m, j))
            if (k == l) add(r1, m * n + i, -c);
          for (const auto& [k, c] : a.at(i, m))
            if (k == l) add(r2, m * n + j, -c);
        }
        auto push = [&](std::map<int, Scalar>& m) {
          SparseRow row;
          for (auto& [idx, v] : m)
            if (!v.is_zero()) row.emplace_back(idx, v);
          if (!row.empty()) rows.push_back(std::move(row));
        };
        push(r1);
        push(r2);
      }
    }

  NullspaceResult ns = sparse_nullspace(rows, n * n);
  CentroidDescription out;
  for (const auto& v : ns.kernel) out.basis.push_back(unflatten(v, n));

  // Homogeneous parts inside the centroid.
  std::set<GroupElement> cand_degrees;
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k) cand_degrees.insert(a.group.sub(a.degrees[l], a.degrees[k]));
  cand_degrees.insert(a.group.zero());

  const int dims = static_cast<int>(out.basis.size());
  int total_homog = 0;
  for (const auto& d : cand_degrees) {
    if (dims == 0) break;
    // alpha with sum_b alpha_b B_b[l][k] = 0 whenever deg_l != d + deg_k.
    ScalarRows constraint;
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        if (a.degrees[l] == a.group.add(d, a.degrees[k])) continue;
        ScalarVec row(dims, Scalar::zero());
        bool nonzero = false;
        for (int b = 0; b < dims; ++b) {
          row[b] = out.basis[b][l][k];
          if (!row[b].is_zero()) nonzero = true;
        }
        if (nonzero) constraint.push_back(std::move(row));
      }
    LinearSolution sol = linear_solve(constraint, ScalarVec(constraint.size(), Scalar::zero()));
    std::vector<Mat> part;
    std::vector<ScalarVec> alphas = sol.kernel;
    if (constraint.empty()) {
      // No constraints: the whole centroid is d-homogeneous.
      alphas.clear();
      for (int b = 0; b < dims; ++b) {
        ScalarVec e(dims, Scalar::zero());
        e[b] = Scalar::one();
        alphas.push_back(std::move(e));
      }
    }
    for (const auto& alpha : alphas) {
      Mat m = zero_mat(n);
      for (int b = 0; b < dims; ++b) {
        if (alpha[b].is_zero()) continue;
        for (int l = 0; l < n; ++l)
          for (int k = 0; k < n; ++k)
            if (!out.basis[b][l][k].is_zero()) m[l][k] = m[l][k] + alpha[b] * out.basis[b][l][k];
      }
      part.push_back(std::move(m));
    }
    if (!part.empty()) {
      total_homog += static_cast<int>(part.size());
      if (d == a.group.zero()) out.identity_dim = static_cast<int>(part.size());
      out.support_set.push_back(d);
      out.homogeneous.emplace_back(d, std::move(part));
    }
  }
  out.graded_parts_fill = (total_homog == dims);

  bool closed = !out.support_set.empty();
  std::set<GroupElement> sup(out.support_set.begin(), out.support_set.end());
  for (const auto& x : out.support_set) {
    if (!sup.count(a.group.neg(x))) closed = false;
    for (const auto& y : out.support_set)
      if (!sup.count(a.group.add(x, y))) closed = false;
  }
  if (closed) out.support = Subgroup::generated(a.group, out.support_set);
  return out;
}

bool is_graded_central(const GradedAlgebra& a) { return centroid(a).identity_dim == 1; }

CentroidTGA centroid_as_twisted_group_algebra(const GradedAlgebra& a) {
  CentroidDescription full = centroid(a);
  if (full.identity_dim != 1)
    throw Error(errkind::kNotGradedCentral,
                "C(A)_e has dimension " + std::to_string(full.identity_dim));
  if (!full.graded_parts_fill)
    throw Error(errkind::kCentroidNotGradedField,
                "homogeneous parts do not span the whole centroid");
  if (!full.support)
    throw Error(errkind::kCentroidNotGradedField, "centroid support is not a subgroup");
  for (const auto& [d, part] : full.homogeneous)
    if (part.size() != 1)
      throw Error(errkind::kCentroidNotGradedField,
                  "C(A)_" + a.group.show(d) + " has dimension " + std::to_string(part.size()));

  const Subgroup& h = *full.support;
  if (h.elements().size() != full.support_set.size())
    throw Error(errkind::kCentroidNotGradedField, "centroid support is not closed");
  const auto& habs = h.as_group();
  const int n = a.dim();

  // Normalized basis: c_e = id, c_h = leading-one scaling of the 1-dim part.
  std::vector<Mat> basis(habs.order());
  for (const auto& [d, part] : full.homogeneous) {
    Mat m = part[0];
    if (d == a.group.zero()) {
      m = identity_mat(n);
    } else {
      Scalar lead = Scalar::zero();
      for (int r = 0; r < n && lead.is_zero(); ++r)
        for (int c = 0; c < n; ++c)
          if (!m[r][c].is_zero()) {
            lead = m[r][c];
            break;
          }
      if (lead.is_zero())
        throw Error(errkind::kCentroidNotGradedField, "zero homogeneous centroid component");
      m = mat_scale(m, lead.inv());
    }
    basis[habs.index_of(h.coords_of(d))] = std::move(m);
  }

  // tau'(h1,h2) from c_{h1} c_{h2} = tau' c_{h1 h2}.
  const int64_t hn = habs.order();
  std::vector<Scalar> values(hn * hn, Scalar::one());
  auto helems = habs.elements();
  for (int64_t i = 0; i < hn; ++i)
    for (int64_t j = 0; j < hn; ++j) {
      Mat prod = mat_mul(basis[i], basis[j]);
      const Mat& target = basis[habs.index_of(habs.add(helems[i], helems[j]))];
      Scalar lambda = Scalar::zero();
      for (int r = 0; r < n && lambda.is_zero(); ++r)
        for (int c = 0; c < n; ++c)
          if (!target[r][c].is_zero()) {
            lambda = prod[r][c] / target[r][c];
            break;
          }
      if (lambda.is_zero() || !(prod == mat_scale(target, lambda)))
        throw Error(errkind::kCentroidNotGradedField,
                    "homogeneous centroid products are not invertible scalings");
      values[i * hn + j] = lambda;
    }

  ValueGroup vg = value_group_for(values);
  CoeffGroup coeffs = CoeffGroup::values(vg);
  std::vector<CoeffElem> table;
  table.reserve(values.size());
  for (const auto& v : values)
    table.push_back(coeffs.from_value(factor_into_value_group(v, vg).element));
  SymCocycle tau_prime = [&] {
    try {
      return validate_cocycle(habs, coeffs, std::move(table));
    } catch (const Error& e) {
      throw Error(errkind::kCentroidNotGradedField,
                  std::string("centroid cocycle failed validation: ") + e.what());
    }
  }();
  return CentroidTGA{h, std::move(tau_prime), std::move(basis), std::move(full)};
}

Mat centroid_twist_map(const Mat& c, const GroupElement& h, const SymCocycle& tau,
                       const GradedAlgebra& a) {
  const int n = a.dim();
  Mat out = c;
  for (int j = 0; j < n; ++j) {
    Scalar f = tau.scalar_at(h, a.degrees[j]);
    for (int r = 0; r < n; ++r)
      if (!out[r][j].is_zero()) out[r][j] = out[r][j] * f;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Graded ideals and simplicity

ScalarRows graded_ideal_closure(const GradedAlgebra& a, const ScalarRows& seeds) {
  const int n = a.dim();
  EchelonBasis span(n);
  std::vector<ScalarVec> queue;
  auto push = [&](ScalarVec v) {
    ScalarVec copy = v;
    if (span.insert(std::move(copy))) queue.push_back(std::move(v));
  };
  for (const auto& s : seeds) push(s);
  auto comps = a.components();
  while (!queue.empty()) {
    ScalarVec v = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < n; ++i) {
      push(a.mul_vec(a.basis_vec(i), v));
      push(a.mul_vec(v, a.basis_vec(i)));
    }
    for (const auto& [d, idxs] : comps) {
      ScalarVec proj(n, Scalar::zero());
      bool nonzero = false;
      for (int i : idxs) {
        proj[i] = v[i];
        if (!v[i].is_zero()) nonzero = true;
      }
      if (nonzero) push(std::move(proj));
    }
  }
  return span.basis();
}

namespace {

// Throws unless w is a proper nonzero graded ideal.
void verify_ideal_witness(const GradedAlgebra& a, const ScalarRows& w) {
  const int n = a.dim();
  EchelonBasis span(n);
  for (const auto& v : w) span.insert(v);
  if (span.rank() == 0 || span.rank() >= n)
    throw Error(errkind::kCertificateFailure, "witness is zero or not proper");
  auto comps = a.components();
  for (const auto& v : span.basis()) {
    for (int i = 0; i < n; ++i) {
      if (!span.contains(a.mul_vec(a.basis_vec(i), v)))
        throw Error(errkind::kCertificateFailure, "witness not closed under left multiplication");
      if (!span.contains(a.mul_vec(v, a.basis_vec(i))))
        throw Error(errkind::kCertificateFailure, "witness not closed under right multiplication");
    }
    for (const auto& [d, idxs] : comps) {
      ScalarVec proj(n, Scalar::zero());
      for (int i : idxs) proj[i] = v[i];
      if (!span.contains(std::move(proj)))
        throw Error(errkind::kCertificateFailure, "witness is not graded");
    }
  }
}

SimplicityVerdict not_simple(const GradedAlgebra& a, ScalarRows witness, std::string cert) {
  if (!witness.empty()) verify_ideal_witness(a, witness);
  SimplicityVerdict v;
  v.kind = SimplicityVerdict::Kind::not_simple;
  v.witness = std::move(witness);
  v.certificate = std::move(cert);
  return v;
}

SimplicityVerdict simple_verdict(std::string cert) {
  SimplicityVerdict v;
  v.kind = SimplicityVerdict::Kind::simple;
  v.certificate = std::move(cert);
  return v;
}

// Minimal polynomial of a matrix, monic, constant term first.
std::vector<Scalar> minimal_polynomial(const Mat& x) {
  const int n = static_cast<int>(x.size());
  ScalarRows powers;
  Mat p = identity_mat(n);
  for (int d = 0;; ++d) {
    ScalarVec flat = flatten(p);
    auto coords = in_span(powers, flat);
    if (coords) {
      std::vector<Scalar> poly(d + 1, Scalar::zero());
      for (int i = 0; i < d; ++i) poly[i] = -(*coords)[i];
      poly[d] = Scalar::one();
      return poly;
    }
    powers.push_back(std::move(flat));
    p = mat_mul(p, x);
  }
}

std::vector<Scalar> poly_derivative(const std::vector<Scalar>& p) {
  std::vector<Scalar> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Scalar::integer(int64_t(i)));
  while (!d.empty() && d.back().is_zero()) d.pop_back();
  return d;
}

std::vector<Scalar> poly_mod(std::vector<Scalar> a, const std::vector<Scalar>& b) {
  while (!b.empty() && a.size() >= b.size()) {
    if (a.back().is_zero()) {
      a.pop_back();
      continue;
    }
    Scalar f = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] = a[off + i] - f * b[i];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return a;
}

std::vector<Scalar> poly_gcd(std::vector<Scalar> a, std::vector<Scalar> b) {
  while (!b.empty()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Scalar lead = a.back().inv();
    for (auto& c : a) c = c * lead;
  }
  return a;
}

std::vector<Scalar> poly_divide_exact(std::vector<Scalar> a, const std::vector<Scalar>& b) {
  std::vector<Scalar> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Scalar::zero());
  while (!a.empty() && a.size() >= b.size()) {
    if (a.back().is_zero()) {
      a.pop_back();
      continue;
    }
    Scalar f = a.back() / b.back();
    q[a.size() - b.size()] = f;
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] = a[off + i] - f * b[i];
    while (!a.empty() && a.back().is_zero()) a.pop_back();
  }
  return q;
}

Mat eval_poly(const std::vector<Scalar>& p, const Mat& x) {
  const int n = static_cast<int>(x.size());
  Mat acc = zero_mat(n);
  for (size_t i = p.size(); i-- > 0;) {
    acc = mat_mul(acc, x);
    if (!p[i].is_zero())
      for (int d = 0; d < n; ++d) acc[d][d] = acc[d][d] + p[i];
  }
  return acc;
}

ScalarRows mat_kernel(const Mat& m) {
  const int n = static_cast<int>(m.size());
  ScalarRows rows;
  rows.reserve(n);
  for (int i = 0; i < n; ++i) rows.push_back(m[i]);
  LinearSolution sol = linear_solve(rows, ScalarVec(n, Scalar::zero()));
  return sol.kernel;
}

std::vector<Rat> rational_roots(const std::vector<Scalar>& p) {
  std::vector<Rat> out;
  for (const auto& c : p)
    if (!c.is_rational()) return out;
  Int den = 1;
  for (const auto& c : p) den = den / gcd(den, Int(denominator(c.rat()))) * denominator(c.rat());
  std::vector<Int> ip;
  for (const auto& c : p) ip.push_back(Int(numerator(c.rat())) * (den / denominator(c.rat())));
  while (!ip.empty() && ip.back() == 0) ip.pop_back();
  if (ip.size() <= 1) return out;
  auto eval = [&](const Rat& r) {
    Rat acc = 0;
    for (size_t i = ip.size(); i-- > 0;) acc = acc * r + Rat(ip[i]);
    return acc;
  };
  size_t low = 0;
  while (low < ip.size() && ip[low] == 0) ++low;
  if (low > 0) out.push_back(Rat(0));
  Int a0 = abs(ip[low]), lead = abs(ip.back());
  if (a0 > Int(1000000000000LL)) return out;  // divisor enumeration stays desk-scale
  std::vector<Int> ps, qs;
  for (Int d = 1; d * d <= a0; ++d)
    if (a0 % d == 0) {
      ps.push_back(d);
      ps.push_back(a0 / d);
    }
  for (Int d = 1; d * d <= lead; ++d)
    if (lead % d == 0) {
      qs.push_back(d);
      qs.push_back(lead / d);
    }
  std::set<Rat> seen;
  for (const Int& pp : ps)
    for (const Int& qq : qs)
      for (int sgn : {1, -1}) {
        Rat r(sgn * pp, qq);
        if (!seen.insert(r).second) continue;
        if (eval(r) == 0) out.push_back(r);
      }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Irreducibility certificate over Q: squarefree and irreducible mod one of a
// fixed list of small primes.
bool certified_irreducible(const std::vector<Scalar>& p) {
  for (const auto& c : p)
    if (!c.is_rational()) return false;
  Int den = 1;
  for (const auto& c : p) den = den / gcd(den, Int(denominator(c.rat()))) * denominator(c.rat());
  std::vector<Int> ip;
  for (const auto& c : p) ip.push_back(Int(numerator(c.rat())) * (den / denominator(c.rat())));
  const int deg = static_cast<int>(ip.size()) - 1;
  if (deg < 1) return false;
  if (deg == 1) return true;

  auto trim = [](std::vector<int64_t>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  auto inv_mod = [](int64_t a, int64_t r) {
    int64_t b = r, x0 = 1, x1 = 0;
    a %= r;
    if (a < 0) a += r;
    while (b) {
      int64_t q = a / b;
      a -= q * b;
      std::swap(a, b);
      x0 -= q * x1;
      std::swap(x0, x1);
    }
    return ((a == 1 ? x0 : 0) % r + r) % r;
  };
  auto polygcdmod = [&](std::vector<int64_t> x, std::vector<int64_t> y, int64_t r) {
    trim(x);
    trim(y);
    while (!y.empty()) {
      int64_t inv = inv_mod(y.back(), r);
      while (x.size() >= y.size() && !x.empty()) {
        int64_t f = x.back() % r * inv % r;
        size_t off = x.size() - y.size();
        for (size_t i = 0; i < y.size(); ++i)
          x[off + i] = ((x[off + i] - f * y[i]) % r + r) % r;
        trim(x);
      }
      std::swap(x, y);
    }
    return x;
  };
  auto polymulmod = [&](const std::vector<int64_t>& x, const std::vector<int64_t>& y,
                        const std::vector<int64_t>& m, int64_t r) {
    std::vector<int64_t> prod(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % r;
    }
    const int dm = static_cast<int>(m.size()) - 1;
    int64_t lead_inv = inv_mod(m.back(), r);
    for (int i = static_cast<int>(prod.size()) - 1; i >= dm; --i) {
      int64_t f = prod[i] % r * lead_inv % r;
      if (f == 0) continue;
      for (int j = 0; j <= dm; ++j)
        prod[i - dm + j] = ((prod[i - dm + j] - f * m[j]) % r + r) % r;
    }
    prod.resize(dm);
    return prod;
  };

  for (int64_t r : {3, 5, 7, 11, 13, 17, 19, 23}) {
    if (ip.back() % r == 0) continue;
    std::vector<int64_t> m(ip.size());
    for (size_t i = 0; i < ip.size(); ++i) {
      Int v = ip[i] % r;
      if (v < 0) v += r;
      m[i] = v.convert_to<int64_t>();
    }
    {
      std::vector<int64_t> dm(m.size() - 1);
      for (size_t i = 1; i < m.size(); ++i) dm[i - 1] = (int64_t(i) % r) * m[i] % r;
      if (polygcdmod(m, dm, r).size() != 1) continue;  // not squarefree mod r
    }
    bool reducible = false;
    std::vector<int64_t> xp{0, 1};
    for (int d = 1; d <= deg / 2 && !reducible; ++d) {
      std::vector<int64_t> acc{1};
      std::vector<int64_t> base = xp;
      int64_t e = r;
      while (e > 0) {
        if (e & 1) acc = polymulmod(acc, base, m, r);
        base = polymulmod(base, base, m, r);
        e >>= 1;
      }
      xp = acc;
      std::vector<int64_t> diff = xp;
      if (diff.size() < 2) diff.resize(2, 0);
      diff[1] = ((diff[1] - 1) % r + r) % r;
      if (polygcdmod(m, diff, r).size() != 1) reducible = true;
    }
    if (!reducible) return true;
  }
  return false;
}

}  // namespace

SimplicityVerdict graded_simplicity(const GradedAlgebra& a, uint64_t seed) {
  const int n = a.dim();

  // Stage 0: A^2 = A.
  {
    ScalarRows prods;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto& terms = a.at(i, j);
        if (terms.empty()) continue;
        ScalarVec v(n, Scalar::zero());
        for (const auto& [k, c] : terms) v[k] = c;
        prods.push_back(std::move(v));
      }
    ScalarRows a2 = row_space(prods);
    if (static_cast<int>(a2.size()) < n) {
      if (!a2.empty()) return not_simple(a, a2, "A^2 is a proper nonzero graded ideal");
      if (n >= 2)
        return not_simple(a, {a.basis_vec(0)},
                          "A^2 = 0, so every homogeneous line is a proper ideal");
      SimplicityVerdict v;
      v.kind = SimplicityVerdict::Kind::not_simple;
      v.certificate = "A^2 = 0 != A";
      return v;
    }
  }

  // Stage 1: graded-division fast path.
  {
    bool division = true;
    for (const auto& [d, idxs] : a.components())
      if (idxs.size() > 1) division = false;
    for (int i = 0; i < n && division; ++i)
      for (int j = 0; j < n && division; ++j)
        if (a.at(i, j).size() != 1) division = false;
    if (division)
      return simple_verdict(
          "graded division algebra: one-dimensional components, all products nonzero");
  }

  // Stage 2: closure witness search over homogeneous candidates.
  {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-2, 2);
    auto comps = a.components();
    std::vector<ScalarVec> candidates;
    for (const auto& [d, idxs] : comps) {
      for (int i : idxs) candidates.push_back(a.basis_vec(i));
      for (size_t x = 0; x < idxs.size(); ++x)
        for (size_t y = x + 1; y < idxs.size(); ++y) {
          ScalarVec sum(n, Scalar::zero()), diff(n, Scalar::zero());
          sum[idxs[x]] = Scalar::one();
          sum[idxs[y]] = Scalar::one();
          diff[idxs[x]] = Scalar::one();
          diff[idxs[y]] = Scalar::integer(-1);
          candidates.push_back(std::move(sum));
          candidates.push_back(std::move(diff));
        }
      if (idxs.size() > 1)
        for (int t = 0; t < 8; ++t) {
          ScalarVec v(n, Scalar::zero());
          bool nonzero = false;
          for (int i : idxs) {
            int c = coeff(rng);
            if (c != 0) nonzero = true;
            v[i] = Scalar::integer(c);
          }
          if (nonzero) candidates.push_back(std::move(v));
        }
    }
    for (const auto& c : candidates) {
      ScalarRows cl = graded_ideal_closure(a, {c});
      if (!cl.empty() && static_cast<int>(cl.size()) < n)
        return not_simple(a, cl, "closure of a homogeneous element is a proper ideal");
    }
  }

  // Stage 3: enveloping algebra (multiplications and projections) and its
  // radical by the characteristic-zero trace criterion.
  std::vector<Mat> gens;
  for (int i = 0; i < n; ++i) {
    Mat l = zero_mat(n), r = zero_mat(n);
    for (int j = 0; j < n; ++j) {
      for (const auto& [k, c] : a.at(i, j)) l[k][j] = l[k][j] + c;
      for (const auto& [k, c] : a.at(j, i)) r[k][j] = r[k][j] + c;
    }
    gens.push_back(std::move(l));
    gens.push_back(std::move(r));
  }
  for (const auto& [d, idxs] : a.components()) {
    Mat p = zero_mat(n);
    for (int i : idxs) p[i][i] = Scalar::one();
    gens.push_back(std::move(p));
  }

  std::vector<Mat> env;
  {
    EchelonBasis span(n * n);
    std::vector<Mat> queue;
    for (const auto& g : gens)
      if (span.insert(flatten(g))) {
        env.push_back(g);
        queue.push_back(g);
      }
    while (!queue.empty()) {
      Mat m = std::move(queue.back());
      queue.pop_back();
      for (const auto& g : gens) {
        Mat prod = mat_mul(g, m);
        if (span.insert(flatten(prod))) {
          env.push_back(prod);
          queue.push_back(std::move(prod));
        }
      }
    }
  }
  {
    const int m = static_cast<int>(env.size());
    ScalarRows gram(m, ScalarVec(m, Scalar::zero()));
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        gram[i][j] = trace_dot(env[i], env[j]);
        gram[j][i] = gram[i][j];
      }
    LinearSolution rad = linear_solve(gram, ScalarVec(m, Scalar::zero()));
    if (!rad.kernel.empty()) {
      ScalarRows vecs;
      for (const auto& alpha : rad.kernel) {
        Mat r = zero_mat(n);
        for (int b = 0; b < m; ++b)
          if (!alpha[b].is_zero())
            for (int x = 0; x < n; ++x)
              for (int y = 0; y < n; ++y)
                if (!env[b][x][y].is_zero()) r[x][y] = r[x][y] + alpha[b] * env[b][x][y];
        for (int k = 0; k < n; ++k) {
          ScalarVec col(n, Scalar::zero());
          for (int x = 0; x < n; ++x) col[x] = r[x][k];
          vecs.push_back(std::move(col));
        }
      }
      return not_simple(a, row_space(vecs), "the enveloping algebra has a nonzero radical");
    }
  }

  // Stage 4: semisimple enveloping algebra; decide via the commutant.
  for (int i = 0; i < n; ++i) {
    ScalarRows orbit;
    for (const auto& m : env) orbit.push_back(mat_apply(m, a.basis_vec(i)));
    ScalarRows span = row_space(orbit);
    if (static_cast<int>(span.size()) < n)
      return not_simple(a, span, "a basis vector generates a proper submodule");
  }

  std::vector<SparseRow> rows;
  for (const auto& g : gens)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::map<int, Scalar> acc;
        auto add = [&](int idx, const Scalar& v) {
          auto [it, fresh] = acc.emplace(idx, v);
          if (!fresh) it->second = it->second + v;
        };
        for (int k = 0; k < n; ++k) {
          if (!g[k][c].is_zero()) add(r * n + k, g[k][c]);
          if (!g[r][k].is_zero()) add(k * n + c, -g[r][k]);
        }
        SparseRow row;
        for (auto& [idx, v] : acc)
          if (!v.is_zero()) row.emplace_back(idx, v);
        if (!row.empty()) rows.push_back(std::move(row));
      }
  NullspaceResult dres = sparse_nullspace(rows, n * n);
  std::vector<Mat> dbasis;
  for (const auto& v : dres.kernel) dbasis.push_back(unflatten(v, n));
  const int dim_d = static_cast<int>(dbasis.size());

  if (dim_d == 1)
    return simple_verdict("semisimple enveloping algebra with scalar commutant acts irreducibly");

  bool d_commutative = true;
  for (int i = 0; i < dim_d && d_commutative; ++i)
    for (int j = i + 1; j < dim_d && d_commutative; ++j)
      if (!(mat_mul(dbasis[i], dbasis[j]) == mat_mul(dbasis[j], dbasis[i])))
        d_commutative = false;

  std::vector<Mat> candidates = dbasis;
  for (int i = 0; i < dim_d; ++i)
    for (int j = i + 1; j < dim_d; ++j) {
      Mat s = dbasis[i];
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) s[r][c] = s[r][c] + dbasis[j][r][c];
      candidates.push_back(std::move(s));
    }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int t = 0; t < 8; ++t) {
    Mat s = zero_mat(n);
    for (int b = 0; b < dim_d; ++b) {
      int c = coeff(rng);
      if (c == 0) continue;
      for (int r = 0; r < n; ++r)
        for (int cc = 0; cc < n; ++cc)
          if (!dbasis[b][r][cc].is_zero())
            s[r][cc] = s[r][cc] + Scalar::integer(c) * dbasis[b][r][cc];
    }
    candidates.push_back(std::move(s));
  }

  for (const auto& x : candidates) {
    std::vector<Scalar> p = minimal_polynomial(x);
    const int deg = static_cast<int>(p.size()) - 1;
    {std::ostringstream dbg; dbg << "DBGcand deg=" << deg << " p=";
     for (auto& c : p) dbg << c.str() << ",";
     dbg << " roots="; for (auto& r : rational_roots(p)) dbg << r << ";";
     dbg << " mat=[";
     for (auto& row : x) { for (auto& e : row) dbg << e.str() << " "; dbg << "|"; }
     dbg << "]";
     fprintf(stderr, "%s\n", dbg.str().c_str());}
    if (deg < 1) continue;
    for (const Rat& r : rational_roots(p)) {
      Mat shifted = x;
      for (int d = 0; d < n; ++d) shifted[d][d] = shifted[d][d] - Scalar::rational(r);
      ScalarRows k = mat_kernel(shifted);
      if (!k.empty() && static_cast<int>(k.size()) < n)
        return not_simple(a, row_space(k), "a commutant eigenspace is a proper graded submodule");
    }
    auto g = poly_gcd(p, poly_derivative(p));
    if (g.size() > 1) {
      auto sf = poly_divide_exact(p, g);
      ScalarRows k = mat_kernel(eval_poly(sf, x));
      if (!k.empty() && static_cast<int>(k.size()) < n)
        return not_simple(a, row_space(k), "a square-free kernel is a proper graded submodule");
    }
    if (d_commutative && deg == dim_d && certified_irreducible(p))
      return simple_verdict(
          "the commutant is a field (certified irreducible minimal polynomial)");
  }

  SimplicityVerdict v;
  v.kind = SimplicityVerdict::Kind::unknown;
  std::ostringstream os;
  os << "semisimple enveloping algebra of dimension " << env.size() << ", commutant dimension "
     << dim_d << (d_commutative ? " (commutative)" : " (noncommutative)")
     << "; no idempotent discovered and no field certificate";
  v.diagnostics = os.str();
  return v;
}

// ---------------------------------------------------------------------------
// Morphisms

GradedMorphism make_graded_morphism(const GradedAlgebra& source, const GradedAlgebra& target,
                                    Mat matrix) {
  const int n = source.dim();
  if (target.dim() != n || !(source.group == target.group))
    throw Error(errkind::kBadArgument, "morphism endpoints have mismatched shapes");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (!matrix[i][j].is_zero() && !(target.degrees[i] == source.degrees[j]))
        throw Error(errkind::kCertificateFailure, "morphism does not preserve degrees");
  for (int i = 0; i < n; ++i) {
    ScalarVec phi_i = mat_apply(matrix, source.basis_vec(i));
    for (int j = 0; j < n; ++j) {
      ScalarVec lhs = mat_apply(matrix, source.mul_vec(source.basis_vec(i), source.basis_vec(j)));
      ScalarVec rhs = target.mul_vec(phi_i, mat_apply(matrix, source.basis_vec(j)));
      if (lhs != rhs)
        throw Error(errkind::kCertificateFailure,
                    "morphism is not multiplicative at pair (" + std::to_string(i) + "," +
                        std::to_string(j) + ")");
    }
  }
  ScalarRows rows;
  for (int i = 0; i < n; ++i) rows.push_back(matrix[i]);
  bool invertible = rank_of(rows) == n;
  return GradedMorphism{std::move(matrix), invertible};
}

DiagonalIsoResult diagonal_iso_check(const GradedAlgebra& a, const GradedAlgebra& b,
                                     const OneCochain& gamma) {
  const int n = a.dim();
  if (b.dim() != n || !(a.group == b.group) || !(a.degrees == b.degrees))
    throw Error(errkind::kBadArgument, "diagonal check needs matched bases");
  if (!(gamma.group == a.group))
    throw Error(errkind::kGroupMismatch, "cochain group differs from the algebra group");
  DiagonalIsoResult out;
  std::vector<Scalar> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = gamma.coeffs.embed(gamma.at(a.degrees[i]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& ta = a.at(i, j);
      const auto& tb = b.at(i, j);
      if (ta.size() != tb.size()) {
        out.fail_i = i;
        out.fail_j = j;
        return out;
      }
      Scalar f = lam[i] * lam[j];
      Scalar g = gamma.coeffs.embed(gamma.at(a.group.add(a.degrees[i], a.degrees[j])));
      for (size_t t = 0; t < ta.size(); ++t) {
        if (ta[t].first != tb[t].first || !(g * ta[t].second == f * tb[t].second)) {
          out.fail_i = i;
          out.fail_j = j;
          return out;
        }
      }
    }
  Mat m = zero_mat(n);
  for (int i = 0; i < n; ++i) m[i][i] = lam[i];
  out.ok = true;
  out.iso = make_graded_morphism(a, b, std::move(m));
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism search

namespace {

bool graded_division_flag(const GradedAlgebra& a) {
  for (const auto& [d, idxs] : a.components())
    if (idxs.size() > 1) return false;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      if (a.at(i, j).size() != 1) return false;
  return true;
}

int dim_a2(const GradedAlgebra& a) {
  ScalarRows prods;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      const auto& terms = a.at(i, j);
      if (terms.empty()) continue;
      ScalarVec v(a.dim(), Scalar::zero());
      for (const auto& [k, c] : terms) v[k] = c;
      prods.push_back(std::move(v));
    }
  return rank_of(prods);
}

}  // namespace

IsoSearchResult graded_iso_search(const GradedAlgebra& a, const GradedAlgebra& b, int64_t budget) {
  IsoSearchResult out;
  auto non_iso = [&](std::string why) {
    out.kind = IsoSearchResult::Kind::non_iso;
    out.certificate = std::move(why);
    return out;
  };
  if (!(a.group == b.group)) return non_iso("different grading groups");
  if (a.dim() != b.dim()) return non_iso("different dimensions");

  auto ca = a.components(), cb = b.components();
  if (ca.size() != cb.size()) return non_iso("different supports");
  for (const auto& [d, idxs] : ca) {
    auto it = cb.find(d);
    if (it == cb.end() || it->second.size() != idxs.size())
      return non_iso("per-degree dimension mismatch at " + a.group.show(d));
  }
  if (dim_a2(a) != dim_a2(b)) return non_iso("dim A^2 mismatch");
  if (graded_division_flag(a) != graded_division_flag(b))
    return non_iso("graded-division mismatch");

  CentroidDescription da = centroid(a), db = centroid(b);
  if (da.dim() != db.dim()) return non_iso("centroid dimension mismatch");
  if (da.identity_dim != db.identity_dim) return non_iso("centroid identity-part mismatch");
  if (da.support_set != db.support_set) return non_iso("centroid support mismatch");
  if (da.graded_parts_fill != db.graded_parts_fill) return non_iso("centroid grading mismatch");
  {
    auto graded_field_shape = [](const CentroidDescription& d) {
      if (!d.support || d.identity_dim != 1 || !d.graded_parts_fill) return false;
      for (const auto& [g, part] : d.homogeneous)
        if (part.size() != 1) return false;
      return true;
    };
    bool fa = graded_field_shape(da), fb = graded_field_shape(db);
    if (fa != fb) return non_iso("centroid graded-field shape mismatch");
    if (fa && fb) {
      CentroidTGA ta = centroid_as_twisted_group_algebra(a);
      CentroidTGA tb = centroid_as_twisted_group_algebra(b);
      ValueGroup joint = joint_value_group(ta.tau_prime.coeffs.value_group(),
                                           tb.tau_prime.coeffs.value_group());
      CoeffGroup jc = CoeffGroup::values(joint);
      ClassComparison cmp =
          classes_equal(convert_cocycle(ta.tau_prime, jc), convert_cocycle(tb.tau_prime, jc));
      if (!cmp.equal)
        return non_iso("centroid class invariant mismatch at factor " +
                       std::to_string(cmp.failing_index));
    }
  }

  // Monomial search: per-degree basis bijections composed with diagonal maps
  // solved over the ambient value group.
  const int n = a.dim();
  std::vector<std::vector<int>> blocksA, blocksB;
  for (const auto& [d, idxs] : ca) {
    blocksA.push_back(idxs);
    blocksB.push_back(cb.at(d));
  }
  std::vector<std::vector<int>> perms(blocksA.size());
  for (size_t t = 0; t < blocksA.size(); ++t) {
    perms[t].resize(blocksA[t].size());
    std::iota(perms[t].begin(), perms[t].end(), 0);
  }
  bool all_one_dim = true;
  for (const auto& bl : blocksA)
    if (bl.size() > 1) all_one_dim = false;

  bool exhausted_all = false;
  bool unrepresentable = false;
  int64_t tried = 0;
  for (;;) {
    if (tried >= budget) break;
    ++tried;
    std::vector<int> p(n, -1);
    for (size_t t = 0; t < blocksA.size(); ++t)
      for (size_t u = 0; u < blocksA[t].size(); ++u) p[blocksA[t][u]] = blocksB[t][perms[t][u]];

    bool pattern_ok = true;
    std::vector<std::tuple<int, int, int, Scalar>> ratios;  // (i, j, k, cA/cB)
    for (int i = 0; i < n && pattern_ok; ++i)
      for (int j = 0; j < n && pattern_ok; ++j) {
        const auto& ta = a.at(i, j);
        const auto& tb = b.at(p[i], p[j]);
        if (ta.size() != tb.size()) {
          pattern_ok = false;
          break;
        }
        for (const auto& [k, cA] : ta) {
          const Scalar* cB = nullptr;
          for (const auto& [kk, cc] : tb)
            if (kk == p[k]) {
              cB = &cc;
              break;
            }
          if (!cB) {
            pattern_ok = false;
            break;
          }
          ratios.emplace_back(i, j, k, cA / *cB);
        }
      }

    if (pattern_ok) {
      try {
        std::vector<Scalar> vals;
        vals.reserve(ratios.size());
        for (auto& [i, j, k, r] : ratios) vals.push_back(r);
        ValueGroup vg = value_group_for(vals);
        CoeffGroup cg = CoeffGroup::values(vg);
        const int dcoord = cg.dim();
        IntMat cm(static_cast<int>(ratios.size()) * dcoord, n * dcoord);
        std::vector<Int> moduli(cm.rows), rhs(cm.rows);
        int rr = 0;
        for (auto& [i, j, k, r] : ratios) {
          CoeffElem rc = cg.from_value(factor_into_value_group(r, vg).element);
          for (int c = 0; c < dcoord; ++c) {
            cm.at(rr, i * dcoord + c) += 1;
            cm.at(rr, j * dcoord + c) += 1;
            cm.at(rr, k * dcoord + c) -= 1;
            moduli[rr] = cg.moduli()[c];
            rhs[rr] = rc[c];
            ++rr;
          }
        }
        CongruenceSolution sol = integer_affine_solve(cm, moduli, rhs);
        if (sol.solvable) {
          Mat m = zero_mat(n);
          for (int i = 0; i < n; ++i) {
            CoeffElem lam(dcoord, Int(0));
            for (int c = 0; c < dcoord; ++c) lam[c] = sol.x[i * dcoord + c];
            m[p[i]][i] = cg.embed(cg.reduce(std::move(lam)));
          }
          out.kind = IsoSearchResult::Kind::iso;
          out.iso = make_graded_morphism(a, b, std::move(m));
          out.certificate = "monomial isomorphism";
          return out;
        }
      } catch (const Error& e) {
        if (e.kind() == errkind::kUnrepresentableValue)
          unrepresentable = true;
        else
          throw;
      }
    }

    size_t t = 0;
    for (; t < perms.size(); ++t)
      if (std::next_permutation(perms[t].begin(), perms[t].end())) break;
    if (t == perms.size()) {
      exhausted_all = true;
      break;
    }
  }

  if (exhausted_all && all_one_dim && !unrepresentable)
    return non_iso("no monomial isomorphism; with one-dimensional components every graded "
                   "isomorphism is monomial");
  out.kind = IsoSearchResult::Kind::unknown;
  out.certificate = exhausted_all ? "monomial search exhausted without certificate"
                                  : "search budget exhausted";
  return out;
}

// ---------------------------------------------------------------------------
// Restriction of scalars

GradedAlgebra restrict_scalars(const GradedAlgebra& a,
                               const std::optional<GroupElement>& zeta_degree) {
  if (a.conductor == 1) return a;
  const int64_t ncond = a.conductor;
  const int phi = static_cast<int>(euler_phi(ncond));
  const int n = a.dim();
  GroupElement h = zeta_degree.value_or(a.group.zero());
  if (static_cast<int>(h.c.size()) != a.group.rank())
    throw Error(errkind::kBadArgument, "zeta degree has wrong coordinate length");

  std::vector<GroupElement> degrees;
  degrees.reserve(static_cast<size_t>(n) * phi);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < phi; ++k)
      degrees.push_back(a.group.add(a.degrees[i], a.group.smul(k, h)));

  const int nn = n * phi;
  std::vector<std::vector<std::pair<int, Scalar>>> products(static_cast<size_t>(nn) * nn);
  Scalar zeta = Scalar::root_of_unity(ncond);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < phi; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < phi; ++l) {
          std::vector<std::pair<int, Scalar>> terms;
          Scalar z = zeta.pow(k + l);
          for (const auto& [m, c] : a.at(i, j)) {
            Scalar s = (c * z).promoted(ncond);
            const auto& coeffs = s.coeffs();
            for (int t = 0; t < phi && static_cast<size_t>(t) < coeffs.size(); ++t)
              if (coeffs[t] != 0) terms.emplace_back(m * phi + t, Scalar::rational(coeffs[t]));
          }
          products[static_cast<size_t>(i * phi + k) * nn + (j * phi + l)] = std::move(terms);
        }
  return validate_algebra(a.group, 1, std::move(degrees), std::move(products),
                          std::max(GradedAlgebra::kDefaultMaxDim, nn));
}

}  // namespace loopalg
