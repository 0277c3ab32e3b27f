#pragma once

// Shared constructions for the test suites: the complex-numbers model, group
// algebras, quaternions, and matrix algebras with standard gradings.

#include "loopalg/galg.hpp"

namespace loopalg::fixtures {

inline Scalar q(int64_t n, int64_t d = 1) { return Scalar::rational(Rat(n, d)); }

inline GroupElement el(std::vector<int64_t> c) { return GroupElement{std::move(c)}; }

// C over Q, graded by C2: basis e (deg 0), u (deg 1), u*u = -e.
inline GradedAlgebra complex_model() {
  FiniteAbelianGroup c2({2});
  std::vector<GroupElement> degrees{el({0}), el({1})};
  std::vector<std::vector<std::pair<int, Scalar>>> products(4);
  products[0 * 2 + 0] = {{0, q(1)}};
  products[0 * 2 + 1] = {{1, q(1)}};
  products[1 * 2 + 0] = {{1, q(1)}};
  products[1 * 2 + 1] = {{0, q(-1)}};
  return validate_algebra(c2, 1, std::move(degrees), std::move(products));
}

// Q C2 with its C2-grading (u*u = +e).
inline GradedAlgebra qc2() { return group_algebra(FiniteAbelianGroup({2})); }

// Q C2 with the trivial grading.
inline GradedAlgebra qc2_trivially_graded() {
  FiniteAbelianGroup c2({2});
  std::vector<GroupElement> degrees{el({0}), el({0})};
  std::vector<std::vector<std::pair<int, Scalar>>> products(4);
  products[0 * 2 + 0] = {{0, q(1)}};
  products[0 * 2 + 1] = {{1, q(1)}};
  products[1 * 2 + 0] = {{1, q(1)}};
  products[1 * 2 + 1] = {{0, q(1)}};
  return validate_algebra(c2, 1, std::move(degrees), std::move(products));
}

// The quaternion twisted group algebra over C2 x C2 (nonsymmetric cocycle
// t(x,y) = (-1)^{x1 y1 + x2 y2 + x2 y1}).
inline GradedAlgebra quaternions() {
  FiniteAbelianGroup g({2, 2});
  auto elems = g.elements();
  std::vector<std::vector<Scalar>> t(4, std::vector<Scalar>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const auto& x = elems[a].c;
      const auto& y = elems[b].c;
      int64_t e = x[0] * y[0] + x[1] * y[1] + x[1] * y[0];
      t[a][b] = q(e % 2 == 0 ? 1 : -1);
    }
  return twisted_group_algebra(g, t);
}

// M2(Q), trivially graded over the given group.
inline GradedAlgebra m2_trivial(const FiniteAbelianGroup& g) {
  // Basis E11, E12, E21, E22; E_ab E_cd = delta_bc E_ad.
  std::vector<GroupElement> degrees(4, g.zero());
  std::vector<std::vector<std::pair<int, Scalar>>> products(16);
  auto idx = [](int a, int b) { return (a - 1) * 2 + (b - 1); };
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c)
        for (int d = 1; d <= 2; ++d)
          if (b == c) products[idx(a, b) * 4 + idx(c, d)] = {{idx(a, d), q(1)}};
  return validate_algebra(g, 1, std::move(degrees), std::move(products));
}

// M2(Q) with the diagonal/antidiagonal C2-grading: E11, E22 in degree 0,
// E12, E21 in degree 1.
inline GradedAlgebra m2_c2_graded() {
  FiniteAbelianGroup c2({2});
  std::vector<GroupElement> degrees{el({0}), el({1}), el({1}), el({0})};  // E11,E12,E21,E22
  std::vector<std::vector<std::pair<int, Scalar>>> products(16);
  auto idx = [](int a, int b) { return a == 1 ? (b == 1 ? 0 : 1) : (b == 1 ? 2 : 3); };
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int c = 1; c <= 2; ++c)
        for (int d = 1; d <= 2; ++d)
          if (b == c) products[idx(a, b) * 4 + idx(c, d)] = {{idx(a, d), q(1)}};
  return validate_algebra(c2, 1, std::move(degrees), std::move(products));
}

// One-dimensional unital algebra over Q(zeta_N), trivially graded.
inline GradedAlgebra unital_line(const FiniteAbelianGroup& g, int64_t conductor) {
  std::vector<GroupElement> degrees{g.zero()};
  std::vector<std::vector<std::pair<int, Scalar>>> products(1);
  products[0] = {{0, q(1)}};
  return validate_algebra(g, conductor, std::move(degrees), std::move(products));
}

inline CoeffGroup sign_group() { return CoeffGroup::values(ValueGroup(2, {})); }

inline CoeffElem ce(std::vector<int64_t> v) { return CoeffElem(v.begin(), v.end()); }

}  // namespace loopalg::fixtures
