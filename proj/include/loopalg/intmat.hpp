#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace loopalg {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.
struct IntMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

  Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static IntMat identity(int n);
  IntMat mul(const IntMat& rhs) const;
  bool operator==(const IntMat&) const = default;
};

// u * m * v = d, with u and v unimodular and d diagonal with d1 | d2 | ...
// Deterministic: pivot of smallest nonzero absolute value, ties broken
// lexicographically by position.
struct SnfResult {
  IntMat u, d, v;
  std::vector<Int> diagonal() const;
  int rank() const;  // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const IntMat& m);

// Fraction-free determinant (Bareiss).
Int determinant(const IntMat& m);

// Exact inverse of a matrix with determinant +-1.
IntMat unimodular_inverse(const IntMat& u);

}  // namespace loopalg
