#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "loopalg/intmat.hpp"
#include "loopalg/scalar.hpp"

namespace loopalg {

using ScalarVec = std::vector<Scalar>;
using ScalarRows = std::vector<ScalarVec>;
using SparseRow = std::vector<std::pair<int, Scalar>>;

struct LinearSolution {
  bool consistent = false;
  ScalarVec particular;       // one solution when consistent
  ScalarRows kernel;          // canonical kernel basis (RREF free-column vectors)
  int rank = 0;
  // When inconsistent: y with y^T A = 0 and y^T b != 0, if it was computed
  // (always for systems with <= 512 rows).
  ScalarVec certificate;
};

// Exact solve of A x = b by fraction-free (Bareiss) elimination with
// smallest-magnitude pivoting; deterministic.
LinearSolution linear_solve(const ScalarRows& a, const ScalarVec& b);

// Kernel of a (possibly huge, sparse) homogeneous system; rows are inserted
// incrementally into a reduced echelon basis. Returns the canonical kernel
// basis and the rank.
struct NullspaceResult {
  ScalarRows kernel;
  int rank = 0;
};
NullspaceResult sparse_nullspace(const std::vector<SparseRow>& rows, int ncols);

// Incrementally maintained reduced echelon basis over the scalar field.
class EchelonBasis {
 public:
  explicit EchelonBasis(int ncols) : ncols_(ncols) {}

  // Reduces v against the basis; inserts the normalized remainder when
  // nonzero. Returns true when the vector enlarged the span.
  bool insert(ScalarVec v);
  bool contains(ScalarVec v) const;

  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  ScalarRows basis() const;
  ScalarRows kernel() const;

 private:
  int ncols_;
  std::map<int, ScalarVec> rows_;  // pivot column -> reduced row
};

// Row space of the given vectors in reduced echelon form (canonical basis).
ScalarRows row_space(const ScalarRows& vectors);
int rank_of(const ScalarRows& vectors);
// Span membership; if inside, coordinates in the `basis` rows are returned.
std::optional<ScalarVec> in_span(const ScalarRows& basis, const ScalarVec& v);

// Solve C x == t (mod moduli) rowwise over the integers; modulus 0 means an
// exact equation. Smith-normal-form based.
struct CongruenceSolution {
  bool solvable = false;
  std::vector<Int> x;                      // particular solution
  std::vector<std::vector<Int>> lattice;   // basis of the homogeneous solution lattice
  std::string certificate;                 // set when unsolvable
};
CongruenceSolution integer_affine_solve(const IntMat& c, const std::vector<Int>& moduli,
                                        const std::vector<Int>& t);

}  // namespace loopalg
