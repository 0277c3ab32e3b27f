#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/cohom.hpp"

namespace loopalg {

using Mat = std::vector<ScalarVec>;  // n x n endomorphism, rows

// Finite-dimensional algebra with a degree-labeled basis and a sparse
// structure-constant tensor. Grading compatibility is a construction
// invariant: validate_algebra refuses incompatible tensors.
struct GradedAlgebra {
  static constexpr int kDefaultMaxDim = 64;

  FiniteAbelianGroup group;
  int64_t conductor = 1;  // base field Q(zeta_N); 1 = Q
  std::vector<GroupElement> degrees;
  // (i * dim + j) -> terms (k, c) sorted by k, zero terms dropped
  std::vector<std::vector<std::pair<int, Scalar>>> products;

  int dim() const { return static_cast<int>(degrees.size()); }
  const std::vector<std::pair<int, Scalar>>& at(int i, int j) const {
    return products[static_cast<size_t>(i) * degrees.size() + j];
  }

  ScalarVec basis_vec(int i) const;
  ScalarVec mul_vec(const ScalarVec& x, const ScalarVec& y) const;
  // Sorted list of occurring degrees and the basis indices per degree.
  std::map<GroupElement, std::vector<int>> components() const;
};

GradedAlgebra validate_algebra(const FiniteAbelianGroup& group, int64_t conductor,
                               std::vector<GroupElement> degrees,
                               std::vector<std::vector<std::pair<int, Scalar>>> products,
                               int max_dim = GradedAlgebra::kDefaultMaxDim);

// tau-twist: same space, multiplication rescaled by tau(deg x, deg y).
GradedAlgebra twist(const GradedAlgebra& a, const SymCocycle& tau);

// F^t G for a (not necessarily symmetric) 2-cocycle table of scalars; the
// cocycle identity is checked, symmetry is not required.
GradedAlgebra twisted_group_algebra(const FiniteAbelianGroup& g,
                                    const std::vector<std::vector<Scalar>>& t);

GradedAlgebra group_algebra(const FiniteAbelianGroup& g);

// Identities preserved by twists (checked on all basis pairs/triples).
bool is_associative(const GradedAlgebra& a);
bool is_commutative(const GradedAlgebra& a);
bool is_anticommutative(const GradedAlgebra& a);
bool satisfies_jacobi(const GradedAlgebra& a);

// --- Centroid -----------------------------------------------------------------

struct CentroidDescription {
  std::vector<Mat> basis;  // canonical basis of C(A)
  // degree -> basis of C(A)_g, for degrees with a nonzero part
  std::vector<std::pair<GroupElement, std::vector<Mat>>> homogeneous;
  std::vector<GroupElement> support_set;
  std::optional<Subgroup> support;  // present when the support set is a subgroup
  int identity_dim = 0;
  bool graded_parts_fill = false;  // sum of homogeneous dims == dim C(A)

  int dim() const { return static_cast<int>(basis.size()); }
};

CentroidDescription centroid(const GradedAlgebra& a);
bool is_graded_central(const GradedAlgebra& a);

// Homogeneous centroid basis normalized into twisted-group-algebra shape:
// basis[h] for h in H (abstract coordinates), basis[e] = id, and
// basis[h1] basis[h2] = tau'(h1,h2) basis[h1 h2].
struct CentroidTGA {
  Subgroup support;
  SymCocycle tau_prime;     // on support.as_group(), value-group coefficients
  std::vector<Mat> basis;   // indexed by the element index of support.as_group()
  CentroidDescription full;
};
CentroidTGA centroid_as_twisted_group_algebra(const GradedAlgebra& a);

// c^tau(x) = tau(h, deg x) c(x) for homogeneous c of degree h.
Mat centroid_twist_map(const Mat& c, const GroupElement& h, const SymCocycle& tau,
                       const GradedAlgebra& a);

// --- Graded ideals and simplicity ----------------------------------------------

// Smallest subspace containing the seeds, closed under one-sided
// multiplications and degree projections; canonical echelon basis.
ScalarRows graded_ideal_closure(const GradedAlgebra& a, const ScalarRows& seeds);

struct SimplicityVerdict {
  enum class Kind { simple, not_simple, unknown };
  Kind kind = Kind::unknown;
  std::string certificate;  // how the verdict was reached
  ScalarRows witness;       // proper nonzero graded ideal basis for not_simple
  std::string diagnostics;  // for unknown
  bool is_simple() const { return kind == Kind::simple; }
};

inline constexpr uint64_t kDefaultSimplicitySeed = 0x5eed5eedULL;

SimplicityVerdict graded_simplicity(const GradedAlgebra& a,
                                    uint64_t seed = kDefaultSimplicitySeed);

// --- Morphisms and isomorphism search ------------------------------------------

struct GradedMorphism {
  Mat matrix;  // phi(e_j of source) = sum_i matrix[i][j] e_i of target
  bool invertible = false;
};

// Verifies degree preservation, multiplicativity on all basis pairs, and
// invertibility; throws CertificateFailure when a check fails.
GradedMorphism make_graded_morphism(const GradedAlgebra& source, const GradedAlgebra& target,
                                    Mat matrix);

struct DiagonalIsoResult {
  bool ok = false;
  std::optional<GradedMorphism> iso;
  int fail_i = -1, fail_j = -1;  // first failing basis pair
};
// phi(x) = gamma(deg x) x from a.basis to b.basis (matched bases).
DiagonalIsoResult diagonal_iso_check(const GradedAlgebra& a, const GradedAlgebra& b,
                                     const OneCochain& gamma);

struct IsoSearchResult {
  enum class Kind { iso, non_iso, unknown };
  Kind kind = Kind::unknown;
  std::optional<GradedMorphism> iso;
  std::string certificate;
};

IsoSearchResult graded_iso_search(const GradedAlgebra& a, const GradedAlgebra& b,
                                  int64_t budget = 20000);

// --- Restriction of scalars -----------------------------------------------------

// A over Q(zeta_N) as a Q-algebra on the basis {b_i zeta^k}. By default all
// zeta-multiples keep their degree; zeta_degree shifts zeta^k b_i by k*h
// (the resulting grading is validated).
GradedAlgebra restrict_scalars(const GradedAlgebra& a,
                               const std::optional<GroupElement>& zeta_degree = std::nullopt);

}  // namespace loopalg
