#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "loopalg/intmat.hpp"

namespace loopalg {

// Element of a finite abelian group in invariant-factor coordinates,
// always reduced: 0 <= c[i] < n_i. Ordering is lexicographic.
struct GroupElement {
  std::vector<int64_t> c;
  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

// Finite abelian group Z/n1 x ... x Z/nr with n1 | n2 | ... | nr.
// Groups are additive; the multiplicative notation of group extensions is a
// presentation concern handled at the printing layer.
class FiniteAbelianGroup {
 public:
  static constexpr int64_t kDefaultMaxOrder = 256;

  FiniteAbelianGroup() = default;  // the trivial group
  explicit FiniteAbelianGroup(std::vector<int64_t> invariant_factors,
                              int64_t max_order = kDefaultMaxOrder);
  static FiniteAbelianGroup trivial() { return FiniteAbelianGroup(); }

  const std::vector<int64_t>& invariant_factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int64_t order() const { return order_; }
  int64_t exponent() const;

  GroupElement zero() const { return GroupElement{std::vector<int64_t>(factors_.size(), 0)}; }
  GroupElement reduce(std::vector<int64_t> coords) const;
  GroupElement add(const GroupElement& x, const GroupElement& y) const;
  GroupElement neg(const GroupElement& x) const;
  GroupElement sub(const GroupElement& x, const GroupElement& y) const;
  GroupElement smul(int64_t k, const GroupElement& x) const;
  int64_t element_order(const GroupElement& x) const;

  // Lexicographic rank of an element; elements() lists all in that order.
  int64_t index_of(const GroupElement& x) const;
  GroupElement element_at(int64_t idx) const;
  std::vector<GroupElement> elements() const;

  // Canonical cyclic decomposition: (e_i, n_i) for every factor n_i > 1.
  std::vector<std::pair<GroupElement, int64_t>> cyclic_factors() const;

  std::string show(const GroupElement& x) const;
  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<int64_t> factors_;
  int64_t order_ = 1;
};

// Subgroup of a FiniteAbelianGroup. Membership goes through the precomputed
// Smith form of the lattice [elements | diag(n)]; the element list and the
// canonical cyclic decomposition are derived once at construction, from the
// element set (not the given generators), so equal subgroups get identical
// coordinates.
class Subgroup {
 public:
  static Subgroup generated(const FiniteAbelianGroup& parent, std::vector<GroupElement> gens);
  static Subgroup whole(const FiniteAbelianGroup& parent);
  static Subgroup trivial_in(const FiniteAbelianGroup& parent);

  const FiniteAbelianGroup& parent() const { return parent_; }
  const std::vector<GroupElement>& generators() const { return gens_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  int64_t order() const { return static_cast<int64_t>(elements_.size()); }
  bool contains(const GroupElement& x) const;

  const std::vector<std::pair<GroupElement, int64_t>>& cyclic_decomposition() const {
    return cyclic_;
  }

  // The subgroup as an abstract group in the coordinates of its canonical
  // cyclic decomposition.
  const FiniteAbelianGroup& as_group() const { return abs_group_; }
  GroupElement embed(const GroupElement& abs_elem) const;
  GroupElement coords_of(const GroupElement& parent_elem) const;

  bool operator==(const Subgroup& o) const {
    return parent_ == o.parent_ && elements_ == o.elements_;
  }

 private:
  Subgroup(FiniteAbelianGroup parent, std::vector<GroupElement> gens);

  FiniteAbelianGroup parent_;
  std::vector<GroupElement> gens_;
  std::vector<GroupElement> elements_;
  std::vector<std::pair<GroupElement, int64_t>> cyclic_;
  FiniteAbelianGroup abs_group_;
  std::map<int64_t, GroupElement> abs_coords_;  // parent element index -> abstract coords
  IntMat mem_u_;                                // membership: SNF data of [elements | diag(n)]
  std::vector<Int> mem_diag_;
};

// Homomorphism given by an integer matrix on coordinates. Construction checks
// that the matrix maps the relation lattice of the domain into the relation
// lattice of the codomain.
class GroupHom {
 public:
  static GroupHom create(FiniteAbelianGroup domain, FiniteAbelianGroup codomain, IntMat matrix);
  static GroupHom identity(const FiniteAbelianGroup& g);

  const FiniteAbelianGroup& domain() const { return domain_; }
  const FiniteAbelianGroup& codomain() const { return codomain_; }
  const IntMat& matrix() const { return matrix_; }

  GroupElement apply(const GroupElement& x) const;
  bool is_surjective() const;
  Subgroup kernel() const;
  bool operator==(const GroupHom&) const = default;

 private:
  GroupHom(FiniteAbelianGroup d, FiniteAbelianGroup c, IntMat m)
      : domain_(std::move(d)), codomain_(std::move(c)), matrix_(std::move(m)) {}
  FiniteAbelianGroup domain_;
  FiniteAbelianGroup codomain_;
  IntMat matrix_;
};

// Section of a surjection, stored as an explicit value table; it is not a
// homomorphism in general.
struct Section {
  GroupHom pi;
  std::vector<GroupElement> table;  // indexed by codomain element index
  const GroupElement& apply(const GroupElement& q) const;
};

struct QuotientResult {
  FiniteAbelianGroup quotient;
  GroupHom projection;
};

// Q = G/H in invariant-factor form together with the canonical projection.
QuotientResult quotient(const FiniteAbelianGroup& g, const Subgroup& h);

// Deterministic section of a surjective homomorphism: least lexicographic
// preimage, so s(e) = e.
Section section(const GroupHom& pi);

// All homomorphisms H -> T between finite abelian groups, in a fixed order.
std::vector<GroupHom> hom_group(const FiniteAbelianGroup& h, const FiniteAbelianGroup& t);

// Every subgroup of g, ordered by (order, element list).
std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g);

}  // namespace loopalg
