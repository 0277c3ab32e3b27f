#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopalg/abgroup.hpp"
#include "loopalg/linalg.hpp"
#include "loopalg/valuegroup.hpp"

namespace loopalg {

// Coefficient group for cocycles: either a multiplicative value group inside
// F^x or a finite abelian group (the subgroup H, for section cocycles). Both
// are finitely generated abelian, so elements are exponent coordinate vectors
// with one modulus per coordinate (0 = free): all class computations run on
// that shared shape.
class CoeffGroup {
 public:
  enum class Kind { values, group };

  static CoeffGroup values(ValueGroup vg);
  static CoeffGroup group(FiniteAbelianGroup g);

  Kind kind() const { return kind_; }
  const ValueGroup& value_group() const;
  const FiniteAbelianGroup& abelian() const;
  const std::vector<Int>& moduli() const { return moduli_; }
  int dim() const { return static_cast<int>(moduli_.size()); }

  std::vector<Int> identity_elem() const { return std::vector<Int>(moduli_.size(), Int(0)); }
  std::vector<Int> reduce(std::vector<Int> e) const;
  std::vector<Int> mul(const std::vector<Int>& a, const std::vector<Int>& b) const;
  std::vector<Int> inv(const std::vector<Int>& a) const;
  std::vector<Int> power(const std::vector<Int>& a, const Int& n) const;
  bool is_identity(const std::vector<Int>& a) const;
  // Witness w with w^n = a, or nullopt; complete over the group.
  std::optional<std::vector<Int>> power_witness(const std::vector<Int>& a, const Int& n) const;

  Scalar embed(const std::vector<Int>& a) const;  // values kind only
  std::vector<Int> from_value(const ValueElement& v) const;
  ValueElement to_value(const std::vector<Int>& a) const;

  // The torsion part as an abstract group (for character enumeration).
  FiniteAbelianGroup torsion_subgroup() const;
  std::vector<Int> from_torsion(const GroupElement& t) const;

  std::string show(const std::vector<Int>& a) const;
  bool operator==(const CoeffGroup& o) const;

 private:
  CoeffGroup() = default;

  Kind kind_ = Kind::values;
  ValueGroup vg_;
  FiniteAbelianGroup ag_;
  std::vector<Int> moduli_;
};

using CoeffElem = std::vector<Int>;

struct SymCocycle {
  FiniteAbelianGroup group;
  CoeffGroup coeffs;
  std::vector<CoeffElem> table;  // |G|^2, row-major in element index order

  const CoeffElem& at(int64_t i, int64_t j) const { return table[i * group.order() + j]; }
  const CoeffElem& at(const GroupElement& a, const GroupElement& b) const {
    return at(group.index_of(a), group.index_of(b));
  }
  Scalar scalar_at(const GroupElement& a, const GroupElement& b) const {
    return coeffs.embed(at(a, b));
  }
  bool operator==(const SymCocycle& o) const {
    return group == o.group && coeffs == o.coeffs && table == o.table;
  }
};

struct OneCochain {
  FiniteAbelianGroup group;
  CoeffGroup coeffs;
  std::vector<CoeffElem> table;  // |G| entries, gamma(e) = identity
  const CoeffElem& at(const GroupElement& g) const { return table[group.index_of(g)]; }
};

// Complete class invariant: per canonical cyclic factor (g_i, n_i) the norm
// N_i = prod_k tau(k g_i, g_i), read modulo n_i-th powers.
struct CohomClass {
  FiniteAbelianGroup group;
  CoeffGroup coeffs;
  std::vector<std::pair<GroupElement, int64_t>> factors;
  std::vector<CoeffElem> norms;

  SymCocycle representative() const;  // the standard cocycle with these norms
};

// Character of a finite abelian group with values in the torsion part of a
// coefficient group.
struct Character {
  FiniteAbelianGroup domain;
  CoeffGroup codomain;
  std::vector<CoeffElem> gen_images;  // per canonical cyclic factor of domain

  static Character create(FiniteAbelianGroup domain, CoeffGroup codomain,
                          std::vector<CoeffElem> gen_images);
  // Monomial map h = sum k_i h_i -> prod images_i^{k_i} without the
  // homomorphism order check; delta validates the composed table instead.
  static Character monomial(FiniteAbelianGroup domain, CoeffGroup codomain,
                            std::vector<CoeffElem> gen_images);
  CoeffElem eval(const GroupElement& x) const;
  bool is_trivial() const;
};

// --- Construction and validation ---------------------------------------------

// Checks normalization (after dividing out tau(e,e)), symmetry and the cocycle
// identity by full enumeration.
SymCocycle validate_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                            std::vector<CoeffElem> table);
SymCocycle trivial_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs);
OneCochain one_cochain(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                       std::vector<CoeffElem> table);
OneCochain trivial_cochain(const FiniteAbelianGroup& g, const CoeffGroup& coeffs);

SymCocycle coboundary(const OneCochain& gamma);

// Carry representative: tau_v(a,b) = prod_i v_i^{floor((a_i+b_i)/n_i)}, one v
// per canonical cyclic factor.
SymCocycle standard_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                            const std::vector<CoeffElem>& v);

SymCocycle cocycle_mul(const SymCocycle& a, const SymCocycle& b);
SymCocycle cocycle_inv(const SymCocycle& a);

// Entrywise conversion to another coefficient group (values kind).
SymCocycle convert_cocycle(const SymCocycle& t, const CoeffGroup& target);

// --- Class computations -------------------------------------------------------

CohomClass class_invariants(const SymCocycle& tau);

struct ClassComparison {
  bool equal = false;
  std::optional<OneCochain> witness;  // tau1 = tau2 * d(witness) when equal
  int failing_index = -1;             // invariant index when not equal
};
ClassComparison classes_equal(const SymCocycle& tau1, const SymCocycle& tau2);

// Constructive normal form: rho * d(gamma) = standard(norms), built by
// rewriting the section of the associated abelian extension in the canonical
// generator order.
struct StandardReduction {
  OneCochain gamma;
  std::vector<CoeffElem> norms;
};
StandardReduction reduce_to_standard(const SymCocycle& rho);

// --- Maps of the long exact sequence -----------------------------------------

SymCocycle restrict_cocycle(const SymCocycle& tau, const Subgroup& h);
SymCocycle inflate_cocycle(const SymCocycle& mu, const GroupHom& pi);

// sigma(q1,q2) = s(q1) + s(q2) - s(q1 q2), valued in H (as its abstract group).
SymCocycle section_cocycle(const Section& s, const Subgroup& h);

// delta(chi) = chi o sigma, a cocycle on G/H with values in chi's codomain.
SymCocycle delta(const Character& chi, const SymCocycle& sigma);

// Constructive cocycle extension: tau on G with tau|_{HxH} = tau_prime
// entrywise. tau_prime lives on h.as_group().
SymCocycle extend_cocycle(const SymCocycle& tau_prime, const Subgroup& h);

struct PreimageResult {
  bool found = false;
  std::optional<SymCocycle> nu;  // on the codomain of pi
  std::string certificate;       // population of the failing congruence when not found
};
PreimageResult inflation_preimage(const CohomClass& c, const GroupHom& pi);

// Characters of h with values in the torsion part of the coefficient group.
std::vector<Character> enumerate_characters(const FiniteAbelianGroup& h, const CoeffGroup& into);

// --- The real case ------------------------------------------------------------

// For a sign-valued cocycle, produces a character chi and square roots
// gamma(g) = z_g with z_g^2 = chi(g) such that [tau] = [d gamma], plus the
// verified coboundary witness.
struct RealCharacterResult {
  Character chi;        // into mu_{2 exp(G)}
  OneCochain gamma;     // into mu_{4 exp(G)}, the chosen square roots z_g
  SymCocycle dgamma;    // sign-valued coboundary of gamma
  OneCochain coboundary_witness;  // tau = dgamma * d(witness)
};
RealCharacterResult character_from_real_cocycle(const SymCocycle& tau);

}  // namespace loopalg
