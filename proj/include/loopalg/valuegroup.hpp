#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopalg/scalar.hpp"

namespace loopalg {

// Multiplicative model of a finitely generated subgroup of F^x:
//   mu_T  x  < b_1 >  x ... x  < b_k >
// with the b_i declared multiplicatively independent. Rational basis entries
// must be distinct primes (checked); cyclotomic entries are trusted.
class ValueGroup {
 public:
  ValueGroup() : torsion_(1) {}
  ValueGroup(int64_t torsion, std::vector<Scalar> free_basis);

  int64_t torsion() const { return torsion_; }
  const std::vector<Scalar>& free_basis() const { return free_basis_; }
  // zeta_T as a scalar (-1 when T == 2, 1 when T == 1).
  Scalar torsion_root() const;

  bool operator==(const ValueGroup& o) const {
    return torsion_ == o.torsion_ && free_basis_ == o.free_basis_;
  }

 private:
  int64_t torsion_;
  std::vector<Scalar> free_basis_;
};

struct ValueElement {
  Int torsion_exp;             // mod T
  std::vector<Int> free_exps;  // over the free basis, may be negative
  bool operator==(const ValueElement&) const = default;
};

ValueElement value_identity(const ValueGroup& v);
ValueElement value_mul(const ValueGroup& v, const ValueElement& a, const ValueElement& b);
ValueElement value_inv(const ValueGroup& v, const ValueElement& a);
ValueElement value_pow(const ValueGroup& v, const ValueElement& a, const Int& n);
Scalar value_embed(const ValueGroup& v, const ValueElement& a);

struct FactorResult {
  ValueElement element;
  ValueGroup group;  // equals the input group unless auto-extend added primes
};

enum class AutoExtend { off, on };

// Writes a scalar as an element of the value group. Rationals factor by trial
// division; cyclotomic inputs must be roots of unity lying in mu_T (or a root
// of unity times a representable rational). Missing primes raise
// UnrepresentableValue unless auto-extend is on.
FactorResult factor_into_value_group(const Scalar& q, const ValueGroup& v,
                                     AutoExtend extend = AutoExtend::off);

// Witness w with w^n = a, when one exists in the group; complete over V.
std::optional<ValueElement> power_membership(const ValueElement& a, const Int& n,
                                             const ValueGroup& v);

// Smallest value group containing the given scalars: torsion = lcm of the
// orders of the root-of-unity parts (at least 2), free basis = occurring
// primes in ascending order.
ValueGroup value_group_for(const std::vector<Scalar>& values);

// Common refinement of two value groups.
ValueGroup joint_value_group(const ValueGroup& a, const ValueGroup& b);

bool is_prime_int(const Int& n);

}  // namespace loopalg
