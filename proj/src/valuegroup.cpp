#include "loopalg/valuegroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "loopalg/errors.hpp"

namespace loopalg {

bool is_prime_int(const Int& n) {
  if (n < 2) return false;
  for (Int p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

ValueGroup::ValueGroup(int64_t torsion, std::vector<Scalar> free_basis)
    : torsion_(torsion), free_basis_(std::move(free_basis)) {
  if (torsion_ < 1) throw Error(errkind::kBadArgument, "torsion order must be >= 1");
  std::vector<Int> primes;
  for (const Scalar& b : free_basis_) {
    if (b.is_rational()) {
      const Rat& r = b.rat();
      if (denominator(r) != 1 || !is_prime_int(numerator(r)))
        throw Error(errkind::kBadArgument,
                    "rational free-basis entries must be primes, got " + b.str());
      primes.push_back(numerator(r));
    }
    // Cyclotomic units: multiplicative independence is trusted, not checked.
  }
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw Error(errkind::kBadArgument, "free-basis primes must be distinct");
}

Scalar ValueGroup::torsion_root() const { return Scalar::root_of_unity(torsion_); }

ValueElement value_identity(const ValueGroup& v) {
  return ValueElement{Int(0), std::vector<Int>(v.free_basis().size(), Int(0))};
}

ValueElement value_mul(const ValueGroup& v, const ValueElement& a, const ValueElement& b) {
  ValueElement out;
  out.torsion_exp = (a.torsion_exp + b.torsion_exp) % v.torsion();
  out.free_exps.resize(v.free_basis().size());
  for (size_t i = 0; i < out.free_exps.size(); ++i)
    out.free_exps[i] = a.free_exps[i] + b.free_exps[i];
  return out;
}

ValueElement value_inv(const ValueGroup& v, const ValueElement& a) {
  ValueElement out;
  out.torsion_exp = (v.torsion() - a.torsion_exp % v.torsion()) % v.torsion();
  out.free_exps.resize(a.free_exps.size());
  for (size_t i = 0; i < a.free_exps.size(); ++i) out.free_exps[i] = -a.free_exps[i];
  return out;
}

ValueElement value_pow(const ValueGroup& v, const ValueElement& a, const Int& n) {
  ValueElement out;
  Int t = a.torsion_exp * n % v.torsion();
  if (t < 0) t += v.torsion();
  out.torsion_exp = t;
  out.free_exps.resize(a.free_exps.size());
  for (size_t i = 0; i < a.free_exps.size(); ++i) out.free_exps[i] = a.free_exps[i] * n;
  return out;
}

Scalar value_embed(const ValueGroup& v, const ValueElement& a) {
  Scalar out = Scalar::root_of_unity(v.torsion(), static_cast<int64_t>(a.torsion_exp));
  for (size_t i = 0; i < v.free_basis().size(); ++i)
    if (a.free_exps[i] != 0) out = out * v.free_basis()[i].pow(a.free_exps[i]);
  return out;
}

namespace {

// Index of a scalar in the free basis, comparing exactly.
std::optional<size_t> basis_index(const ValueGroup& v, const Scalar& s) {
  for (size_t i = 0; i < v.free_basis().size(); ++i)
    if (v.free_basis()[i] == s) return i;
  return std::nullopt;
}

std::map<Int, Int> trial_factor(Int n) {
  std::map<Int, Int> out;
  for (Int p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

// Torsion exponent t with zeta_T^t equal to the given root of unity of order d
// given as zeta_d^k; requires d | T.
Int torsion_exponent_for(int64_t torsion, int64_t d, int64_t k) {
  return Int(torsion / d) * k % torsion;
}

// (order, exponent) with value = zeta_order^exponent, for a root of unity.
std::pair<int64_t, int64_t> root_as_pair(const Scalar& s, int64_t order) {
  for (int64_t k = 0; k < order; ++k)
    if (Scalar::root_of_unity(order, k) == s) return {order, k};
  throw Error(errkind::kBadArgument, "internal: root of unity without exponent");
}

}  // namespace

FactorResult factor_into_value_group(const Scalar& q, const ValueGroup& v, AutoExtend extend) {
  if (q.is_zero()) throw Error(errkind::kBadArgument, "cannot factor zero into a value group");
  ValueGroup group = v;
  ValueElement elem = value_identity(group);

  Scalar rational_part = q;
  if (!q.is_rational()) {
    auto order = q.root_of_unity_order();
    if (order) {
      if (v.torsion() % *order != 0)
        throw Error(errkind::kUnrepresentableValue,
                    "root of unity of order " + std::to_string(*order) +
                        " does not lie in the torsion subgroup");
      auto [d, k] = root_as_pair(q, *order);
      elem.torsion_exp = torsion_exponent_for(v.torsion(), d, k);
      return FactorResult{std::move(elem), std::move(group)};
    }
    // Try root-of-unity times rational: q^m is rational for such values.
    const int64_t m = (q.conductor() % 2 == 0) ? q.conductor() : 2 * q.conductor();
    Scalar qm = q.pow(m);
    if (!qm.is_rational())
      throw Error(errkind::kUnrepresentableValue,
                  "cyclotomic value is not a root of unity times a rational: " + q.str());
    // Extract the rational m-th root of q^m.
    Rat target = qm.rat();
    Int num = numerator(target) < 0 ? -numerator(target) : numerator(target);
    Int den = denominator(target);
    auto root_of = [&](const Int& x) -> Int {
      Int r = 1;
      for (auto& [p, e] : trial_factor(x)) {
        if (e % m != 0)
          throw Error(errkind::kUnrepresentableValue,
                      "value has no exact root-times-rational form: " + q.str());
        Int k = e / m;
        for (Int i = 0; i < k; ++i) r *= p;
      }
      return r;
    };
    if (numerator(target) < 0)
      throw Error(errkind::kUnrepresentableValue,
                  "value has no exact root-times-rational form: " + q.str());
    Rat abs_root(root_of(num), root_of(den));
    Scalar ratio = q / Scalar::rational(abs_root);
    auto ratio_order = ratio.root_of_unity_order();
    if (!ratio_order)
      throw Error(errkind::kUnrepresentableValue,
                  "value has no exact root-times-rational form: " + q.str());
    FactorResult rat_part = factor_into_value_group(Scalar::rational(abs_root), group, extend);
    group = rat_part.group;
    elem = rat_part.element;
    if (group.torsion() % *ratio_order != 0)
      throw Error(errkind::kUnrepresentableValue,
                  "root-of-unity part does not lie in the torsion subgroup");
    auto [d, k] = root_as_pair(ratio, *ratio_order);
    elem.torsion_exp =
        (elem.torsion_exp + torsion_exponent_for(group.torsion(), d, k)) % group.torsion();
    return FactorResult{std::move(elem), std::move(group)};
  }

  const Rat& r = rational_part.rat();
  if (numerator(r) < 0) {
    if (v.torsion() % 2 != 0)
      throw Error(errkind::kUnrepresentableValue, "negative value but no -1 in the torsion");
    elem.torsion_exp = v.torsion() / 2;
  }
  Int num = numerator(r) < 0 ? -numerator(r) : Int(numerator(r));
  std::map<Int, Int> exps = trial_factor(num);
  for (auto& [p, e] : trial_factor(denominator(r))) exps[p] -= e;
  for (auto& [p, e] : exps) {
    if (e == 0) continue;
    Scalar ps = Scalar::rational(Rat(p));
    auto idx = basis_index(group, ps);
    if (!idx) {
      if (extend == AutoExtend::off)
        throw Error(errkind::kUnrepresentableValue,
                    "prime " + ps.str() + " is not in the free basis");
      std::vector<Scalar> basis = group.free_basis();
      basis.push_back(ps);
      group = ValueGroup(group.torsion(), std::move(basis));
      elem.free_exps.push_back(Int(0));
      idx = group.free_basis().size() - 1;
    }
    elem.free_exps[*idx] += e;
  }
  return FactorResult{std::move(elem), std::move(group)};
}

std::optional<ValueElement> power_membership(const ValueElement& a, const Int& n,
                                             const ValueGroup& v) {
  if (n < 1) throw Error(errkind::kBadArgument, "power_membership needs n >= 1");
  ValueElement w = value_identity(v);
  for (size_t i = 0; i < a.free_exps.size(); ++i) {
    if (a.free_exps[i] % n != 0) return std::nullopt;
    w.free_exps[i] = a.free_exps[i] / n;
  }
  // Solve n * x = t (mod T).
  Int t = a.torsion_exp % v.torsion();
  if (t < 0) t += v.torsion();
  Int g = gcd(n, Int(v.torsion()));
  if (t % g != 0) return std::nullopt;
  // x = (t/g) * inverse(n/g) mod T/g
  Int tg = t / g, ng = n % Int(v.torsion()) / g, mod = Int(v.torsion()) / g;
  if (mod == 1) {
    w.torsion_exp = 0;
    return w;
  }
  // Extended Euclid for the inverse of ng modulo mod.
  Int r0 = mod, r1 = ng % mod, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
  }
  Int inv = s0 % mod;
  if (inv < 0) inv += mod;
  w.torsion_exp = tg * inv % Int(v.torsion());
  return w;
}

ValueGroup value_group_for(const std::vector<Scalar>& values) {
  int64_t torsion = 2;
  std::vector<Int> primes;
  for (const Scalar& s : values) {
    if (s.is_zero()) throw Error(errkind::kBadArgument, "zero cannot live in a value group");
    Scalar rational_abs = s;
    if (!s.is_rational()) {
      auto order = s.root_of_unity_order();
      Scalar ratio = s;
      if (!order) {
        const int64_t m = (s.conductor() % 2 == 0) ? s.conductor() : 2 * s.conductor();
        Scalar sm = s.pow(m);
        if (!sm.is_rational())
          throw Error(errkind::kUnrepresentableValue,
                      "value is not a root of unity times a rational: " + s.str());
        Rat target = sm.rat();
        if (numerator(target) < 0)
          throw Error(errkind::kUnrepresentableValue,
                      "value is not a root of unity times a rational: " + s.str());
        auto root_of = [&](Int x) -> Int {
          Int r = 1;
          for (auto& [p, e] : trial_factor(x)) {
            if (e % m != 0)
              throw Error(errkind::kUnrepresentableValue,
                          "value is not a root of unity times a rational: " + s.str());
            Int k = e / m;
            for (Int i = 0; i < k; ++i) r *= p;
          }
          return r;
        };
        Rat abs_root(root_of(numerator(target)), root_of(denominator(target)));
        ratio = s / Scalar::rational(abs_root);
        order = ratio.root_of_unity_order();
        if (!order)
          throw Error(errkind::kUnrepresentableValue,
                      "value is not a root of unity times a rational: " + s.str());
        rational_abs = Scalar::rational(abs_root);
      } else {
        rational_abs = Scalar::one();
      }
      torsion = std::lcm(torsion, *order);
    }
    if (rational_abs.is_rational()) {
      const Rat& r = rational_abs.rat();
      Int num = numerator(r) < 0 ? -numerator(r) : Int(numerator(r));
      for (auto& [p, e] : trial_factor(num)) primes.push_back(p);
      for (auto& [p, e] : trial_factor(denominator(r))) primes.push_back(p);
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Scalar> basis;
  for (const Int& p : primes) basis.push_back(Scalar::rational(Rat(p)));
  return ValueGroup(torsion, std::move(basis));
}

ValueGroup joint_value_group(const ValueGroup& a, const ValueGroup& b) {
  int64_t torsion = std::lcm(a.torsion(), b.torsion());
  std::vector<Scalar> basis = a.free_basis();
  for (const Scalar& s : b.free_basis()) {
    bool present = false;
    for (const Scalar& t : basis)
      if (t == s) {
        present = true;
        break;
      }
    if (!present) basis.push_back(s);
  }
  // Keep rational primes sorted for a canonical presentation.
  std::stable_sort(basis.begin(), basis.end(), [](const Scalar& x, const Scalar& y) {
    if (x.is_rational() != y.is_rational()) return x.is_rational();
    if (x.is_rational()) return x.rat() < y.rat();
    return false;
  });
  return ValueGroup(torsion, std::move(basis));
}

}  // namespace loopalg
