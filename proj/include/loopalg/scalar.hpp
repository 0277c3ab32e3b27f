#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "loopalg/intmat.hpp"

namespace loopalg {

using Rat = boost::multiprecision::cpp_rational;

// Coefficients of the N-th cyclotomic polynomial, constant term first.
const std::vector<Int>& cyclotomic_polynomial(int64_t n);
int64_t euler_phi(int64_t n);

// Exact field element: rational (conductor 1) or element of Q(zeta_N) in the
// canonical power basis 1, z, ..., z^{phi(N)-1} reduced modulo the N-th
// cyclotomic polynomial. Arithmetic across conductors promotes to the lcm;
// values whose reduced form is rational are demoted back to conductor 1, so
// equality is plain coefficient comparison after promotion.
class Scalar {
 public:
  Scalar() : n_(1), c_{Rat(0)} {}
  static Scalar rational(Rat r) { return Scalar(1, {std::move(r)}); }
  static Scalar integer(int64_t v) { return rational(Rat(v)); }
  static Scalar zero() { return integer(0); }
  static Scalar one() { return integer(1); }
  // zeta_N^k
  static Scalar root_of_unity(int64_t n, int64_t k = 1);
  // Arbitrary coefficient vector in the power basis z^0..z^{N-1}; reduced.
  static Scalar cyclotomic(int64_t n, std::vector<Rat> power_coeffs);

  int64_t conductor() const { return n_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const { return n_ == 1; }
  const Rat& rat() const;  // requires is_rational

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  bool operator==(const Scalar& o) const;

  Scalar inv() const;
  Scalar pow(const Int& e) const;

  // If this is a root of unity, its order; nullopt otherwise (0 excluded).
  std::optional<int64_t> root_of_unity_order() const;

  // Rewrites in Q(zeta_m); n_ must divide m.
  Scalar promoted(int64_t m) const;

  std::string str() const;

 private:
  Scalar(int64_t n, std::vector<Rat> c) : n_(n), c_(std::move(c)) {}
  static Scalar reduced(int64_t n, std::vector<Rat> power_coeffs);
  void demote();

  int64_t n_;
  std::vector<Rat> c_;  // size 1 when n_ == 1, else phi(n_)
};

}  // namespace loopalg
