#include "loopalg/scalar.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

int64_t euler_phi(int64_t n) {
  int64_t result = n;
  for (int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Quotient of polynomial division num / den where den is monic; remainder must
// vanish. Coefficients constant-term first.
std::vector<Int> exact_poly_div(std::vector<Int> num, const std::vector<Int>& den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  std::vector<Int> q(dn - dd + 1);
  for (int i = dn - dd; i >= 0; --i) {
    Int c = num[i + dd];
    q[i] = c;
    for (int j = 0; j <= dd; ++j) num[i + j] -= c * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw Error(errkind::kBadArgument, "internal: inexact polynomial division");
  return q;
}

// Reduce a power-basis coefficient vector modulo Phi_n; result has size phi(n)
// (size 1 for n == 1).
std::vector<Rat> reduce_vec(int64_t n, std::vector<Rat> coeffs) {
  if (n == 1) {
    Rat v = coeffs.empty() ? Rat(0) : coeffs[0];
    for (size_t i = 1; i < coeffs.size(); ++i)
      if (coeffs[i] != 0)
        throw Error(errkind::kBadArgument, "conductor-1 value with nonconstant terms");
    return {std::move(v)};
  }
  const auto& phi = cyclotomic_polynomial(n);
  const size_t deg = phi.size() - 1;  // = euler_phi(n)
  for (size_t i = coeffs.size(); i-- > deg;) {
    Rat c = coeffs[i];
    if (c == 0) continue;
    coeffs[i] = 0;
    for (size_t j = 0; j < deg; ++j) coeffs[i - deg + j] -= c * Rat(phi[j]);
  }
  coeffs.resize(deg, Rat(0));
  return coeffs;
}

// Coefficient vector of x in Q(zeta_m) for n | m, reduced, not demoted.
std::vector<Rat> embed_vec(int64_t n, const std::vector<Rat>& c, int64_t m) {
  if (n == m) return c;
  if (n == 1) {
    std::vector<Rat> out(m == 1 ? 1 : static_cast<size_t>(euler_phi(m)), Rat(0));
    out[0] = c[0];
    return out;
  }
  const int64_t step = m / n;
  std::vector<Rat> coeffs(static_cast<size_t>((c.size() - 1) * step + 1), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) coeffs[i * static_cast<size_t>(step)] = c[i];
  return reduce_vec(m, std::move(coeffs));
}

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(int64_t n) {
  static std::map<int64_t, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::function<const std::vector<Int>&(int64_t)> get = [&](int64_t m) -> const std::vector<Int>& {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    std::vector<Int> num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (int64_t d = 1; d < m; ++d)
      if (m % d == 0) num = exact_poly_div(std::move(num), get(d));
    return cache.emplace(m, std::move(num)).first->second;
  };
  return get(n);
}

Scalar Scalar::reduced(int64_t n, std::vector<Rat> power_coeffs) {
  Scalar s(n, reduce_vec(n, std::move(power_coeffs)));
  s.demote();
  return s;
}

void Scalar::demote() {
  if (n_ == 1) return;
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  Rat v = c_[0];
  n_ = 1;
  c_ = {std::move(v)};
}

Scalar Scalar::root_of_unity(int64_t n, int64_t k) {
  if (n < 1) throw Error(errkind::kBadArgument, "root-of-unity order must be positive");
  k %= n;
  if (k < 0) k += n;
  if (n == 1 || k == 0) return one();
  if (n == 2) return integer(-1);
  std::vector<Rat> coeffs(static_cast<size_t>(k) + 1, Rat(0));
  coeffs[static_cast<size_t>(k)] = 1;
  return reduced(n, std::move(coeffs));
}

Scalar Scalar::cyclotomic(int64_t n, std::vector<Rat> power_coeffs) {
  if (n < 1) throw Error(errkind::kBadArgument, "conductor must be positive");
  if (n == 2) {
    Rat v(0);
    for (size_t i = 0; i < power_coeffs.size(); ++i)
      v += (i % 2 == 0) ? power_coeffs[i] : -power_coeffs[i];
    return Scalar(1, {std::move(v)});
  }
  return reduced(n, std::move(power_coeffs));
}

bool Scalar::is_zero() const {
  for (const Rat& x : c_)
    if (x != 0) return false;
  return true;
}

bool Scalar::is_one() const { return n_ == 1 && c_[0] == 1; }

const Rat& Scalar::rat() const {
  if (n_ != 1) throw Error(errkind::kBadArgument, "scalar is not rational");
  return c_[0];
}

Scalar Scalar::promoted(int64_t m) const {
  if (m % n_ != 0) throw Error(errkind::kBadArgument, "promotion target must be a multiple");
  if (m == n_) return *this;
  return Scalar(m, embed_vec(n_, c_, m));
}

Scalar Scalar::operator+(const Scalar& o) const {
  int64_t m = std::lcm(n_, o.n_);
  std::vector<Rat> a = embed_vec(n_, c_, m);
  std::vector<Rat> b = embed_vec(o.n_, o.c_, m);
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  Scalar s(m, std::move(a));
  s.demote();
  return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator-() const {
  Scalar a = *this;
  for (Rat& x : a.c_) x = -x;
  return a;
}

Scalar Scalar::operator*(const Scalar& o) const {
  int64_t m = std::lcm(n_, o.n_);
  std::vector<Rat> a = embed_vec(n_, c_, m);
  std::vector<Rat> b = embed_vec(o.n_, o.c_, m);
  std::vector<Rat> prod(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  return reduced(m, std::move(prod));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(errkind::kBadArgument, "division by zero");
  if (n_ == 1) return rational(Rat(1) / c_[0]);
  // Extended Euclid in Q[x] against the cyclotomic polynomial.
  const auto& phi_int = cyclotomic_polynomial(n_);
  std::vector<Rat> r0(phi_int.begin(), phi_int.end());
  std::vector<Rat> r1 = c_;
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
  auto degree = [](const std::vector<Rat>& p) { return static_cast<int>(p.size()) - 1; };
  while (degree(r1) > 0) {
    std::vector<Rat> q(degree(r0) - degree(r1) + 1, Rat(0));
    std::vector<Rat> r2 = r0;
    for (int i = degree(r0) - degree(r1); i >= 0; --i) {
      Rat c = r2[i + degree(r1)] / r1.back();
      q[i] = c;
      if (c == 0) continue;
      for (size_t j = 0; j < r1.size(); ++j) r2[i + j] -= c * r1[j];
    }
    while (!r2.empty() && r2.back() == 0) r2.pop_back();
    std::vector<Rat> s2 = s0;
    s2.resize(std::max(s0.size(), q.size() + s1.size() - 1), Rat(0));
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
    }
    while (!s2.empty() && s2.back() == 0) s2.pop_back();
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw Error(errkind::kBadArgument, "internal: zero divisor in cyclotomic field");
  for (Rat& x : s1) x /= r1[0];
  return reduced(n_, std::move(s1));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::pow(const Int& e) const {
  if (e < 0) return inv().pow(-e);
  Scalar base = *this;
  Scalar acc = one();
  Int k = e;
  while (k > 0) {
    if ((k & 1) != 0) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& o) const {
  if (n_ == o.n_) return c_ == o.c_;
  int64_t m = std::lcm(n_, o.n_);
  return embed_vec(n_, c_, m) == embed_vec(o.n_, o.c_, m);
}

std::optional<int64_t> Scalar::root_of_unity_order() const {
  if (is_zero()) return std::nullopt;
  if (n_ == 1) {
    if (c_[0] == 1) return 1;
    if (c_[0] == -1) return 2;
    return std::nullopt;
  }
  // Roots of unity in Q(zeta_N) have order dividing m below.
  const int64_t m = (n_ % 2 == 0) ? n_ : 2 * n_;
  if (!pow(m).is_one()) return std::nullopt;
  for (int64_t d = 1; d <= m; ++d)
    if (m % d == 0 && pow(d).is_one()) return d;
  return std::nullopt;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (n_ == 1) {
    os << c_[0];
    return os.str();
  }
  os << "zeta" << n_ << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << "]";
  return os.str();
}

}  // namespace loopalg
