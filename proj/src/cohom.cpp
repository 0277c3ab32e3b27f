#include "loopalg/cohom.hpp"

#include <algorithm>
#include <sstream>

#include "loopalg/errors.hpp"

namespace loopalg {

namespace {

std::optional<Int> solve_congruence(const Int& n, const Int& a, const Int& m) {
  // n x == a (mod m), m >= 1
  Int aa = a % m;
  if (aa < 0) aa += m;
  Int g = gcd(n % m, m);
  if (g == 0) g = m;  // n == 0 mod m
  if (aa % g != 0) return std::nullopt;
  Int mod = m / g;
  if (mod == 1) return Int(0);
  Int ng = (n % m) / g;
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
  Int x = (aa / g) * inv % mod;
  return x;
}

GroupElement to_group_element(const CoeffElem& e) {
  std::vector<int64_t> c(e.size());
  for (size_t i = 0; i < e.size(); ++i) c[i] = static_cast<int64_t>(e[i]);
  return GroupElement{std::move(c)};
}

}  // namespace

// ---------------------------------------------------------------------------
// CoeffGroup

CoeffGroup CoeffGroup::values(ValueGroup vg) {
  CoeffGroup c;
  c.kind_ = Kind::values;
  c.moduli_.push_back(Int(vg.torsion()));
  c.moduli_.insert(c.moduli_.end(), vg.free_basis().size(), Int(0));
  c.vg_ = std::move(vg);
  return c;
}

CoeffGroup CoeffGroup::group(FiniteAbelianGroup g) {
  CoeffGroup c;
  c.kind_ = Kind::group;
  for (int64_t n : g.invariant_factors()) c.moduli_.push_back(Int(n));
  c.ag_ = std::move(g);
  return c;
}

const ValueGroup& CoeffGroup::value_group() const {
  if (kind_ != Kind::values)
    throw Error(errkind::kBadArgument, "coefficient group is not a value group");
  return vg_;
}

const FiniteAbelianGroup& CoeffGroup::abelian() const {
  if (kind_ != Kind::group)
    throw Error(errkind::kBadArgument, "coefficient group is not an abelian group");
  return ag_;
}

std::vector<Int> CoeffGroup::reduce(std::vector<Int> e) const {
  if (e.size() != moduli_.size())
    throw Error(errkind::kBadArgument, "coefficient element has wrong length");
  for (size_t i = 0; i < e.size(); ++i) {
    if (moduli_[i] == 0) continue;
    e[i] %= moduli_[i];
    if (e[i] < 0) e[i] += moduli_[i];
  }
  return e;
}

std::vector<Int> CoeffGroup::mul(const std::vector<Int>& a, const std::vector<Int>& b) const {
  std::vector<Int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return reduce(std::move(out));
}

std::vector<Int> CoeffGroup::inv(const std::vector<Int>& a) const {
  std::vector<Int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
  return reduce(std::move(out));
}

std::vector<Int> CoeffGroup::power(const std::vector<Int>& a, const Int& n) const {
  std::vector<Int> out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] * n;
  return reduce(std::move(out));
}

bool CoeffGroup::is_identity(const std::vector<Int>& a) const {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

std::optional<std::vector<Int>> CoeffGroup::power_witness(const std::vector<Int>& a,
                                                          const Int& n) const {
  std::vector<Int> w(a.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (moduli_[i] == 0) {
      if (a[i] % n != 0) return std::nullopt;
      w[i] = a[i] / n;
    } else {
      auto x = solve_congruence(n, a[i], moduli_[i]);
      if (!x) return std::nullopt;
      w[i] = *x;
    }
  }
  return w;
}

Scalar CoeffGroup::embed(const std::vector<Int>& a) const {
  return value_embed(value_group(), to_value(a));
}

std::vector<Int> CoeffGroup::from_value(const ValueElement& v) const {
  std::vector<Int> out;
  out.reserve(1 + v.free_exps.size());
  out.push_back(v.torsion_exp);
  for (const Int& e : v.free_exps) out.push_back(e);
  if (out.size() != moduli_.size())
    throw Error(errkind::kBadArgument, "value element has wrong basis length");
  return reduce(std::move(out));
}

ValueElement CoeffGroup::to_value(const std::vector<Int>& a) const {
  ValueElement v;
  v.torsion_exp = a[0];
  v.free_exps.assign(a.begin() + 1, a.end());
  return v;
}

FiniteAbelianGroup CoeffGroup::torsion_subgroup() const {
  if (kind_ == Kind::group) return ag_;
  int64_t t = vg_.torsion();
  if (t <= 1) return FiniteAbelianGroup::trivial();
  return FiniteAbelianGroup({t}, t);
}

std::vector<Int> CoeffGroup::from_torsion(const GroupElement& t) const {
  if (kind_ == Kind::group) {
    std::vector<Int> out(t.c.begin(), t.c.end());
    return reduce(std::move(out));
  }
  std::vector<Int> out = identity_elem();
  if (!t.c.empty()) out[0] = t.c[0];
  return reduce(std::move(out));
}

std::string CoeffGroup::show(const std::vector<Int>& a) const {
  if (kind_ == Kind::values) return embed(a).str();
  std::ostringstream os;
  os << '(';
  for (size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

bool CoeffGroup::operator==(const CoeffGroup& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::values) return vg_ == o.vg_;
  return ag_ == o.ag_;
}

// ---------------------------------------------------------------------------
// Construction and validation

SymCocycle validate_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                            std::vector<CoeffElem> table) {
  const int64_t n = g.order();
  if (static_cast<int64_t>(table.size()) != n * n)
    throw Error(errkind::kBadDocument, "cocycle table has wrong size");
  for (auto& e : table) e = coeffs.reduce(std::move(e));

  // Normalize on load: divide the whole table by tau(e,e).
  const CoeffElem off = table[0];
  if (!coeffs.is_identity(off)) {
    const CoeffElem corr = coeffs.inv(off);
    for (auto& e : table) e = coeffs.mul(e, corr);
  }

  SymCocycle tau{g, coeffs, std::move(table)};
  for (int64_t i = 0; i < n; ++i) {
    if (!coeffs.is_identity(tau.at(int64_t(0), i)))
      throw Error(errkind::kNotNormalized,
                  "tau(e, " + g.show(g.element_at(i)) + ") is not the identity");
    if (!coeffs.is_identity(tau.at(i, int64_t(0))))
      throw Error(errkind::kNotNormalized,
                  "tau(" + g.show(g.element_at(i)) + ", e) is not the identity");
  }
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = i + 1; j < n; ++j)
      if (tau.at(i, j) != tau.at(j, i))
        throw Error(errkind::kNotSymmetric, "witness pair (" + g.show(g.element_at(i)) + ", " +
                                                g.show(g.element_at(j)) + ")");
  auto elems = g.elements();
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b) {
      int64_t abi = g.index_of(g.add(elems[a], elems[b]));
      for (int64_t c = 0; c < n; ++c) {
        int64_t bci = g.index_of(g.add(elems[b], elems[c]));
        CoeffElem lhs = coeffs.mul(tau.at(a, b), tau.at(abi, c));
        CoeffElem rhs = coeffs.mul(tau.at(a, bci), tau.at(b, c));
        if (lhs != rhs)
          throw Error(errkind::kCocycleIdentityViolation,
                      "witness triple (" + g.show(elems[a]) + ", " + g.show(elems[b]) + ", " +
                          g.show(elems[c]) + ")");
      }
    }
  return tau;
}

SymCocycle trivial_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs) {
  return SymCocycle{g, coeffs,
                    std::vector<CoeffElem>(g.order() * g.order(), coeffs.identity_elem())};
}

OneCochain one_cochain(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                       std::vector<CoeffElem> table) {
  if (static_cast<int64_t>(table.size()) != g.order())
    throw Error(errkind::kBadDocument, "one-cochain table has wrong size");
  for (auto& e : table) e = coeffs.reduce(std::move(e));
  if (!coeffs.is_identity(table[0]))
    throw Error(errkind::kBadDocument, "one-cochain must send e to the identity");
  return OneCochain{g, coeffs, std::move(table)};
}

OneCochain trivial_cochain(const FiniteAbelianGroup& g, const CoeffGroup& coeffs) {
  return OneCochain{g, coeffs, std::vector<CoeffElem>(g.order(), coeffs.identity_elem())};
}

SymCocycle coboundary(const OneCochain& gamma) {
  const auto& g = gamma.group;
  const auto& coeffs = gamma.coeffs;
  const int64_t n = g.order();
  std::vector<CoeffElem> table(n * n, coeffs.identity_elem());
  auto elems = g.elements();
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b) {
      const CoeffElem& ga = gamma.table[a];
      const CoeffElem& gb = gamma.table[b];
      const CoeffElem& gab = gamma.table[g.index_of(g.add(elems[a], elems[b]))];
      table[a * n + b] = coeffs.mul(coeffs.mul(ga, gb), coeffs.inv(gab));
    }
  return SymCocycle{g, coeffs, std::move(table)};
}

namespace {

// Coordinate positions of the nontrivial cyclic factors.
std::vector<size_t> factor_positions(const FiniteAbelianGroup& g) {
  std::vector<size_t> pos;
  for (size_t i = 0; i < g.invariant_factors().size(); ++i)
    if (g.invariant_factors()[i] > 1) pos.push_back(i);
  return pos;
}

}  // namespace

SymCocycle standard_cocycle(const FiniteAbelianGroup& g, const CoeffGroup& coeffs,
                            const std::vector<CoeffElem>& v) {
  auto factors = g.cyclic_factors();
  if (v.size() != factors.size())
    throw Error(errkind::kBadArgument, "one value per cyclic factor expected");
  auto pos = factor_positions(g);
  const int64_t n = g.order();
  std::vector<CoeffElem> table(n * n, coeffs.identity_elem());
  auto elems = g.elements();
  for (int64_t a = 0; a < n; ++a)
    for (int64_t b = 0; b < n; ++b) {
      CoeffElem val = coeffs.identity_elem();
      for (size_t i = 0; i < pos.size(); ++i) {
        int64_t ni = g.invariant_factors()[pos[i]];
        if (elems[a].c[pos[i]] + elems[b].c[pos[i]] >= ni) val = coeffs.mul(val, v[i]);
      }
      table[a * n + b] = std::move(val);
    }
  return SymCocycle{g, coeffs, std::move(table)};
}

SymCocycle cocycle_mul(const SymCocycle& a, const SymCocycle& b) {
  if (!(a.group == b.group) || !(a.coeffs == b.coeffs))
    throw Error(errkind::kBadArgument, "cocycles live on different groups or coefficients");
  SymCocycle out = a;
  for (size_t i = 0; i < out.table.size(); ++i) out.table[i] = a.coeffs.mul(a.table[i], b.table[i]);
  return out;
}

SymCocycle cocycle_inv(const SymCocycle& a) {
  SymCocycle out = a;
  for (auto& e : out.table) e = a.coeffs.inv(e);
  return out;
}

SymCocycle convert_cocycle(const SymCocycle& t, const CoeffGroup& target) {
  if (t.coeffs == target) return t;
  if (t.coeffs.kind() != CoeffGroup::Kind::values || target.kind() != CoeffGroup::Kind::values)
    throw Error(errkind::kBadArgument, "conversion needs value-group coefficients");
  SymCocycle out{t.group, target, {}};
  out.table.reserve(t.table.size());
  for (const auto& e : t.table) {
    FactorResult f = factor_into_value_group(t.coeffs.embed(e), target.value_group());
    out.table.push_back(target.from_value(f.element));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Class computations

StandardReduction reduce_to_standard(const SymCocycle& rho) {
  const auto& g = rho.group;
  const auto& coeffs = rho.coeffs;
  auto factors = g.cyclic_factors();
  auto pos = factor_positions(g);

  // Powers of the canonical section: s(g_i)^k = (P[i][k], k g_i).
  std::vector<std::vector<CoeffElem>> p(factors.size());
  for (size_t i = 0; i < factors.size(); ++i) {
    const auto& [gi, ni] = factors[i];
    p[i].assign(ni + 1, coeffs.identity_elem());
    GroupElement acc = g.zero();
    for (int64_t k = 1; k <= ni; ++k) {
      p[i][k] = coeffs.mul(p[i][k - 1], rho.at(acc, gi));
      acc = g.add(acc, gi);
    }
  }

  StandardReduction out{trivial_cochain(g, coeffs), {}};
  for (size_t i = 0; i < factors.size(); ++i) out.norms.push_back(p[i][factors[i].second]);

  auto elems = g.elements();
  for (int64_t x = 0; x < g.order(); ++x) {
    CoeffElem val = coeffs.identity_elem();
    GroupElement partial = g.zero();
    for (size_t i = 0; i < factors.size(); ++i) {
      int64_t k = elems[x].c[pos[i]];
      if (k == 0) continue;
      GroupElement kgi = g.smul(k, factors[i].first);
      val = coeffs.mul(val, coeffs.mul(p[i][k], rho.at(partial, kgi)));
      partial = g.add(partial, kgi);
    }
    out.gamma.table[x] = std::move(val);
  }
  return out;
}

CohomClass class_invariants(const SymCocycle& tau) {
  const auto& g = tau.group;
  CohomClass out{g, tau.coeffs, g.cyclic_factors(), {}};
  for (const auto& [gi, ni] : out.factors) {
    CoeffElem norm = tau.coeffs.identity_elem();
    GroupElement acc = g.zero();
    for (int64_t k = 0; k < ni; ++k) {
      norm = tau.coeffs.mul(norm, tau.at(acc, gi));
      acc = g.add(acc, gi);
    }
    out.norms.push_back(std::move(norm));
  }
  return out;
}

SymCocycle CohomClass::representative() const { return standard_cocycle(group, coeffs, norms); }

ClassComparison classes_equal(const SymCocycle& tau1, const SymCocycle& tau2) {
  if (!(tau1.group == tau2.group) || !(tau1.coeffs == tau2.coeffs))
    throw Error(errkind::kBadArgument, "class comparison needs identical group and coefficients");
  const auto& g = tau1.group;
  const auto& coeffs = tau1.coeffs;
  SymCocycle rho = cocycle_mul(tau1, cocycle_inv(tau2));
  StandardReduction red = reduce_to_standard(rho);
  auto factors = g.cyclic_factors();
  auto pos = factor_positions(g);

  std::vector<CoeffElem> w;
  for (size_t i = 0; i < factors.size(); ++i) {
    auto wi = coeffs.power_witness(red.norms[i], Int(factors[i].second));
    if (!wi) {
      ClassComparison out;
      out.equal = false;
      out.failing_index = static_cast<int>(i);
      return out;
    }
    w.push_back(std::move(*wi));
  }

  // rho * d(gamma_red) = std(norms) = d(eta) with eta(x) = sum_i k_i(x) w_i,
  // hence rho = d(eta - gamma_red).
  OneCochain witness = trivial_cochain(g, coeffs);
  auto elems = g.elements();
  for (int64_t x = 0; x < g.order(); ++x) {
    CoeffElem val = coeffs.identity_elem();
    for (size_t i = 0; i < factors.size(); ++i)
      val = coeffs.mul(val, coeffs.power(w[i], Int(elems[x].c[pos[i]])));
    witness.table[x] = coeffs.mul(val, coeffs.inv(red.gamma.table[x]));
  }
  if (!(coboundary(witness) == rho))
    throw Error(errkind::kCertificateFailure, "internal: coboundary witness failed to verify");
  ClassComparison out;
  out.equal = true;
  out.witness = std::move(witness);
  return out;
}

// ---------------------------------------------------------------------------
// Maps of the long exact sequence

SymCocycle restrict_cocycle(const SymCocycle& tau, const Subgroup& h) {
  if (!(h.parent() == tau.group))
    throw Error(errkind::kGroupMismatch, "subgroup parent differs from the cocycle group");
  const auto& habs = h.as_group();
  const int64_t n = habs.order();
  std::vector<CoeffElem> table;
  table.reserve(n * n);
  auto elems = habs.elements();
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) table.push_back(tau.at(h.embed(elems[i]), h.embed(elems[j])));
  return SymCocycle{habs, tau.coeffs, std::move(table)};
}

SymCocycle inflate_cocycle(const SymCocycle& mu, const GroupHom& pi) {
  if (!(pi.codomain() == mu.group))
    throw Error(errkind::kGroupMismatch, "projection codomain differs from the cocycle group");
  const auto& g = pi.domain();
  const int64_t n = g.order();
  std::vector<CoeffElem> table;
  table.reserve(n * n);
  auto elems = g.elements();
  std::vector<GroupElement> proj(n);
  for (int64_t i = 0; i < n; ++i) proj[i] = pi.apply(elems[i]);
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) table.push_back(mu.at(proj[i], proj[j]));
  return SymCocycle{g, mu.coeffs, std::move(table)};
}

SymCocycle section_cocycle(const Section& s, const Subgroup& h) {
  const GroupHom& pi = s.pi;
  if (!(h.parent() == pi.domain()))
    throw Error(errkind::kGroupMismatch, "subgroup parent differs from the projection domain");
  const auto& q = pi.codomain();
  for (const auto& qe : q.elements())
    if (!(pi.apply(s.apply(qe)) == qe))
      throw Error(errkind::kSectionInvalid, "pi(s(q)) != q at q = " + q.show(qe));
  const auto& habs = h.as_group();
  CoeffGroup coeffs = CoeffGroup::group(habs);
  const int64_t n = q.order();
  std::vector<CoeffElem> table;
  table.reserve(n * n);
  auto elems = q.elements();
  const auto& g = pi.domain();
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) {
      GroupElement x =
          g.sub(g.add(s.apply(elems[i]), s.apply(elems[j])), s.apply(q.add(elems[i], elems[j])));
      if (!h.contains(x))
        throw Error(errkind::kSectionInvalid,
                    "section defect " + g.show(x) + " lies outside the subgroup");
      GroupElement hc = h.coords_of(x);
      table.push_back(coeffs.reduce(std::vector<Int>(hc.c.begin(), hc.c.end())));
    }
  return SymCocycle{q, coeffs, std::move(table)};
}

Character Character::create(FiniteAbelianGroup domain, CoeffGroup codomain,
                            std::vector<CoeffElem> gen_images) {
  auto factors = domain.cyclic_factors();
  if (gen_images.size() != factors.size())
    throw Error(errkind::kBadArgument, "one image per cyclic factor expected");
  for (size_t i = 0; i < factors.size(); ++i) {
    CoeffElem img = codomain.reduce(gen_images[i]);
    if (!codomain.is_identity(codomain.power(img, Int(factors[i].second))))
      throw Error(errkind::kBadArgument, "character image order does not divide the factor order");
    gen_images[i] = std::move(img);
  }
  return Character{std::move(domain), std::move(codomain), std::move(gen_images)};
}

Character Character::monomial(FiniteAbelianGroup domain, CoeffGroup codomain,
                              std::vector<CoeffElem> gen_images) {
  auto factors = domain.cyclic_factors();
  if (gen_images.size() != factors.size())
    throw Error(errkind::kBadArgument, "one image per cyclic factor expected");
  for (auto& img : gen_images) img = codomain.reduce(std::move(img));
  return Character{std::move(domain), std::move(codomain), std::move(gen_images)};
}

CoeffElem Character::eval(const GroupElement& x) const {
  auto pos = factor_positions(domain);
  CoeffElem out = codomain.identity_elem();
  for (size_t i = 0; i < pos.size(); ++i)
    out = codomain.mul(out, codomain.power(gen_images[i], Int(x.c[pos[i]])));
  return out;
}

bool Character::is_trivial() const {
  for (const auto& img : gen_images)
    if (!codomain.is_identity(img)) return false;
  return true;
}

SymCocycle delta(const Character& chi, const SymCocycle& sigma) {
  if (sigma.coeffs.kind() != CoeffGroup::Kind::group || !(sigma.coeffs.abelian() == chi.domain))
    throw Error(errkind::kBadArgument, "section cocycle values must live in the character domain");
  std::vector<CoeffElem> table;
  table.reserve(sigma.table.size());
  for (const auto& e : sigma.table) table.push_back(chi.eval(to_group_element(e)));
  // For an honest character the composition is automatically a cocycle; for a
  // monomial map it is checked here.
  return validate_cocycle(sigma.group, chi.codomain, std::move(table));
}

std::vector<Character> enumerate_characters(const FiniteAbelianGroup& h, const CoeffGroup& into) {
  FiniteAbelianGroup t = into.torsion_subgroup();
  std::vector<Character> out;
  for (const GroupHom& f : hom_group(h, t)) {
    std::vector<CoeffElem> images;
    for (const auto& [gi, ni] : h.cyclic_factors())
      images.push_back(into.from_torsion(f.apply(gi)));
    out.push_back(Character::create(h, into, std::move(images)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle extension and inflation preimages

namespace {

// counts[i][j]: number of carries in the j-th cyclic factor of the target
// group along the norm of the i-th given generator.
std::vector<std::vector<Int>> carry_counts(
    const FiniteAbelianGroup& g, const std::vector<std::pair<GroupElement, int64_t>>& hgens,
    const GroupHom* pi) {
  const FiniteAbelianGroup& target = pi ? pi->codomain() : g;
  auto pos = factor_positions(target);
  std::vector<std::vector<Int>> counts(hgens.size(), std::vector<Int>(pos.size(), Int(0)));
  for (size_t i = 0; i < hgens.size(); ++i) {
    const auto& [hi, ni] = hgens[i];
    GroupElement hi_t = pi ? pi->apply(hi) : hi;
    GroupElement acc = target.zero();
    for (int64_t k = 0; k < ni; ++k) {
      for (size_t j = 0; j < pos.size(); ++j) {
        int64_t nj = target.invariant_factors()[pos[j]];
        if (acc.c[pos[j]] + hi_t.c[pos[j]] >= nj) ++counts[i][j];
      }
      acc = target.add(acc, hi_t);
    }
  }
  return counts;
}

struct InvariantSolve {
  bool found = false;
  std::vector<CoeffElem> v;
  std::string certificate;
};

// Solve sum_j counts[i][j] * v_j == targets[i] modulo orders[i]-th powers.
InvariantSolve solve_invariant_matching(const CoeffGroup& coeffs,
                                        const std::vector<std::vector<Int>>& counts,
                                        const std::vector<CoeffElem>& targets,
                                        const std::vector<int64_t>& orders, size_t num_unknowns) {
  const int d = coeffs.dim();
  const int rows = static_cast<int>(targets.size()) * d;
  const int cols = static_cast<int>(num_unknowns) * d + static_cast<int>(targets.size()) * d;
  IntMat c(rows, cols);
  std::vector<Int> moduli(rows), rhs(rows);
  for (size_t i = 0; i < targets.size(); ++i)
    for (int cc = 0; cc < d; ++cc) {
      const int r = static_cast<int>(i) * d + cc;
      for (size_t j = 0; j < num_unknowns; ++j)
        c.at(r, static_cast<int>(j) * d + cc) = counts[i][j];
      c.at(r, static_cast<int>(num_unknowns) * d + static_cast<int>(i) * d + cc) =
          -Int(orders[i]);
      moduli[r] = coeffs.moduli()[cc];
      rhs[r] = targets[i][cc];
    }
  CongruenceSolution sol = integer_affine_solve(c, moduli, rhs);
  InvariantSolve out;
  if (!sol.solvable) {
    out.certificate = sol.certificate;
    return out;
  }
  out.found = true;
  for (size_t j = 0; j < num_unknowns; ++j) {
    CoeffElem vj(d, Int(0));
    for (int cc = 0; cc < d; ++cc) vj[cc] = sol.x[j * d + cc];
    out.v.push_back(coeffs.reduce(std::move(vj)));
  }
  return out;
}

}  // namespace

SymCocycle extend_cocycle(const SymCocycle& tau_prime, const Subgroup& h) {
  if (!(tau_prime.group == h.as_group()))
    throw Error(errkind::kGroupMismatch, "tau' must live on the abstract group of the subgroup");
  const FiniteAbelianGroup& g = h.parent();
  const CoeffGroup& coeffs = tau_prime.coeffs;

  // (a) Standard cocycle on G whose restriction class matches tau'.
  CohomClass target = class_invariants(tau_prime);
  std::vector<int64_t> orders;
  for (const auto& [hi, ni] : h.cyclic_decomposition()) orders.push_back(ni);
  auto counts = carry_counts(g, h.cyclic_decomposition(), nullptr);
  InvariantSolve solved =
      solve_invariant_matching(coeffs, counts, target.norms, orders, g.cyclic_factors().size());
  if (!solved.found)
    throw Error(errkind::kCertificateFailure,
                "internal: invariant matching unsolvable, contradicting the surjectivity of the "
                "restriction map (" +
                    solved.certificate + ")");
  SymCocycle tilde = standard_cocycle(g, coeffs, solved.v);

  // (b) tau' and the restriction of tilde are cohomologous on H.
  ClassComparison cmp = classes_equal(tau_prime, restrict_cocycle(tilde, h));
  if (!cmp.equal)
    throw Error(errkind::kCertificateFailure,
                "internal: matched invariants but classes differ on the subgroup");

  // (c) Extend gamma by the identity off H.
  OneCochain gamma_tilde = trivial_cochain(g, coeffs);
  const auto& habs = h.as_group();
  for (const auto& t : habs.elements())
    gamma_tilde.table[g.index_of(h.embed(t))] = cmp.witness->table[habs.index_of(t)];
  SymCocycle tau = cocycle_mul(tilde, coboundary(gamma_tilde));

  if (!(restrict_cocycle(tau, h) == tau_prime))
    throw Error(errkind::kCertificateFailure, "internal: extension failed entrywise restriction");
  return tau;
}

PreimageResult inflation_preimage(const CohomClass& c, const GroupHom& pi) {
  if (!(pi.domain() == c.group))
    throw Error(errkind::kGroupMismatch, "class lives on a different group than the projection");
  const FiniteAbelianGroup& q = pi.codomain();
  std::vector<int64_t> orders;
  for (const auto& [gi, ni] : c.factors) orders.push_back(ni);
  auto counts = carry_counts(c.group, c.factors, &pi);
  InvariantSolve solved =
      solve_invariant_matching(c.coeffs, counts, c.norms, orders, q.cyclic_factors().size());
  PreimageResult out;
  if (!solved.found) {
    out.certificate = solved.certificate;
    return out;
  }
  out.found = true;
  out.nu = standard_cocycle(q, c.coeffs, solved.v);
  ClassComparison check = classes_equal(inflate_cocycle(*out.nu, pi), c.representative());
  if (!check.equal)
    throw Error(errkind::kCertificateFailure, "internal: inflation preimage failed to verify");
  return out;
}

// ---------------------------------------------------------------------------
// The real case (sign-valued cocycles)

RealCharacterResult character_from_real_cocycle(const SymCocycle& tau) {
  if (tau.coeffs.kind() != CoeffGroup::Kind::values || tau.coeffs.value_group().torsion() != 2 ||
      !tau.coeffs.value_group().free_basis().empty())
    throw Error(errkind::kBadArgument,
                "the real-case construction requires the sign coefficient group");
  const FiniteAbelianGroup& g = tau.group;
  const int64_t m = 2 * g.exponent();

  CohomClass cls = class_invariants(tau);
  // chi(g_i) = zeta_{n_i} exactly when the i-th invariant is nontrivial.
  CoeffGroup mu_m = CoeffGroup::values(ValueGroup(m, {}));
  std::vector<CoeffElem> images;
  std::vector<int64_t> t_exps;  // chi(g_i) = zeta_m^{t_i}
  for (size_t i = 0; i < cls.factors.size(); ++i) {
    int64_t ni = cls.factors[i].second;
    bool trivial = static_cast<bool>(tau.coeffs.power_witness(cls.norms[i], Int(ni)));
    int64_t t = trivial ? 0 : m / ni;
    t_exps.push_back(t);
    CoeffElem img = mu_m.identity_elem();
    img[0] = t;
    images.push_back(std::move(img));
  }
  Character chi = Character::create(g, mu_m, images);

  // Square roots z_g = zeta_{2m}^{t(g)} with t(g) = sum_i k_i t_i (mod m).
  CoeffGroup mu_2m = CoeffGroup::values(ValueGroup(2 * m, {}));
  OneCochain gamma = trivial_cochain(g, mu_2m);
  auto pos = factor_positions(g);
  auto elems = g.elements();
  for (int64_t x = 0; x < g.order(); ++x) {
    int64_t t = 0;
    for (size_t i = 0; i < pos.size(); ++i) t += elems[x].c[pos[i]] * t_exps[i];
    gamma.table[x][0] = t % m;  // principal square root of chi in zeta_{2m} exponents
  }

  // d(gamma) is +-1 valued; rewrite over the sign group.
  SymCocycle dg2m = coboundary(gamma);
  SymCocycle dgamma = trivial_cocycle(g, tau.coeffs);
  for (size_t i = 0; i < dg2m.table.size(); ++i) {
    Int e = dg2m.table[i][0];
    if (e % m != 0)
      throw Error(errkind::kCertificateFailure, "internal: d(gamma) is not sign-valued");
    dgamma.table[i][0] = (e / m) % 2;
  }

  ClassComparison cert = classes_equal(tau, dgamma);
  if (!cert.equal)
    throw Error(errkind::kCertificateFailure,
                "internal: [tau] != [d gamma] for the constructed character");
  return RealCharacterResult{std::move(chi), std::move(gamma), std::move(dgamma),
                             std::move(*cert.witness)};
}

}  // namespace loopalg
