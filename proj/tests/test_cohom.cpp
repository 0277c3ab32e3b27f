#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "loopalg/cohom.hpp"
#include "loopalg/errors.hpp"

using namespace loopalg;

namespace {

Scalar q(int64_t n, int64_t d = 1) { return Scalar::rational(Rat(n, d)); }

CoeffGroup sign_group() { return CoeffGroup::values(ValueGroup(2, {})); }
CoeffGroup sign2() { return CoeffGroup::values(ValueGroup(2, {q(2)})); }
CoeffGroup mu4() { return CoeffGroup::values(ValueGroup(4, {})); }

CoeffElem ce(std::vector<int64_t> v) { return CoeffElem(v.begin(), v.end()); }

GroupElement el(std::vector<int64_t> c) { return GroupElement{std::move(c)}; }

// All coboundary tables over the given coefficient group (pure torsion), by
// brute-force enumeration of normalized one-cochains. Keys are flattened
// exponent strings.
std::set<std::string> all_coboundaries(const FiniteAbelianGroup& g, const CoeffGroup& coeffs) {
  int64_t t = coeffs.moduli()[0].convert_to<int64_t>();
  int64_t n = g.order();
  std::set<std::string> out;
  std::vector<int64_t> pick(n - 1, 0);
  for (;;) {
    OneCochain gamma = trivial_cochain(g, coeffs);
    for (int64_t i = 1; i < n; ++i) gamma.table[i][0] = pick[i - 1];
    SymCocycle d = coboundary(gamma);
    std::string key;
    for (const auto& e : d.table) key += e[0].str() + ",";
    out.insert(std::move(key));
    size_t j = 0;
    for (; j < pick.size(); ++j) {
      if (++pick[j] < t) break;
      pick[j] = 0;
    }
    if (j == pick.size()) break;
  }
  return out;
}

std::string table_key(const SymCocycle& c) {
  std::string key;
  for (const auto& e : c.table) key += e[0].str() + ",";
  return key;
}

}  // namespace

TEST_CASE("validate_cocycle basics") {
  FiniteAbelianGroup c4({4});
  CHECK_NOTHROW(validate_cocycle(c4, sign_group(),
                                 std::vector<CoeffElem>(16, sign_group().identity_elem())));

  FiniteAbelianGroup c2({2});
  // tau(h,h) = -1, others 1: valid.
  std::vector<CoeffElem> t(4, ce({0}));
  t[3] = ce({1});
  CHECK_NOTHROW(validate_cocycle(c2, sign_group(), t));

  // tau(e,h) = 2 over <-1;2>: NotNormalized.
  std::vector<CoeffElem> bad(4, ce({0, 0}));
  bad[1] = ce({0, 1});
  try {
    validate_cocycle(c2, sign2(), bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::kNotNormalized);
  }

  // Asymmetric table: NotSymmetric (on C2xC2 where an asymmetric pair exists).
  FiniteAbelianGroup c22({2, 2});
  std::vector<CoeffElem> asym(16, ce({0}));
  asym[1 * 4 + 2] = ce({1});  // (0,1),(1,0) entry differs from its mirror
  try {
    validate_cocycle(c22, sign_group(), asym);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::kNotSymmetric);
  }

  // Symmetric, normalized, but violating the cocycle identity.
  FiniteAbelianGroup c3({3});
  std::vector<CoeffElem> viol(9, ce({0}));
  viol[1 * 3 + 1] = ce({1});  // tau(1,1) = -1 alone on C3 breaks the identity
  try {
    validate_cocycle(c3, sign_group(), viol);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == errkind::kCocycleIdentityViolation);
  }

  // Normalization on load: constant-shifted table is accepted and normalized.
  std::vector<CoeffElem> shifted(4, ce({1}));
  shifted[3] = ce({0});  // tau = -1 everywhere except tau(h,h) = 1: tau/  -1 has tau(h,h) = -1
  SymCocycle norm = validate_cocycle(c2, sign_group(), shifted);
  CHECK(norm.at(el({0}), el({0})) == ce({0}));
  CHECK(norm.at(el({1}), el({1})) == ce({1}));
}

TEST_CASE("coboundary formula") {
  FiniteAbelianGroup c2({2});
  CHECK(coboundary(trivial_cochain(c2, sign2())) == trivial_cocycle(c2, sign2()));

  OneCochain g2 = trivial_cochain(c2, sign2());
  g2.table[1] = ce({0, 1});  // gamma(h) = 2
  SymCocycle d = coboundary(g2);
  CHECK(d.at(el({1}), el({1})) == ce({0, 2}));  // 4
  CHECK(d.scalar_at(el({1}), el({1})) == q(4));

  OneCochain g4 = trivial_cochain(c2, mu4());
  g4.table[1] = ce({1});  // gamma(h) = zeta_4
  SymCocycle d4 = coboundary(g4);
  CHECK(d4.scalar_at(el({1}), el({1})) == q(-1));
}

TEST_CASE("standard cocycle and class invariants") {
  FiniteAbelianGroup c4({4});
  CoeffGroup s = sign_group();

  SymCocycle triv = standard_cocycle(c4, s, {ce({0})});
  CHECK(triv == trivial_cocycle(c4, s));
  CHECK(class_invariants(triv).norms[0] == ce({0}));

  SymCocycle carry = standard_cocycle(c4, s, {ce({1})});
  CHECK_NOTHROW(validate_cocycle(c4, s, carry.table));
  CHECK(carry.at(el({3}), el({1})) == ce({1}));  // tau(g^3, g) = -1
  CHECK(carry.at(el({1}), el({1})) == ce({0}));  // tau(g, g) = 1
  CHECK(class_invariants(carry).norms[0] == ce({1}));

  FiniteAbelianGroup c22({2, 2});
  SymCocycle two = standard_cocycle(c22, s, {ce({1}), ce({1})});
  CHECK_NOTHROW(validate_cocycle(c22, s, two.table));
  auto inv = class_invariants(two);
  CHECK(inv.norms[0] == ce({1}));
  CHECK(inv.norms[1] == ce({1}));
  // Round trip through the representative.
  CHECK(classes_equal(inv.representative(), two).equal);

  // dgamma on C2 with gamma(h) = 2: norm 4, a square, so the class is trivial.
  FiniteAbelianGroup c2({2});
  OneCochain g2 = trivial_cochain(c2, sign2());
  g2.table[1] = ce({0, 1});
  auto inv2 = class_invariants(coboundary(g2));
  CHECK(inv2.norms[0] == ce({0, 2}));
  CHECK(sign2().power_witness(inv2.norms[0], 2));
}

TEST_CASE("classes_equal basics") {
  FiniteAbelianGroup c2({2});
  CoeffGroup s = sign_group();
  SymCocycle carry = standard_cocycle(c2, s, {ce({1})});

  auto self = classes_equal(carry, carry);
  REQUIRE(self.equal);
  for (const auto& e : self.witness->table) CHECK(s.is_identity(e));

  OneCochain g2 = trivial_cochain(c2, sign2());
  g2.table[1] = ce({1, 2});
  auto cb = classes_equal(coboundary(g2), trivial_cocycle(c2, sign2()));
  REQUIRE(cb.equal);

  auto ne = classes_equal(carry, trivial_cocycle(c2, s));
  CHECK(!ne.equal);
  CHECK(ne.failing_index == 0);
}

TEST_CASE("classes_equal agrees with the exhaustive coboundary oracle (small)") {
  std::mt19937_64 rng(20250101);
  for (auto factors : std::vector<std::vector<int64_t>>{{2}, {4}, {2, 2}}) {
    FiniteAbelianGroup g(factors);
    CoeffGroup coeffs = mu4();
    auto cobs = all_coboundaries(g, coeffs);

    // Candidate cocycles: all standard ones and their coboundary shifts.
    std::vector<SymCocycle> cands;
    std::vector<CoeffElem> vals{ce({0}), ce({1}), ce({2}), ce({3})};
    size_t nf = g.cyclic_factors().size();
    std::vector<size_t> pick(nf, 0);
    for (;;) {
      std::vector<CoeffElem> v;
      for (size_t i = 0; i < nf; ++i) v.push_back(vals[pick[i]]);
      cands.push_back(standard_cocycle(g, coeffs, v));
      size_t j = 0;
      for (; j < nf; ++j) {
        if (++pick[j] < vals.size()) break;
        pick[j] = 0;
      }
      if (j == nf) break;
    }
    size_t base = cands.size();
    std::uniform_int_distribution<int64_t> dv(0, 3);
    std::uniform_int_distribution<size_t> dc(0, base - 1);
    for (int k = 0; k < 6; ++k) {
      OneCochain gamma = trivial_cochain(g, coeffs);
      for (int64_t i = 1; i < g.order(); ++i) gamma.table[i][0] = dv(rng);
      cands.push_back(cocycle_mul(cands[dc(rng)], coboundary(gamma)));
    }

    for (const auto& a : cands)
      for (const auto& b : cands) {
        SymCocycle ratio = cocycle_mul(a, cocycle_inv(b));
        bool oracle = cobs.count(table_key(ratio)) > 0;
        auto fast = classes_equal(a, b);
        CHECK(fast.equal == oracle);
        if (fast.equal) {
          // tau1 = tau2 * d(witness)
          CHECK(cocycle_mul(b, coboundary(*fast.witness)) == a);
        }
      }
  }
}

TEST_CASE("restrict and inflate") {
  FiniteAbelianGroup c4({4});
  CoeffGroup s = sign_group();
  SymCocycle carry = standard_cocycle(c4, s, {ce({1})});

  Subgroup trivial_h = Subgroup::trivial_in(c4);
  SymCocycle r0 = restrict_cocycle(carry, trivial_h);
  CHECK(r0.group.order() == 1);
  CHECK(s.is_identity(r0.table[0]));

  Subgroup h = Subgroup::generated(c4, {el({2})});
  SymCocycle r = restrict_cocycle(carry, h);
  CHECK(r.group.invariant_factors() == std::vector<int64_t>{2});
  CHECK(r.at(el({1}), el({1})) == ce({1}));  // tau'(g^2,g^2) = -1

  CHECK(restrict_cocycle(trivial_cocycle(c4, s), h) == trivial_cocycle(r.group, s));

  // Inflation along C4 -> C4/<g^2> = C2.
  auto [qg, pi] = quotient(c4, h);
  SymCocycle mu = standard_cocycle(qg, s, {ce({1})});
  SymCocycle infl = inflate_cocycle(mu, pi);
  CHECK(infl.at(el({1}), el({1})) == ce({1}));  // tau(g,g) = mu(1,1) = -1
  CHECK(infl.at(el({1}), el({2})) == ce({0}));  // tau(g,g^2) = mu(1,0) = 1
  // Class of the inflation on C4 is mu(1,1)^2 = 1: trivial.
  CHECK(classes_equal(infl, trivial_cocycle(c4, s)).equal);

  // Over <-1;2> with mu(1,1) = 2 the inflated class is 4, not a 4th power.
  CoeffGroup s2 = sign2();
  SymCocycle mu2 = standard_cocycle(qg, s2, {ce({0, 1})});
  SymCocycle infl2 = inflate_cocycle(mu2, pi);
  auto inv = class_invariants(infl2);
  CHECK(inv.norms[0] == ce({0, 2}));
  CHECK(!s2.power_witness(inv.norms[0], 4));
}

TEST_CASE("section cocycle") {
  FiniteAbelianGroup c4({4});
  Subgroup h = Subgroup::generated(c4, {el({2})});
  auto [qg, pi] = quotient(c4, h);
  Section s = section(pi);
  SymCocycle sigma = section_cocycle(s, h);
  // sigma(e, x) = e
  for (const auto& x : qg.elements()) CHECK(sigma.coeffs.is_identity(sigma.at(qg.zero(), x)));
  // s(1) = g, so sigma(1,1) = 2g = g^2, which is the generator of H.
  CHECK(sigma.at(el({1}), el({1})) == ce({1}));

  // An alternative section with s(1) = g^3 gives the same sigma here.
  Section s3{pi, {el({0}), el({3})}};
  SymCocycle sigma3 = section_cocycle(s3, h);
  CHECK(sigma3.at(el({1}), el({1})) == ce({1}));  // g^3+g^3 = g^6 = g^2

  // Broken section is rejected.
  Section bad{pi, {el({0}), el({2})}};
  CHECK_THROWS_AS(section_cocycle(bad, h), Error);
}

TEST_CASE("delta") {
  FiniteAbelianGroup c4({4});
  Subgroup h = Subgroup::generated(c4, {el({2})});
  auto [qg, pi] = quotient(c4, h);
  SymCocycle sigma = section_cocycle(section(pi), h);

  // Trivial character -> trivial cocycle.
  Character triv = Character::create(h.as_group(), sign_group(), {ce({0})});
  CHECK(delta(triv, sigma) == trivial_cocycle(qg, sign_group()));

  // chi(g^2) = -1 -> delta(chi)(1,1) = -1.
  Character chi = Character::create(h.as_group(), sign_group(), {ce({1})});
  SymCocycle d = delta(chi, sigma);
  CHECK(d.at(el({1}), el({1})) == ce({1}));

  // Monomial map g^2 -> 2 over <-1;2>: valid here, invariant 2 is not a square.
  Character mono = Character::monomial(h.as_group(), sign2(), {ce({0, 1})});
  SymCocycle dm = delta(mono, sigma);
  auto inv = class_invariants(dm);
  CHECK(inv.norms[0] == ce({0, 1}));
  CHECK(!sign2().power_witness(inv.norms[0], 2));
}

TEST_CASE("extend_cocycle examples") {
  FiniteAbelianGroup c4({4});
  CoeffGroup s = sign_group();

  // H = <g^2>, tau'(g^2,g^2) = -1.
  Subgroup h = Subgroup::generated(c4, {el({2})});
  SymCocycle tp = standard_cocycle(h.as_group(), s, {ce({1})});
  SymCocycle tau = extend_cocycle(tp, h);
  CHECK(restrict_cocycle(tau, h) == tp);
  // The extension matches the carry cocycle with v = -1 as a class.
  CHECK(classes_equal(tau, standard_cocycle(c4, s, {ce({1})})).equal);

  // tau' trivial -> tau trivial.
  SymCocycle e = extend_cocycle(trivial_cocycle(h.as_group(), s), h);
  CHECK(e == trivial_cocycle(c4, s));

  // H = G.
  Subgroup whole = Subgroup::whole(c4);
  SymCocycle tpw = standard_cocycle(whole.as_group(), s, {ce({1})});
  SymCocycle tw = extend_cocycle(tpw, whole);
  CHECK(restrict_cocycle(tw, whole) == tpw);
}

TEST_CASE("extend_cocycle surjectivity sweep, |G| <= 16, invariants in {1,-1,2,-2}") {
  CoeffGroup s2 = sign2();
  std::vector<CoeffElem> vals{ce({0, 0}), ce({1, 0}), ce({0, 1}), ce({1, 1})};
  for (auto factors : std::vector<std::vector<int64_t>>{{8}, {2, 4}, {2, 2, 2}, {12}}) {
    FiniteAbelianGroup g(factors);
    for (const auto& h : all_subgroups(g)) {
      size_t nf = h.as_group().cyclic_factors().size();
      std::vector<size_t> pick(nf, 0);
      for (;;) {
        std::vector<CoeffElem> v;
        for (size_t i = 0; i < nf; ++i) v.push_back(vals[pick[i]]);
        SymCocycle tp = standard_cocycle(h.as_group(), s2, v);
        SymCocycle tau = extend_cocycle(tp, h);
        CHECK(restrict_cocycle(tau, h) == tp);
        size_t j = 0;
        for (; j < nf; ++j) {
          if (++pick[j] < vals.size()) break;
          pick[j] = 0;
        }
        if (j == nf) break;
        if (nf == 0) break;
      }
    }
  }
}

TEST_CASE("inflation preimage") {
  FiniteAbelianGroup c4({4});
  Subgroup h = Subgroup::generated(c4, {el({2})});
  auto [qg, pi] = quotient(c4, h);
  CoeffGroup s2 = sign2();

  // Trivial class -> trivial preimage (as a class).
  auto p0 = inflation_preimage(class_invariants(trivial_cocycle(c4, s2)), pi);
  REQUIRE(p0.found);
  CHECK(classes_equal(*p0.nu, trivial_cocycle(qg, s2)).equal);

  // Class of carry v = 4: preimage nu with nu(1,1) ~ 2.
  SymCocycle c4tau = standard_cocycle(c4, s2, {ce({0, 2})});
  auto p1 = inflation_preimage(class_invariants(c4tau), pi);
  REQUIRE(p1.found);
  auto nu_inv = class_invariants(*p1.nu);
  auto wit = s2.power_witness(
      s2.mul(nu_inv.norms[0], s2.inv(ce({0, 1}))), 2);
  CHECK(wit);  // nu(1,1) = 2 modulo squares

  // Class of carry v = 2: no preimage.
  SymCocycle bad = standard_cocycle(c4, s2, {ce({0, 1})});
  auto p2 = inflation_preimage(class_invariants(bad), pi);
  CHECK(!p2.found);
  CHECK(!p2.certificate.empty());
}

TEST_CASE("six-term exactness at the implemented points (C4, <g^2>)") {
  FiniteAbelianGroup c4({4});
  Subgroup h = Subgroup::generated(c4, {el({2})});
  auto [qg, pi] = quotient(c4, h);
  SymCocycle sigma = section_cocycle(section(pi), h);
  CoeffGroup coeffs = mu4();

  // (a) inflate(delta(chi)) is a coboundary for every character chi on H.
  for (const auto& chi : enumerate_characters(h.as_group(), coeffs)) {
    SymCocycle d = delta(chi, sigma);
    CHECK(classes_equal(inflate_cocycle(d, pi), trivial_cocycle(c4, coeffs)).equal);
  }

  // (b) delta of the restriction of a character of G is trivial.
  for (const auto& psi : enumerate_characters(c4, coeffs)) {
    // psi restricted to H: evaluate on the embedded generators.
    std::vector<CoeffElem> images;
    for (const auto& [gi, ni] : h.cyclic_decomposition()) images.push_back(psi.eval(gi));
    Character res = Character::create(h.as_group(), coeffs, images);
    SymCocycle d = delta(res, sigma);
    CHECK(classes_equal(d, trivial_cocycle(qg, coeffs)).equal);
  }
}

TEST_CASE("cocycle group structure and functoriality on seeded samples") {
  std::mt19937_64 rng(777);
  FiniteAbelianGroup g({2, 4});
  CoeffGroup coeffs = mu4();
  std::uniform_int_distribution<int64_t> dv(0, 3);

  auto random_cochain = [&]() {
    OneCochain gamma = trivial_cochain(g, coeffs);
    for (int64_t i = 1; i < g.order(); ++i) gamma.table[i][0] = dv(rng);
    return gamma;
  };
  auto random_cocycle = [&]() {
    std::vector<CoeffElem> v{ce({dv(rng)}), ce({dv(rng)})};
    return cocycle_mul(standard_cocycle(g, coeffs, v), coboundary(random_cochain()));
  };

  Subgroup h = Subgroup::generated(g, {el({1, 2})});
  auto [qg, pi] = quotient(g, h);

  for (int iter = 0; iter < 20; ++iter) {
    OneCochain g1 = random_cochain(), g2 = random_cochain();
    OneCochain g12 = trivial_cochain(g, coeffs);
    for (int64_t i = 0; i < g.order(); ++i) g12.table[i] = coeffs.mul(g1.table[i], g2.table[i]);
    CHECK(coboundary(g12) == cocycle_mul(coboundary(g1), coboundary(g2)));

    SymCocycle t1 = random_cocycle(), t2 = random_cocycle();
    SymCocycle prod = cocycle_mul(t1, t2);
    CHECK_NOTHROW(validate_cocycle(g, coeffs, prod.table));
    CHECK_NOTHROW(validate_cocycle(g, coeffs, cocycle_inv(t1).table));

    // Invariants are multiplicative.
    auto i1 = class_invariants(t1), i2 = class_invariants(t2), ip = class_invariants(prod);
    for (size_t k = 0; k < ip.norms.size(); ++k)
      CHECK(ip.norms[k] == coeffs.mul(i1.norms[k], i2.norms[k]));

    // restrict and inflate commute with products.
    CHECK(restrict_cocycle(prod, h) ==
          cocycle_mul(restrict_cocycle(t1, h), restrict_cocycle(t2, h)));
    SymCocycle m1 = standard_cocycle(qg, coeffs, {ce({dv(rng)})});
    SymCocycle m2 = standard_cocycle(qg, coeffs, {ce({dv(rng)})});
    CHECK(inflate_cocycle(cocycle_mul(m1, m2), pi) ==
          cocycle_mul(inflate_cocycle(m1, pi), inflate_cocycle(m2, pi)));
  }
}

TEST_CASE("character from real cocycle") {
  CoeffGroup s = sign_group();

  // Trivial input.
  FiniteAbelianGroup c2({2});
  auto r0 = character_from_real_cocycle(trivial_cocycle(c2, s));
  CHECK(r0.chi.is_trivial());
  for (const auto& e : r0.gamma.table) CHECK(r0.gamma.coeffs.is_identity(e));

  // C2 with tau(h,h) = -1: chi(h) = -1, z_h = zeta_4, dgamma = tau.
  SymCocycle t = standard_cocycle(c2, s, {ce({1})});
  auto r1 = character_from_real_cocycle(t);
  CHECK(r1.chi.codomain.embed(r1.chi.eval(el({1}))) == q(-1));
  CHECK(r1.gamma.coeffs.embed(r1.gamma.at(el({1}))) == Scalar::root_of_unity(4));
  CHECK(r1.dgamma == t);

  // C4 with the carry(-1) class needs an order-4 character.
  FiniteAbelianGroup c4({4});
  SymCocycle t4 = standard_cocycle(c4, s, {ce({1})});
  auto r4 = character_from_real_cocycle(t4);
  Scalar chi_g = r4.chi.codomain.embed(r4.chi.eval(el({1})));
  CHECK(chi_g.root_of_unity_order() == 4);
  CHECK(classes_equal(t4, r4.dgamma).equal);
  CHECK(cocycle_mul(r4.dgamma, coboundary(r4.coboundary_witness)) == t4);

  // C2 x C2 with carry(-1,-1): chi = (-1,-1) componentwise.
  FiniteAbelianGroup c22({2, 2});
  SymCocycle t22 = standard_cocycle(c22, s, {ce({1}), ce({1})});
  auto r22 = character_from_real_cocycle(t22);
  CHECK(r22.chi.codomain.embed(r22.chi.eval(el({1, 0}))) == q(-1));
  CHECK(r22.chi.codomain.embed(r22.chi.eval(el({0, 1}))) == q(-1));
  CHECK(classes_equal(t22, r22.dgamma).equal);

  // Wrong coefficient group is rejected.
  CHECK_THROWS_AS(character_from_real_cocycle(trivial_cocycle(c2, sign2())), Error);
}
