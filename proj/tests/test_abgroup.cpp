#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <set>

#include "loopalg/abgroup.hpp"
#include "loopalg/errors.hpp"

using namespace loopalg;

namespace {

GroupElement el(std::vector<int64_t> c) { return GroupElement{std::move(c)}; }

// Every abelian group type of order <= max_order, as invariant factor chains.
std::vector<FiniteAbelianGroup> groups_up_to(int64_t max_order) {
  std::vector<FiniteAbelianGroup> out;
  std::vector<std::vector<int64_t>> stack{{}};
  // Build divisibility chains n1 | n2 | ... with product <= max_order.
  std::function<void(std::vector<int64_t>, int64_t)> rec = [&](std::vector<int64_t> chain,
                                                               int64_t prod) {
    out.push_back(FiniteAbelianGroup(chain, max_order));
    int64_t start = chain.empty() ? 2 : chain.back();
    for (int64_t n = start; prod * n <= max_order; ++n) {
      if (!chain.empty() && n % chain.back() != 0) continue;
      auto next = chain;
      next.push_back(n);
      rec(std::move(next), prod * n);
    }
  };
  rec({}, 1);
  return out;
}

}  // namespace

TEST_CASE("group basics") {
  FiniteAbelianGroup g({2, 4});
  CHECK(g.order() == 8);
  CHECK(g.exponent() == 4);
  CHECK(g.add(el({1, 3}), el({1, 2})) == el({0, 1}));
  CHECK(g.neg(el({1, 3})) == el({1, 1}));
  CHECK(g.element_order(el({1, 2})) == 2);
  CHECK(g.element_order(el({0, 1})) == 4);
  for (int64_t i = 0; i < g.order(); ++i) CHECK(g.index_of(g.element_at(i)) == i);
  CHECK_THROWS_AS(FiniteAbelianGroup({3, 4}), Error);   // not a chain
  CHECK_THROWS_AS(FiniteAbelianGroup({2, 256}), Error); // cap
}

TEST_CASE("quotient C4 by <2> is C2") {
  FiniteAbelianGroup c4({4});
  Subgroup h = Subgroup::generated(c4, {el({2})});
  auto [q, pi] = quotient(c4, h);
  CHECK(q.invariant_factors() == std::vector<int64_t>{2});
  CHECK(pi.apply(el({1})) != q.zero());  // generator maps to generator
  // Coset enumeration oracle: fibers of pi are exactly the cosets of h.
  std::map<int64_t, std::set<int64_t>> fibers;
  for (const auto& x : c4.elements()) fibers[q.index_of(pi.apply(x))].insert(c4.index_of(x));
  CHECK(fibers.size() == static_cast<size_t>(q.order()));
  for (auto& [qi, fiber] : fibers) CHECK(fiber.size() == static_cast<size_t>(h.order()));
  // Kernel is exactly h.
  CHECK(pi.kernel() == h);
}

TEST_CASE("quotient trivial cases") {
  FiniteAbelianGroup g({2, 4});
  auto [q1, pi1] = quotient(g, Subgroup::whole(g));
  CHECK(q1.order() == 1);
  auto [q2, pi2] = quotient(g, Subgroup::trivial_in(g));
  CHECK(q2.invariant_factors() == g.invariant_factors());
  for (const auto& x : g.elements()) CHECK(pi2.apply(x) == x);
  FiniteAbelianGroup other({2});
  CHECK_THROWS_AS(quotient(other, Subgroup::whole(g)), Error);
}

TEST_CASE("section picks least lexicographic preimages") {
  FiniteAbelianGroup c4({4});
  auto [q, pi] = quotient(c4, Subgroup::generated(c4, {el({2})}));
  Section s = section(pi);
  CHECK(s.apply(q.zero()) == c4.zero());
  for (const auto& qe : q.elements()) CHECK(pi.apply(s.apply(qe)) == qe);
  CHECK(s.table[1] == el({1}));

  Section sid = section(GroupHom::identity(c4));
  for (const auto& x : c4.elements()) CHECK(sid.apply(x) == x);

  // C2 x C4 -> C2 x C2 reducing the second factor mod 2.
  FiniteAbelianGroup g({2, 4}), t({2, 2});
  IntMat m = IntMat::identity(2);
  GroupHom pr = GroupHom::create(g, t, m);
  Section s3 = section(pr);
  for (const auto& qe : t.elements()) {
    CHECK(pr.apply(s3.apply(qe)) == qe);
    CHECK(s3.apply(qe).c[1] <= 1);  // reduced representative
  }

  // Non-surjective map is rejected.
  IntMat two(1, 1);
  two.at(0, 0) = 2;
  GroupHom doubling = GroupHom::create(c4, c4, two);
  CHECK_THROWS_AS(section(doubling), Error);
}

TEST_CASE("cyclic decomposition") {
  FiniteAbelianGroup g({2, 4});
  CHECK(Subgroup::trivial_in(g).cyclic_decomposition().empty());

  Subgroup h = Subgroup::generated(g, {el({1, 2})});
  auto dec = h.cyclic_decomposition();
  REQUIRE(dec.size() == 1);
  CHECK(dec[0].second == 2);
  CHECK(g.element_order(dec[0].first) == 2);

  Subgroup whole = Subgroup::whole(g);
  auto dec2 = whole.cyclic_decomposition();
  REQUIRE(dec2.size() == 2);
  CHECK(dec2[0].second == 2);
  CHECK(dec2[1].second == 4);
}

TEST_CASE("cyclic decomposition is a bijection onto H (|H| <= 16)") {
  for (const auto& g : groups_up_to(16)) {
    for (const auto& h : all_subgroups(g)) {
      const auto& abs = h.as_group();
      CHECK(abs.order() == h.order());
      std::set<GroupElement> reached;
      for (const auto& t : abs.elements()) {
        GroupElement x = h.embed(t);
        CHECK(h.contains(x));
        CHECK(h.coords_of(x) == t);
        reached.insert(x);
      }
      CHECK(reached.size() == static_cast<size_t>(h.order()));
    }
  }
}

TEST_CASE("subgroup membership agrees with exhaustive generation, |G| <= 64") {
  for (const auto& g : groups_up_to(64)) {
    auto subs = all_subgroups(g);
    for (const auto& h : subs) {
      std::set<GroupElement> elems(h.elements().begin(), h.elements().end());
      for (const auto& x : g.elements()) CHECK(h.contains(x) == (elems.count(x) > 0));
      // |G| = |H| * |G/H| and kernel(pi) = H elementwise.
      auto [q, pi] = quotient(g, h);
      CHECK(g.order() == h.order() * q.order());
      for (const auto& x : g.elements())
        CHECK((pi.apply(x) == q.zero()) == (elems.count(x) > 0));
      // Section postcondition on every quotient formed here.
      Section s = section(pi);
      CHECK(s.apply(q.zero()) == g.zero());
      for (const auto& qe : q.elements()) CHECK(pi.apply(s.apply(qe)) == qe);
    }
  }
}

TEST_CASE("hom_group counts and exhaustive filter") {
  FiniteAbelianGroup c2({2}), c4({4}), c22({2, 2}), triv;
  CHECK(hom_group(c2, c2).size() == 2);
  CHECK(hom_group(c2, triv).size() == 1);
  auto homs = hom_group(c22, c4);
  CHECK(homs.size() == 4);
  for (const auto& f : homs) {
    // images lie in mu_2 inside C4
    for (const auto& x : c22.elements()) CHECK(c4.smul(2, f.apply(x)) == c4.zero());
  }

  // Exhaustive oracle: all set maps H -> T that are additive, for |H| <= 8.
  for (const auto& h : {c2, c22, FiniteAbelianGroup({8}), FiniteAbelianGroup({2, 4})}) {
    for (const auto& t : {c2, c4, FiniteAbelianGroup({3})}) {
      auto fast = hom_group(h, t);
      auto helems = h.elements();
      int64_t count = 0;
      std::vector<int64_t> pick(helems.size(), 0);
      // Enumerate all |T|^{|H|} maps; count the additive ones.
      for (;;) {
        bool additive = true;
        auto val = [&](const GroupElement& x) { return t.element_at(pick[h.index_of(x)]); };
        if (pick[0] != t.index_of(t.zero())) additive = false;
        for (size_t i = 0; i < helems.size() && additive; ++i)
          for (size_t j = i; j < helems.size() && additive; ++j)
            if (val(h.add(helems[i], helems[j])) != t.add(val(helems[i]), val(helems[j])))
              additive = false;
        if (additive) ++count;
        size_t p = 0;
        for (; p < pick.size(); ++p) {
          if (++pick[p] < t.order()) break;
          pick[p] = 0;
        }
        if (p == pick.size()) break;
      }
      CHECK(count == static_cast<int64_t>(fast.size()));
    }
  }
}

TEST_CASE("subgroup count sanity") {
  // C2 x C2 has 5 subgroups, C4 has 3, C2^3 has 16.
  CHECK(all_subgroups(FiniteAbelianGroup({2, 2})).size() == 5);
  CHECK(all_subgroups(FiniteAbelianGroup({4})).size() == 3);
  CHECK(all_subgroups(FiniteAbelianGroup({2, 2, 2})).size() == 16);
}
