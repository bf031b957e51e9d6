#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace psub;
using namespace psub::testing;

namespace
{

Group sym(unsigned n)
{
  std::string cycle = "(";
  for (unsigned i = 1; i <= n; ++i)
    cycle += std::to_string(i) + (i < n ? " " : ")");
  return Group::closure(n, {parse_cycles("(1 2)", n), parse_cycles(cycle, n)});
}

ElementIndex idx(Group const &G, std::string const &cycles)
{
  return *G.index_of(parse_cycles(cycles, G.degree()));
}

Subgroup gen(Group const &G, std::vector<std::string> const &cycles)
{
  std::vector<ElementIndex> g;
  for (auto const &c : cycles)
    g.push_back(idx(G, c));
  return generate(G, g);
}

/// Centralizer straight from permutation products, bypassing the table.
std::set<Perm> brute_centralizer(Group const &G, Subgroup const &S)
{
  std::set<Perm> out;
  for (auto const &g : G.elements()) {
    bool ok = true;
    S.members.for_each([&](std::size_t s) {
      Perm const &x = G.element(static_cast<ElementIndex>(s));
      if (g * x != x * g)
        ok = false;
    });
    if (ok)
      out.insert(g);
  }
  return out;
}

std::set<Perm> perms_of(Group const &G, Subgroup const &S)
{
  std::set<Perm> out;
  S.members.for_each([&](std::size_t i) { out.insert(G.element(static_cast<ElementIndex>(i))); });
  return out;
}

} // namespace

TEST(Perm, ProductAppliesLeftFactorFirst)
{
  Perm a = parse_cycles("(1 2)", 3);
  Perm b = parse_cycles("(2 3)", 3);
  // 1 -a-> 2 -b-> 3
  EXPECT_EQ((a * b)[0], 2);
  EXPECT_EQ((a * b).to_cycle_string(), "(1 3 2)");
}

TEST(Perm, InverseAndIdentity)
{
  Perm p = parse_cycles("(1 2 8 3)(4 7)", 8);
  EXPECT_TRUE((p * p.inverse()).is_identity());
  EXPECT_TRUE((p.inverse() * p).is_identity());
  EXPECT_EQ(parse_cycles("()", 5).to_cycle_string(), "()");
  EXPECT_EQ(p.to_cycle_string(), "(1 2 8 3)(4 7)");
}

TEST(Perm, Associative)
{
  Perm a = parse_cycles("(1 2 3 4)", 5), b = parse_cycles("(2 5)", 5), c = parse_cycles("(1 5 3)", 5);
  EXPECT_EQ((a * b) * c, a * (b * c));
}

TEST(Perm, FromCyclesIsZeroBased)
{
  EXPECT_EQ(Perm::from_cycles(4, {{0, 1, 2, 3}}), parse_cycles("(1 2 3 4)", 4));
  EXPECT_THROW(Perm::from_cycles(3, {{0, 1}, {1, 2}}), std::invalid_argument);
}

TEST(Perm, RejectsNonBijection)
{
  EXPECT_THROW(Perm(std::vector<Point>{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Perm(std::vector<Point>{0, 3}), std::invalid_argument);
}

TEST(Perm, ParseErrors)
{
  EXPECT_THROW(parse_cycles("(1 2)(2 3)", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1 2", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1 x)", 3), ParseError);
  EXPECT_THROW(parse_cycles("(0 1)", 3), ParseError);
  EXPECT_THROW(parse_cycles("(1 4)", 3), DegreeMismatch);
  try {
    parse_cycles("(1 2)(2 3)", 3, 7, 4);
    FAIL();
  } catch (ParseError const &e) {
    EXPECT_EQ(e.line(), 7u);
    EXPECT_GT(e.column(), 4u);
  }
}

TEST(Closure, Orders)
{
  EXPECT_EQ(sym(4).order(), 24u);
  EXPECT_EQ(fixture("G576").order(), 576u);
  EXPECT_EQ(Group::closure(3, {}).order(), 1u);
  EXPECT_EQ(sym(5).order(), 120u);
}

TEST(Closure, IndexingIsDeterministicBreadthFirst)
{
  Group a = sym(4), b = sym(4);
  ASSERT_EQ(a.order(), b.order());
  for (ElementIndex i = 0; i < a.order(); ++i)
    EXPECT_EQ(a.element(i), b.element(i));
  EXPECT_TRUE(a.element(0).is_identity());
  // BFS: the generators come right after the identity, in input order
  EXPECT_EQ(a.element(1), parse_cycles("(1 2)", 4));
  EXPECT_EQ(a.element(2), parse_cycles("(1 2 3 4)", 4));
}

TEST(Closure, TableAgreesWithPermProducts)
{
  Group G = fixture("SL2_3");
  ASSERT_TRUE(G.has_table());
  for (ElementIndex i = 0; i < G.order(); ++i)
    for (ElementIndex j = 0; j < G.order(); ++j)
      ASSERT_EQ(G.element(G.mul(i, j)), G.element(i) * G.element(j));
}

TEST(Closure, ClosedUnderProductAndInverse)
{
  for (auto const &gf : small_catalogue(100)) {
    Group G = gf.to_group();
    std::set<Perm> all(G.elements().begin(), G.elements().end());
    EXPECT_EQ(all.size(), G.order()) << gf.name;
    for (auto const &x : G.elements()) {
      EXPECT_TRUE(all.count(x.inverse())) << gf.name;
      for (auto const &g : G.generators())
        EXPECT_TRUE(all.count(x * g)) << gf.name;
    }
    // |G| divides degree!
    std::size_t fact = 1;
    for (std::size_t k = 2; k <= G.degree() && fact % G.order() != 0; ++k)
      fact *= k;
    EXPECT_EQ(fact % G.order(), 0u) << gf.name;
  }
}

TEST(Closure, Errors)
{
  EXPECT_THROW(sym(7).order(), OrderLimitExceeded); // 5040 > 4096
  EXPECT_EQ(Group::closure(7, {parse_cycles("(1 2)", 7), parse_cycles("(1 2 3 4 5 6 7)", 7)}, 6000)
              .order(),
            5040u);
  EXPECT_THROW(Group::closure(4, {parse_cycles("(1 2)", 3)}), DegreeMismatch);
  EXPECT_THROW(Group::closure(4, {parse_cycles("(1 2 3 4)", 4)}, 3), OrderLimitExceeded);
}

TEST(Closure, UntabulatedGroupStillMultiplies)
{
  Group G = Group::closure(7, {parse_cycles("(1 2)", 7), parse_cycles("(1 2 3 4 5 6 7)", 7)}, 6000);
  EXPECT_FALSE(G.has_table());
  ElementIndex a = 5, b = 4000;
  EXPECT_EQ(G.element(G.mul(a, b)), G.element(a) * G.element(b));
  EXPECT_TRUE(G.element(G.mul(b, G.inv(b))).is_identity());
}

TEST(ElementOrder, Examples)
{
  Group S4 = sym(4);
  EXPECT_EQ(element_order(S4, 0), 1u);
  EXPECT_EQ(element_order(S4, idx(S4, "(1 2 3 4)")), 4u);
  Group V = fixture("Z2xZ2");
  for (ElementIndex i = 1; i < V.order(); ++i)
    EXPECT_EQ(element_order(V, i), 2u);
}

TEST(Centralizer, Examples)
{
  Group S4 = sym(4);
  EXPECT_EQ(centralizer(S4, S4.trivial()).order, 24u);
  Subgroup V = gen(S4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  Subgroup C = centralizer(S4, V);
  EXPECT_EQ(C.order, 4u);
  EXPECT_EQ(C, V);
  EXPECT_EQ(centralizer(S4, S4.whole()), center(S4));
}

TEST(Centralizer, MatchesBruteForce)
{
  for (auto name : {"S4", "D6", "Q8", "SL2_3", "Z3semiZ4"}) {
    Group G = fixture(name);
    for (ElementIndex x = 0; x < G.order(); x += 3) {
      ElementIndex g[] = {x};
      Subgroup S = generate(G, g);
      EXPECT_EQ(perms_of(G, centralizer(G, S)), brute_centralizer(G, S)) << name;
    }
  }
}

TEST(Center, Examples)
{
  EXPECT_EQ(center(fixture("Z6")).order, 6u);
  EXPECT_EQ(center(sym(4)).order, 1u);
  EXPECT_EQ(center(fixture("D4")).order, 2u);
  EXPECT_EQ(center(fixture("Q8")).order, 2u);
  EXPECT_EQ(center(fixture("SL2_3")).order, 2u);
}

TEST(Normalizer, Examples)
{
  Group S4 = sym(4);
  EXPECT_EQ(normalizer(S4, S4.whole()).order, 24u);
  Subgroup N = normalizer(S4, gen(S4, {"(1 2)"}));
  EXPECT_EQ(N.order, 4u);
  EXPECT_EQ(N, gen(S4, {"(1 2)", "(3 4)"}));
  Subgroup V = gen(S4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  EXPECT_TRUE(is_normal(S4, V));
  EXPECT_EQ(normalizer(S4, V).order, 24u);
}

TEST(Omega1, Examples)
{
  Group S4 = sym(4);
  EXPECT_EQ(omega1(S4, 2).order, 24u);
  Group Z4 = fixture("Z4");
  Subgroup O = omega1(Z4, 2);
  EXPECT_EQ(O.order, 2u);
  Group G576 = fixture("G576");
  EXPECT_EQ(omega1(G576, 2).order, 576u);
  EXPECT_EQ(omega1(fixture("Z9"), 2).order, 1u);
  EXPECT_EQ(omega1(fixture("Q8"), 2).order, 2u);
}

TEST(Omega1, Monotone)
{
  for (auto name : {"S4", "D8", "SL2_3", "Z4xZ2"}) {
    Group G = fixture(name);
    for (unsigned p : prime_divisors(G.order()))
      for (ElementIndex x = 0; x < G.order(); ++x) {
        ElementIndex g[] = {x};
        Subgroup S = generate(G, g);
        EXPECT_TRUE(omega1(G, S, p).is_subgroup_of(omega1(G, p))) << name;
      }
  }
}

TEST(Sylow, Examples)
{
  Group S4 = sym(4);
  auto s2 = sylow_subgroups(S4, 2);
  EXPECT_EQ(s2.size(), 3u);
  for (auto const &s : s2)
    EXPECT_EQ(s.order, 8u);
  EXPECT_EQ(sylow_subgroups(S4, 3).size(), 4u);
  Group D8 = fixture("D8"); // order 16
  auto one = sylow_subgroups(D8, 2);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].order, 16u);
  EXPECT_THROW(sylow_subgroups(S4, 5), PrimeDoesNotDivide);
}

TEST(Sylow, CountAndConjugacyOverCatalogue)
{
  for (auto const &gf : small_catalogue(150)) {
    Group G = gf.to_group();
    for (unsigned p : prime_divisors(G.order())) {
      auto syl = sylow_subgroups(G, p);
      ASSERT_FALSE(syl.empty());
      EXPECT_EQ(syl.size() % p, 1u) << gf.name << " p=" << p;
      std::set<Bitset> conj;
      for (ElementIndex g = 0; g < G.order(); ++g)
        conj.insert(conjugate(G, syl[0], g).members);
      std::set<Bitset> listed;
      for (auto const &s : syl)
        listed.insert(s.members);
      EXPECT_EQ(conj, listed) << gf.name << " p=" << p;
    }
  }
}

TEST(OP, Examples)
{
  Group S4 = sym(4);
  Subgroup O2 = o_p(S4, 2);
  EXPECT_EQ(O2, gen(S4, {"(1 2)(3 4)", "(1 3)(2 4)"}));
  EXPECT_EQ(o_p(sym(5), 2).order, 1u);
  EXPECT_GT(o_p(fixture("G576"), 2).order, 1u);
  EXPECT_THROW(o_p(S4, 5), PrimeDoesNotDivide);
  EXPECT_THROW(o_p(S4, 4), std::invalid_argument);
}

TEST(OP, NormalOverCatalogue)
{
  for (auto const &gf : small_catalogue(150)) {
    Group G = gf.to_group();
    for (unsigned p : prime_divisors(G.order())) {
      Subgroup O = o_p(G, p);
      for (auto const &g : G.generators())
        EXPECT_EQ(conjugate(G, O, *G.index_of(g)), O) << gf.name;
    }
  }
}

TEST(Fitting, Examples)
{
  Group G576 = fixture("G576");
  EXPECT_EQ(fitting(G576), o_p(G576, 2));
  Group Z12 = fixture("Z12");
  EXPECT_EQ(fitting(Z12).order, 12u);
  Group S4 = sym(4);
  EXPECT_EQ(fitting(S4), o_p(S4, 2));
  EXPECT_EQ(fitting(S4).order, 4u);
  EXPECT_EQ(fitting(fixture("A5")).order, 1u);
}

TEST(Subgroups, LagrangeAndAbelianCentralizer)
{
  for (auto const &gf : small_catalogue(100)) {
    Group G = gf.to_group();
    for (ElementIndex x = 0; x < G.order(); ++x) {
      ElementIndex g[] = {x, static_cast<ElementIndex>((x * 7 + 3) % G.order())};
      Subgroup S = generate(G, g);
      EXPECT_EQ(G.order() % S.order, 0u) << gf.name;
      EXPECT_TRUE(S.contains(0));
      EXPECT_EQ(S.order, S.members.count());
      if (is_abelian(G, S)) {
        EXPECT_TRUE(S.is_subgroup_of(centralizer(G, S))) << gf.name;
      }
    }
  }
}

TEST(Numbers, Helpers)
{
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(9));
  EXPECT_EQ(prime_divisors(576), (std::vector<unsigned>{2, 3}));
  EXPECT_EQ(p_part(576, 2), 64u);
  EXPECT_EQ(p_part(1728, 3), 27u);
  EXPECT_EQ(p_power_exponent(64, 2), 6);
  EXPECT_EQ(p_power_exponent(72, 2), -1);
  EXPECT_EQ(p_power_exponent(1, 5), 0);
}
