#ifndef PSUB_PLATTICE_HPP
#define PSUB_PLATTICE_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "group.hpp"
#include "poset.hpp"

namespace psub
{

enum class FamilyKind { all_p_subgroups, p_tori };

/// A conjugation-closed family of non-trivial p-subgroups of an ambient
/// group: either every p-subgroup or only the elementary abelian ones.
///
/// Members are sorted by (order, member bitset). `generators[i]` generates
/// `members[i]`. The ambient group must outlive the family.
struct PSubgroupFamily
{
  Group const *ambient = nullptr;
  unsigned p = 0;
  FamilyKind kind = FamilyKind::all_p_subgroups;
  std::vector<Subgroup> members;
  std::vector<std::vector<ElementIndex>> generators;

  std::size_t size() const { return members.size(); }

  std::optional<std::size_t> index_of(Bitset const &m) const
  {
    for (std::size_t i = 0; i < members.size(); ++i)
      if (members[i].members == m)
        return i;
    return std::nullopt;
  }
};

namespace detail
{

inline void require_prime_divides(Group const &G, unsigned p)
{
  if (!is_prime(p))
    throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (G.order() % p != 0)
    throw PrimeDoesNotDivide(std::to_string(p) + " does not divide |G| = " +
                             std::to_string(G.order()));
}

inline void sort_family(PSubgroupFamily &F)
{
  std::vector<std::size_t> idx(F.members.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return subgroup_less(F.members[a], F.members[b]);
  });
  std::vector<Subgroup> m;
  std::vector<std::vector<ElementIndex>> g;
  m.reserve(idx.size());
  g.reserve(idx.size());
  for (std::size_t i : idx) {
    m.push_back(std::move(F.members[i]));
    g.push_back(std::move(F.generators[i]));
  }
  F.members = std::move(m);
  F.generators = std::move(g);
}

} // namespace detail

/// Every non-trivial subgroup of p-power order, built level by level.
///
/// Level 1 holds the cyclic subgroups of order p. A subgroup R of order
/// p^(k+1) contains a normal subgroup Q of index p, and every x in R \ Q
/// normalizes Q with x^p in Q, so R = Q<x> is reached from level k by
/// adjoining such an x.
inline PSubgroupFamily enumerate_p_subgroups(Group const &G, unsigned p)
{
  detail::require_prime_divides(G, p);

  PSubgroupFamily F;
  F.ambient = &G;
  F.p = p;
  F.kind = FamilyKind::all_p_subgroups;

  std::vector<ElementIndex> p_elements;
  std::vector<ElementIndex> pth_power(G.order(), 0);
  for (ElementIndex x = 1; x < G.order(); ++x) {
    if (p_power_exponent(G.element_order(x), p) > 0) {
      p_elements.push_back(x);
      pth_power[x] = G.pow(x, p);
    }
  }

  std::unordered_map<Bitset, std::size_t, BitsetHash> seen;
  std::vector<std::size_t> level;

  auto record = [&](Bitset members, std::vector<ElementIndex> gens) {
    auto [it, inserted] = seen.emplace(members, F.members.size());
    if (!inserted)
      return;
    level.push_back(F.members.size());
    F.members.emplace_back(std::move(members));
    F.generators.push_back(std::move(gens));
  };

  for (ElementIndex x : p_elements) {
    if (G.element_order(x) != p)
      continue;
    Bitset m(G.order());
    ElementIndex y = 0;
    for (unsigned i = 0; i < p; ++i) {
      m.set(y);
      y = G.mul(y, x);
    }
    record(std::move(m), {x});
  }

  while (!level.empty()) {
    std::vector<std::size_t> current = std::move(level);
    level.clear();
    for (std::size_t qi : current) {
      // copies: record() may reallocate F
      Bitset const q_members = F.members[qi].members;
      std::vector<ElementIndex> const q_gens = F.generators[qi];
      std::vector<std::size_t> q_list = q_members.indices();
      Bitset covered = q_members;
      for (ElementIndex x : p_elements) {
        poll_deadline();
        if (covered.test(x) || !q_members.test(pth_power[x]))
          continue;
        bool normalizes = true;
        for (ElementIndex s : q_gens)
          if (!q_members.test(G.conj(x, s))) {
            normalizes = false;
            break;
          }
        if (!normalizes)
          continue;
        Bitset r = q_members;
        ElementIndex xi = x;
        for (unsigned i = 1; i < p; ++i) {
          for (std::size_t q : q_list)
            r.set(G.mul(static_cast<ElementIndex>(q), xi));
          xi = G.mul(xi, x);
        }
        covered |= r;
        auto gens = q_gens;
        gens.push_back(x);
        record(std::move(r), std::move(gens));
      }
    }
  }

  detail::sort_family(F);
  return F;
}

/// The elementary abelian members of a p-subgroup family.
inline PSubgroupFamily p_tori_of(PSubgroupFamily const &all)
{
  PSubgroupFamily T;
  T.ambient = all.ambient;
  T.p = all.p;
  T.kind = FamilyKind::p_tori;
  Group const &G = *all.ambient;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto const &gens = all.generators[i];
    bool torus = true;
    all.members[i].members.for_each([&](std::size_t x) {
      if (x != 0 && G.element_order(static_cast<ElementIndex>(x)) != all.p)
        torus = false;
    });
    for (std::size_t a = 0; torus && a < gens.size(); ++a)
      for (std::size_t b = a + 1; torus && b < gens.size(); ++b)
        if (G.mul(gens[a], gens[b]) != G.mul(gens[b], gens[a]))
          torus = false;
    if (torus) {
      T.members.push_back(all.members[i]);
      T.generators.push_back(gens);
    }
  }
  return T;
}

/// The non-trivial elementary abelian p-subgroups (p-tori).
inline PSubgroupFamily enumerate_p_tori(Group const &G, unsigned p)
{
  return p_tori_of(enumerate_p_subgroups(G, p));
}

/// Conjugation by each generator of the ambient group, as permutations of
/// the family. Throws InvariantViolation if the family is not a G-set.
inline PosetAction conjugation_action(PSubgroupFamily const &F)
{
  Group const &G = *F.ambient;
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> where;
  for (std::size_t i = 0; i < F.size(); ++i)
    where.emplace(F.members[i].members, static_cast<std::uint32_t>(i));
  PosetAction action;
  for (Perm const &g : G.generators()) {
    ElementIndex gi = *G.index_of(g);
    std::vector<std::uint32_t> images(F.size());
    for (std::size_t i = 0; i < F.size(); ++i) {
      auto it = where.find(conjugate(G, F.members[i], gi).members);
      if (it == where.end())
        throw InvariantViolation("family is not closed under conjugation");
      images[i] = it->second;
    }
    action.push_back(std::move(images));
  }
  return action;
}

/// Inclusion order on the family, labels = member indices, carrying the
/// conjugation action.
inline Poset build_poset(PSubgroupFamily const &F)
{
  auto const &m = F.members;
  Poset X = Poset::from_relation(F.size(), [&](std::size_t i, std::size_t j) {
    return m[i].order < m[j].order && m[j].order % m[i].order == 0 &&
           m[i].members.is_subset_of(m[j].members);
  });
  if (F.ambient == nullptr || F.size() == 0)
    return X;
  return X.with_action(conjugation_action(F));
}

/// Maximal members of a family of tori (or of any family).
inline std::vector<Subgroup> maximal_members(PSubgroupFamily const &F)
{
  std::vector<Subgroup> out;
  for (std::size_t i = 0; i < F.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < F.size() && maximal; ++j)
      if (j != i && F.members[j].order > F.members[i].order &&
          F.members[i].is_subgroup_of(F.members[j]))
        maximal = false;
    if (maximal)
      out.push_back(F.members[i]);
  }
  return out;
}

inline std::vector<Subgroup> maximal_tori(PSubgroupFamily const &tori)
{
  return maximal_members(tori);
}

inline std::vector<Subgroup> maximal_tori(Group const &G, unsigned p)
{
  return maximal_members(enumerate_p_tori(G, p));
}

/// Whether G acts transitively by conjugation on its maximal p-tori.
inline bool tori_all_conjugate(Group const &G, std::vector<Subgroup> const &maximal)
{
  if (maximal.empty())
    return true;
  std::vector<Subgroup> orbit{maximal.front()};
  std::vector<ElementIndex> gens;
  for (auto const &g : G.generators())
    gens.push_back(*G.index_of(g));
  for (std::size_t head = 0; head < orbit.size(); ++head)
    for (ElementIndex g : gens) {
      Subgroup c = conjugate(G, orbit[head], g);
      if (std::find(orbit.begin(), orbit.end(), c) == orbit.end())
        orbit.push_back(std::move(c));
    }
  return orbit.size() == maximal.size();
}

inline bool tori_all_conjugate(Group const &G, unsigned p)
{
  detail::require_prime_divides(G, p);
  return tori_all_conjugate(G, maximal_tori(G, p));
}

/// All non-trivial intersections of non-empty sets of maximal tori.
inline std::vector<Subgroup> tori_intersection_family(std::vector<Subgroup> const &maximal)
{
  std::vector<Subgroup> out = maximal;
  std::unordered_map<Bitset, bool, BitsetHash> seen;
  for (auto const &m : out)
    seen.emplace(m.members, true);
  for (std::size_t head = 0; head < out.size(); ++head) {
    poll_deadline();
    for (auto const &m : maximal) {
      Subgroup c = intersection(out[head], m);
      if (c.is_trivial())
        continue;
      if (seen.emplace(c.members, true).second)
        out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

/// Sylow p-subgroups read off a p-subgroup family (members of order |G|_p).
inline std::vector<Subgroup> sylow_subgroups(PSubgroupFamily const &all)
{
  std::size_t target = p_part(all.ambient->order(), all.p);
  std::vector<Subgroup> out;
  for (auto const &s : all.members)
    if (s.order == target)
      out.push_back(s);
  return out;
}

inline std::vector<Subgroup> sylow_subgroups(Group const &G, unsigned p)
{
  return sylow_subgroups(enumerate_p_subgroups(G, p));
}

/// O_p(G): the intersection of all Sylow p-subgroups.
inline Subgroup o_p(Group const &G, std::vector<Subgroup> const &sylows)
{
  Subgroup r = G.whole();
  for (auto const &s : sylows)
    r = intersection(r, s);
  return r;
}

inline Subgroup o_p(Group const &G, unsigned p)
{
  return o_p(G, sylow_subgroups(G, p));
}

/// F(G): generated by O_q(G) over the primes q dividing |G|.
inline Subgroup fitting(Group const &G)
{
  Bitset all(G.order());
  all.set(0);
  for (unsigned q : prime_divisors(G.order()))
    all |= o_p(G, q).members;
  return generate(G, all);
}

/// The algebraic side of contractibility of A_p(G) in n <= 3 steps:
///   n = 0: Omega_1(G) has order p;
///   n = 1: Omega_1(G) is abelian;
///   n = 2: p divides |C_G(Omega_1(G))|, cross-checked against the
///          intersection of all maximal p-tori being non-trivial;
///   n = 3: some p-torus meets every non-trivial intersection of maximal
///          p-tori non-trivially.
/// `tori` must be the p-tori family of G.
inline bool step_predicate(PSubgroupFamily const &tori, unsigned n)
{
  Group const &G = *tori.ambient;
  unsigned const p = tori.p;
  switch (n) {
  case 0:
    return omega1(G, p).order == p;
  case 1:
    return is_abelian(G, omega1(G, p));
  case 2: {
    bool centralizer_route = centralizer(G, omega1(G, p)).order % p == 0;
    Subgroup meet = G.whole();
    for (auto const &m : maximal_tori(tori))
      meet = intersection(meet, m);
    bool meet_route = !meet.is_trivial();
    if (centralizer_route != meet_route)
      throw InvariantViolation("two-step characterizations disagree");
    return centralizer_route;
  }
  case 3: {
    auto maximal = maximal_tori(tori);
    auto family = tori_intersection_family(maximal);
    // A witness can be enlarged to a maximal torus, so maximal tori suffice.
    for (auto it = maximal.rbegin(); it != maximal.rend(); ++it) {
      bool meets_all = std::all_of(family.begin(), family.end(), [&](Subgroup const &s) {
        return it->members.intersection_count(s.members) > 1;
      });
      if (meets_all)
        return true;
    }
    return false;
  }
  default:
    throw std::invalid_argument("step_predicate is defined for n in 0..3");
  }
}

inline bool step_predicate(Group const &G, unsigned p, unsigned n)
{
  return step_predicate(enumerate_p_tori(G, p), n);
}

/// The family M_k of the X_k term of the i/s sequence of a p-tori poset:
/// minimal elements for even k, maximal elements for odd k. Terms past the
/// end of `seq` equal its last term.
inline std::vector<Subgroup> step_family(PSubgroupFamily const &tori,
                                         std::vector<Poset> const &seq, std::size_t k)
{
  Poset const &Xk = seq[std::min(k, seq.size() - 1)];
  auto idx = k % 2 == 0 ? minimal_elements(Xk) : maximal_elements(Xk);
  std::vector<Subgroup> out;
  for (std::size_t i : idx)
    out.push_back(tori.members[Xk.label(i)]);
  return out;
}

/// Algebraic test for contractibility of A_p(G) in n steps given the
/// family M = M_{n-1}: for even n >= 2 the members meet non-trivially, for
/// odd n they generate an abelian subgroup; for n = 0, A_p(G) is a point.
inline bool ultim_check(Group const &G, unsigned p, unsigned n,
                        std::vector<Subgroup> const &M)
{
  detail::require_prime_divides(G, p);
  if (n == 0)
    return enumerate_p_tori(G, p).size() == 1;
  if (M.empty())
    throw EmptyFamily("ultim_check needs a non-empty family");
  if (n % 2 == 0) {
    Subgroup meet = G.whole();
    for (auto const &a : M)
      meet = intersection(meet, a);
    return !meet.is_trivial();
  }
  Bitset all(G.order());
  for (auto const &a : M)
    all |= a.members;
  return is_abelian(G, generate(G, all));
}

} // namespace psub

#endif // PSUB_PLATTICE_HPP
