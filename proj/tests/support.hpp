// Shared fixtures and generators for the test suites.
#ifndef PSUB_TESTS_SUPPORT_HPP
#define PSUB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "psub/psub.hpp"

namespace psub::testing
{

inline std::filesystem::path fixture_dir() { return PSUB_FIXTURES; }

inline GroupFile fixture_file(std::string const &name)
{
  return load_group_file(fixture_dir() / (name + ".grp"));
}

inline Group fixture(std::string const &name) { return fixture_file(name).to_group(); }

/// Every bundled group file, in name order.
inline std::vector<GroupFile> catalogue()
{
  std::vector<GroupFile> out;
  for (auto const &path : list_group_files(fixture_dir()))
    out.push_back(load_group_file(path));
  return out;
}

/// Catalogue entries of order below `bound` (the larger ones are slow to
/// sweep in unit tests and covered by the acceptance run).
inline std::vector<GroupFile> small_catalogue(std::size_t bound = 200)
{
  std::vector<GroupFile> out;
  for (auto &gf : catalogue())
    if (gf.to_group().order() < bound)
      out.push_back(std::move(gf));
  return out;
}

inline Poset chain(std::size_t n)
{
  return Poset::from_relation(n, [](std::size_t i, std::size_t j) { return i < j; });
}

inline Poset antichain(std::size_t n)
{
  return Poset::from_relation(n, [](std::size_t, std::size_t) { return false; });
}

/// Two minima each below two maxima: the smallest non-contractible core.
inline Poset bowtie()
{
  return Poset::from_covers(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

/// Random partial order: a random DAG on 0..n-1 (edges only upward in a
/// shuffled order) closed transitively.
inline Poset random_poset(std::mt19937_64 &rng, std::size_t n, double density)
{
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i)
    perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution edge(density);
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (edge(rng))
        covers.push_back({perm[i], perm[j]});
  return Poset::from_covers(n, covers);
}

/// Proper part of a random closure system on `atoms` points: all
/// singletons plus random proper subsets, closed under non-empty
/// intersection. Always an atomic reduced lattice. Returns an empty poset
/// when the family exceeds max_size.
inline Poset random_closure_lattice(std::mt19937_64 &rng, unsigned atoms, unsigned extra,
                                    std::size_t max_size)
{
  std::uint32_t const full = (1u << atoms) - 1;
  std::set<std::uint32_t> family;
  for (unsigned a = 0; a < atoms; ++a)
    family.insert(1u << a);
  std::uniform_int_distribution<std::uint32_t> pick(1, full - 1);
  for (unsigned k = 0; k < extra; ++k)
    family.insert(pick(rng));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::uint32_t> cur(family.begin(), family.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        std::uint32_t m = cur[i] & cur[j];
        if (m && family.insert(m).second)
          grew = true;
      }
    if (family.size() > max_size)
      return Poset{};
  }
  std::vector<std::uint32_t> sets(family.begin(), family.end());
  return Poset::from_relation(sets.size(), [&](std::size_t i, std::size_t j) {
    return sets[i] != sets[j] && (sets[i] & sets[j]) == sets[i];
  });
}

/// Random relabelling of a poset: element i of the result is element
/// perm[i] of X.
inline Poset shuffled(Poset const &X, std::mt19937_64 &rng)
{
  std::vector<std::size_t> perm(X.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return Poset::from_relation(X.size(),
                              [&](std::size_t i, std::size_t j) { return X.less(perm[i], perm[j]); });
}

} // namespace psub::testing

#endif // PSUB_TESTS_SUPPORT_HPP
