#ifndef PSUB_SEMIDIRECT_HPP
#define PSUB_SEMIDIRECT_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "group.hpp"
#include "perm.hpp"

namespace psub
{

/// An automorphism of N, given by the images of N's generators (in order).
using Automorphism = std::vector<Perm>;

/// The map element-index -> element-index induced by an automorphism.
/// Throws std::invalid_argument if the images do not define a bijective
/// homomorphism.
inline std::vector<ElementIndex> automorphism_table(Group const &N, Automorphism const &phi)
{
  auto const &gens = N.generators();
  if (phi.size() != gens.size())
    throw std::invalid_argument("automorphism: expected one image per generator");
  std::vector<ElementIndex> gen_idx, img_idx;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto g = N.index_of(gens[j]);
    auto h = N.index_of(phi[j]);
    if (!g || !h)
      throw std::invalid_argument("automorphism: image outside the group");
    gen_idx.push_back(*g);
    img_idx.push_back(*h);
  }

  std::size_t const n = N.order();
  constexpr ElementIndex unset = static_cast<ElementIndex>(-1);
  std::vector<ElementIndex> map(n, unset);
  map[0] = 0;
  // elements are indexed breadth-first, so each index is reached from an
  // earlier one by right multiplication with a generator
  for (std::size_t i = 0; i < n; ++i) {
    if (map[i] == unset)
      throw std::invalid_argument("automorphism: group not generated as expected");
    for (std::size_t j = 0; j < gen_idx.size(); ++j) {
      ElementIndex k = N.mul(static_cast<ElementIndex>(i), gen_idx[j]);
      ElementIndex image = N.mul(map[i], img_idx[j]);
      if (map[k] == unset)
        map[k] = image;
      else if (map[k] != image)
        throw std::invalid_argument("automorphism: images do not define a homomorphism");
    }
  }
  std::vector<bool> hit(n, false);
  for (auto v : map) {
    if (hit[v])
      throw std::invalid_argument("automorphism: not injective");
    hit[v] = true;
  }
  return map;
}

/// N x| H as a permutation group on the |N| elements of N (the cosets of
/// the complement H): N acts by right translation and H by the given
/// automorphisms. The action is faithful whenever the automorphisms act
/// faithfully.
inline Group semidirect_product(Group const &N, std::vector<Automorphism> const &automorphisms,
                                std::size_t max_order = kDefaultMaxOrder)
{
  std::size_t const n = N.order();
  if (n > 0xffff)
    throw std::invalid_argument("semidirect_product: base group too large");
  std::vector<Perm> gens;
  for (auto const &g : N.generators()) {
    ElementIndex gi = *N.index_of(g);
    std::vector<Point> images(n);
    for (std::size_t x = 0; x < n; ++x)
      images[x] = static_cast<Point>(N.mul(static_cast<ElementIndex>(x), gi));
    gens.emplace_back(std::move(images));
  }
  for (auto const &phi : automorphisms) {
    auto map = automorphism_table(N, phi);
    std::vector<Point> images(map.begin(), map.end());
    gens.emplace_back(std::move(images));
  }
  return Group::closure(n, std::move(gens), max_order);
}

} // namespace psub

#endif // PSUB_SEMIDIRECT_HPP
