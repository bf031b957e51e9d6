#ifndef PSUB_ISO_HPP
#define PSUB_ISO_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "poset.hpp"

namespace psub
{

namespace detail
{

inline std::uint64_t mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Adjacency lists of the strict order, plus the color-refinement step.
class RefinementGraph
{
public:
  explicit RefinementGraph(Poset const &X) : below_(X.size()), above_(X.size())
  {
    for (std::size_t j = 0; j < X.size(); ++j)
      X.strictly_below(j).for_each([&](std::size_t i) {
        below_[j].push_back(static_cast<std::uint32_t>(i));
        above_[i].push_back(static_cast<std::uint32_t>(j));
      });
  }

  std::size_t size() const { return below_.size(); }

  std::vector<std::uint64_t> initial_colors() const
  {
    std::vector<std::uint64_t> c(size());
    for (std::size_t i = 0; i < size(); ++i)
      c[i] = mix64((std::uint64_t{below_[i].size()} << 32) ^ above_[i].size());
    return c;
  }

  /// One round: a color absorbs the multisets of colors strictly below and
  /// strictly above. Sums of mixed values make the aggregation order-free.
  std::vector<std::uint64_t> refine(std::vector<std::uint64_t> const &c) const
  {
    std::vector<std::uint64_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
      std::uint64_t down = 0, up = 0;
      for (auto j : below_[i])
        down += mix64(c[j] ^ 0x5555555555555555ULL);
      for (auto j : above_[i])
        up += mix64(c[j] ^ 0xaaaaaaaaaaaaaaaaULL);
      out[i] = mix64(c[i] ^ mix64(down) ^ (mix64(up) * 3));
    }
    return out;
  }

  std::vector<std::uint32_t> const &below(std::size_t i) const { return below_[i]; }

private:
  std::vector<std::vector<std::uint32_t>> below_;
  std::vector<std::vector<std::uint32_t>> above_;
};

inline std::size_t class_count(std::vector<std::uint64_t> c)
{
  std::sort(c.begin(), c.end());
  return static_cast<std::size_t>(std::unique(c.begin(), c.end()) - c.begin());
}

inline bool same_histogram(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b)
{
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Refine both colorings in lockstep until X's class count is stable.
/// Returns false as soon as the color histograms differ.
inline bool refine_pair(RefinementGraph const &gx, RefinementGraph const &gy,
                        std::vector<std::uint64_t> &cx, std::vector<std::uint64_t> &cy)
{
  std::size_t classes = class_count(cx);
  for (;;) {
    poll_deadline();
    if (!same_histogram(cx, cy))
      return false;
    auto nx = gx.refine(cx);
    auto ny = gy.refine(cy);
    std::size_t next = class_count(nx);
    cx = std::move(nx);
    cy = std::move(ny);
    if (next == classes)
      return same_histogram(cx, cy);
    classes = next;
  }
}

class IsoSearch
{
public:
  IsoSearch(Poset const &X, Poset const &Y) : X_(X), Y_(Y), gx_(X), gy_(Y) {}

  std::optional<std::vector<std::size_t>> run()
  {
    auto cx = gx_.initial_colors();
    auto cy = gy_.initial_colors();
    if (!refine_pair(gx_, gy_, cx, cy))
      return std::nullopt;
    if (search(cx, cy, 1))
      return result_;
    return std::nullopt;
  }

private:
  bool search(std::vector<std::uint64_t> cx, std::vector<std::uint64_t> cy,
              std::uint64_t depth)
  {
    std::size_t const n = X_.size();

    // smallest non-singleton cell of X
    std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted(n);
    for (std::size_t i = 0; i < n; ++i)
      sorted[i] = {cx[i], static_cast<std::uint32_t>(i)};
    std::sort(sorted.begin(), sorted.end());
    std::size_t best_start = n, best_len = n + 1;
    for (std::size_t s = 0; s < n;) {
      std::size_t e = s;
      while (e < n && sorted[e].first == sorted[s].first)
        ++e;
      if (e - s > 1 && e - s < best_len) {
        best_len = e - s;
        best_start = s;
      }
      s = e;
    }

    if (best_start == n) {
      // discrete coloring: the bijection is forced
      std::unordered_map<std::uint64_t, std::size_t> y_of_color;
      for (std::size_t j = 0; j < n; ++j)
        y_of_color.emplace(cy[j], j);
      std::vector<std::size_t> f(n);
      for (std::size_t i = 0; i < n; ++i) {
        auto it = y_of_color.find(cx[i]);
        if (it == y_of_color.end())
          return false;
        f[i] = it->second;
      }
      if (!is_isomorphism(f))
        return false;
      result_ = std::move(f);
      return true;
    }

    std::size_t x = sorted[best_start].second;
    std::uint64_t target = cx[x];
    std::uint64_t marker = mix64(0x1234567ULL + depth);
    for (std::size_t y = 0; y < n; ++y) {
      if (cy[y] != target)
        continue;
      auto nx = cx;
      auto ny = cy;
      nx[x] = mix64(nx[x] ^ marker);
      ny[y] = mix64(ny[y] ^ marker);
      if (!refine_pair(gx_, gy_, nx, ny))
        continue;
      if (search(std::move(nx), std::move(ny), depth + 1))
        return true;
    }
    return false;
  }

  bool is_isomorphism(std::vector<std::size_t> const &f) const
  {
    std::size_t const n = X_.size();
    std::vector<bool> hit(n, false);
    for (auto y : f) {
      if (hit[y])
        return false;
      hit[y] = true;
    }
    std::size_t relations_x = 0, relations_y = 0;
    for (std::size_t j = 0; j < n; ++j) {
      relations_x += gx_.below(j).size();
      relations_y += gy_.below(j).size();
      for (auto i : gx_.below(j))
        if (!Y_.less(f[i], f[j]))
          return false;
    }
    return relations_x == relations_y;
  }

  Poset const &X_;
  Poset const &Y_;
  RefinementGraph gx_;
  RefinementGraph gy_;
  std::vector<std::size_t> result_;
};

} // namespace detail

/// An order isomorphism X -> Y as `f[x] = y`, or nullopt if none exists.
///
/// Colors are 64-bit hashes refined from up/down degrees; a collision can
/// only merge classes and slow the search, never accept a non-isomorphism,
/// because every candidate bijection is checked against both orders.
inline std::optional<std::vector<std::size_t>> poset_iso(Poset const &X, Poset const &Y)
{
  if (X.size() != Y.size())
    return std::nullopt;
  if (X.empty())
    return std::vector<std::size_t>{};
  return detail::IsoSearch(X, Y).run();
}

/// X and Y have the same homotopy type iff their cores are isomorphic.
inline bool same_homotopy_type(Poset const &X, Poset const &Y)
{
  return poset_iso(core(X).first, core(Y).first).has_value();
}

} // namespace psub

#endif // PSUB_ISO_HPP
