#ifndef PSUB_POSET_HPP
#define PSUB_POSET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "error.hpp"

namespace psub
{

/// A group action on a poset: each entry maps element i to entry[i].
using PosetAction = std::vector<std::vector<std::uint32_t>>;

/// A finite poset stored as a strict-order bit matrix, viewed as a finite
/// topological space whose open sets are the down-sets.
///
/// Elements are 0..size()-1. Each element carries an opaque label that
/// survives passage to subposets, so a core or an i/s term can be mapped
/// back to whatever the labels index (e.g. a family of subgroups).
class Poset
{
public:
  Poset() = default;

  /// Build from a strict relation `less(i, j)`, assumed irreflexive and
  /// transitive (validate() checks both). Labels default to 0..n-1.
  template<typename Less>
  static Poset from_relation(std::size_t n, Less &&less,
                             std::vector<std::size_t> labels = {})
  {
    Poset X;
    X.init(n, std::move(labels));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && less(i, j)) {
          X.below_[j].set(i);
          X.above_[i].set(j);
        }
    X.compute_rank();
    return X;
  }

  /// Build from cover pairs (a, b) meaning a < b, taking the transitive
  /// closure. Throws std::invalid_argument on a cycle.
  static Poset from_covers(std::size_t n,
                           std::vector<std::pair<std::size_t, std::size_t>> const &covers,
                           std::vector<std::size_t> labels = {})
  {
    Poset X;
    X.init(n, std::move(labels));
    for (auto [a, b] : covers) {
      X.below_[b].set(a);
      X.above_[a].set(b);
    }
    // Warshall closure on rows
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (X.above_[i].test(k))
          X.above_[i] |= X.above_[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (X.above_[i].test(i))
        throw std::invalid_argument("Poset::from_covers: relation has a cycle");
      X.below_[i] = Bitset(n);
    }
    for (std::size_t i = 0; i < n; ++i)
      X.above_[i].for_each([&](std::size_t j) { X.below_[j].set(i); });
    X.compute_rank();
    return X;
  }

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }

  bool less(std::size_t i, std::size_t j) const { return below_[j].test(i); }
  bool leq(std::size_t i, std::size_t j) const { return i == j || less(i, j); }
  bool comparable(std::size_t i, std::size_t j) const
  {
    return leq(i, j) || less(j, i);
  }

  /// {i : i < j}
  Bitset const &strictly_below(std::size_t j) const { return below_[j]; }
  /// {j : i < j}
  Bitset const &strictly_above(std::size_t i) const { return above_[i]; }

  std::size_t label(std::size_t i) const { return labels_[i]; }
  std::vector<std::size_t> const &labels() const { return labels_; }

  std::optional<std::size_t> index_of_label(std::size_t label) const
  {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
      return std::nullopt;
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// Position of each element in a fixed linear extension.
  std::vector<std::size_t> const &rank() const { return rank_; }

  bool has_action() const { return !action_.empty(); }
  PosetAction const &action() const { return action_; }

  Poset with_action(PosetAction action) const
  {
    Poset X = *this;
    X.action_ = std::move(action);
    return X;
  }

  Poset opposite() const
  {
    Poset X = *this;
    std::swap(X.below_, X.above_);
    X.compute_rank();
    return X;
  }

  Bitset all() const { return Bitset(size(), true); }

  /// The subposet on `keep`, renumbered in increasing index order. The
  /// action is carried over only when `keep` is invariant under it.
  Poset induced(Bitset const &keep) const
  {
    std::vector<std::size_t> old_of_new = keep.indices();
    std::vector<std::uint32_t> new_of_old(size(), std::numeric_limits<std::uint32_t>::max());
    for (std::size_t k = 0; k < old_of_new.size(); ++k)
      new_of_old[old_of_new[k]] = static_cast<std::uint32_t>(k);

    std::vector<std::size_t> labels;
    labels.reserve(old_of_new.size());
    for (std::size_t o : old_of_new)
      labels.push_back(labels_[o]);

    Poset X;
    X.init(old_of_new.size(), std::move(labels));
    for (std::size_t k = 0; k < old_of_new.size(); ++k) {
      (below_[old_of_new[k]] & keep).for_each([&](std::size_t o) {
        X.below_[k].set(new_of_old[o]);
        X.above_[new_of_old[o]].set(k);
      });
    }
    X.compute_rank();

    bool invariant = true;
    for (auto const &g : action_) {
      for (std::size_t o : old_of_new)
        if (!keep.test(g[o])) {
          invariant = false;
          break;
        }
      if (!invariant)
        break;
    }
    if (invariant) {
      for (auto const &g : action_) {
        std::vector<std::uint32_t> h(old_of_new.size());
        for (std::size_t k = 0; k < old_of_new.size(); ++k)
          h[k] = new_of_old[g[old_of_new[k]]];
        X.action_.push_back(std::move(h));
      }
    }
    return X;
  }

  /// Irreflexive, transitive, distinct labels, action by automorphisms.
  bool validate(std::string *why = nullptr) const
  {
    auto fail = [&](std::string const &msg) {
      if (why)
        *why = msg;
      return false;
    };
    std::size_t const n = size();
    for (std::size_t i = 0; i < n; ++i) {
      if (below_[i].test(i))
        return fail("not irreflexive at " + std::to_string(i));
      bool closed = true;
      below_[i].for_each([&](std::size_t j) {
        if (!below_[j].is_subset_of(below_[i]))
          closed = false;
      });
      if (!closed)
        return fail("not transitive below " + std::to_string(i));
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return fail("duplicate labels");
    for (auto const &g : action_) {
      if (g.size() != n)
        return fail("action permutation has wrong length");
      std::vector<bool> seen(n, false);
      for (auto x : g) {
        if (x >= n || seen[x])
          return fail("action entry is not a permutation");
        seen[x] = true;
      }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (less(i, j) != less(g[i], g[j]))
            return fail("action does not preserve the order");
    }
    return true;
  }

  friend bool operator==(Poset const &a, Poset const &b)
  {
    return a.labels_ == b.labels_ && a.below_ == b.below_;
  }

private:
  void init(std::size_t n, std::vector<std::size_t> labels)
  {
    if (labels.empty()) {
      labels.resize(n);
      std::iota(labels.begin(), labels.end(), std::size_t{0});
    } else if (labels.size() != n) {
      throw std::invalid_argument("Poset: label count does not match size");
    }
    labels_ = std::move(labels);
    below_.assign(n, Bitset(n));
    above_.assign(n, Bitset(n));
  }

  // |below| strictly increases along <, so sorting by it gives a linear
  // extension.
  void compute_rank()
  {
    std::size_t const n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> depth(n);
    for (std::size_t i = 0; i < n; ++i)
      depth[i] = below_[i].count();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
    rank_.assign(n, 0);
    for (std::size_t k = 0; k < n; ++k)
      rank_[order[k]] = k;
  }

  std::vector<std::size_t> labels_;
  std::vector<Bitset> below_;
  std::vector<Bitset> above_;
  std::vector<std::size_t> rank_;
  PosetAction action_;
};

namespace detail
{

/// Element of `s` with the highest rank, or s.size() when empty.
inline std::size_t top_ranked(Poset const &X, Bitset const &s)
{
  std::size_t best = s.size();
  s.for_each([&](std::size_t i) {
    if (best == s.size() || X.rank()[i] > X.rank()[best])
      best = i;
  });
  return best;
}

inline std::size_t bottom_ranked(Poset const &X, Bitset const &s)
{
  std::size_t best = s.size();
  s.for_each([&](std::size_t i) {
    if (best == s.size() || X.rank()[i] < X.rank()[best])
      best = i;
  });
  return best;
}

/// Maximum of s, if s has one.
inline std::optional<std::size_t> maximum_of(Poset const &X, Bitset s)
{
  std::size_t m = top_ranked(X, s);
  if (m == s.size())
    return std::nullopt;
  s.reset(m);
  if (!s.is_subset_of(X.strictly_below(m)))
    return std::nullopt;
  return m;
}

inline std::optional<std::size_t> minimum_of(Poset const &X, Bitset s)
{
  std::size_t m = bottom_ranked(X, s);
  if (m == s.size())
    return std::nullopt;
  s.reset(m);
  if (!s.is_subset_of(X.strictly_above(m)))
    return std::nullopt;
  return m;
}

inline bool is_down_beat_in(Poset const &X, std::size_t x, Bitset const &alive)
{
  return maximum_of(X, X.strictly_below(x) & alive).has_value();
}

inline bool is_up_beat_in(Poset const &X, std::size_t x, Bitset const &alive)
{
  return minimum_of(X, X.strictly_above(x) & alive).has_value();
}

inline Bitset down_closed(Poset const &X, std::size_t x)
{
  Bitset b = X.strictly_below(x);
  b.set(x);
  return b;
}

inline Bitset up_closed(Poset const &X, std::size_t x)
{
  Bitset b = X.strictly_above(x);
  b.set(x);
  return b;
}

} // namespace detail

/// The strict down-set of x has a maximum.
inline bool is_down_beat(Poset const &X, std::size_t x)
{
  return detail::is_down_beat_in(X, x, X.all());
}

/// The strict up-set of x has a minimum.
inline bool is_up_beat(Poset const &X, std::size_t x)
{
  return detail::is_up_beat_in(X, x, X.all());
}

inline bool is_beat_point(Poset const &X, std::size_t x)
{
  return is_down_beat(X, x) || is_up_beat(X, x);
}

inline std::vector<std::size_t> maximal_elements(Poset const &X)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (X.strictly_above(i).none())
      out.push_back(i);
  return out;
}

inline std::vector<std::size_t> minimal_elements(Poset const &X)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < X.size(); ++i)
    if (X.strictly_below(i).none())
      out.push_back(i);
  return out;
}

inline std::optional<std::size_t> maximum(Poset const &X)
{
  return detail::maximum_of(X, X.all());
}

inline std::optional<std::size_t> minimum(Poset const &X)
{
  return detail::minimum_of(X, X.all());
}

/// One less than the number of elements in a longest chain.
inline std::size_t height(Poset const &X)
{
  if (X.empty())
    throw EmptyPoset("height of the empty poset");
  std::vector<std::size_t> order(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    order[X.rank()[i]] = i;
  std::vector<std::size_t> h(X.size(), 0);
  std::size_t best = 0;
  for (std::size_t x : order) {
    X.strictly_below(x).for_each([&](std::size_t y) { h[x] = std::max(h[x], h[y] + 1); });
    best = std::max(best, h[x]);
  }
  return best;
}

enum class BeatKind { down, up };

struct RemovalStep
{
  std::size_t label;
  BeatKind kind;
};

/// The beat points removed on the way to a core, in removal order.
struct RemovalTrace
{
  std::vector<RemovalStep> steps;

  /// Number of adjacent steps whose kinds differ.
  std::size_t changes() const
  {
    std::size_t c = 0;
    for (std::size_t i = 1; i < steps.size(); ++i)
      if (steps[i].kind != steps[i - 1].kind)
        ++c;
    return c;
  }
};

enum class RemovalPolicy
{
  ascending_prefer_down, ///< scan by increasing index, try down beat first
  descending_prefer_up,  ///< scan by decreasing index, try up beat first
};

/// Repeatedly removes beat points until none remain.
///
/// Passes sweep the surviving elements in the policy's order and drop each
/// beat point immediately, so later checks in a pass see the smaller space.
inline std::pair<Poset, RemovalTrace>
core(Poset const &X, RemovalPolicy policy = RemovalPolicy::ascending_prefer_down)
{
  Bitset alive = X.all();
  RemovalTrace trace;
  std::size_t const n = X.size();
  bool removed = true;
  while (removed) {
    removed = false;
    for (std::size_t k = 0; k < n; ++k) {
      poll_deadline();
      std::size_t x = policy == RemovalPolicy::ascending_prefer_down ? k : n - 1 - k;
      if (!alive.test(x) || alive.count() == 1)
        continue;
      std::optional<BeatKind> kind;
      if (policy == RemovalPolicy::ascending_prefer_down) {
        if (detail::is_down_beat_in(X, x, alive))
          kind = BeatKind::down;
        else if (detail::is_up_beat_in(X, x, alive))
          kind = BeatKind::up;
      } else {
        if (detail::is_up_beat_in(X, x, alive))
          kind = BeatKind::up;
        else if (detail::is_down_beat_in(X, x, alive))
          kind = BeatKind::down;
      }
      if (kind) {
        alive.reset(x);
        trace.steps.push_back({X.label(x), *kind});
        removed = true;
      }
    }
  }
  return {X.induced(alive), std::move(trace)};
}

/// True when every step of `trace` removes a beat point of the kind
/// recorded from what remains of X.
inline bool replay_trace(Poset const &X, RemovalTrace const &trace)
{
  Bitset alive = X.all();
  for (auto const &step : trace.steps) {
    auto idx = X.index_of_label(step.label);
    if (!idx || !alive.test(*idx))
      return false;
    bool ok = step.kind == BeatKind::down ? detail::is_down_beat_in(X, *idx, alive)
                                          : detail::is_up_beat_in(X, *idx, alive);
    if (!ok)
      return false;
    alive.reset(*idx);
  }
  return true;
}

/// Every pair with a common upper bound has a supremum.
inline bool is_reduced_lattice(Poset const &X)
{
  std::size_t const n = X.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      if (X.comparable(x, y))
        continue;
      Bitset upper = X.strictly_above(x) & X.strictly_above(y);
      if (upper.any() && !detail::minimum_of(X, upper))
        return false;
    }
    poll_deadline();
  }
  return true;
}

/// Every element is the supremum of the minimal elements below it.
inline bool is_atomic(Poset const &X)
{
  for (std::size_t x = 0; x < X.size(); ++x) {
    Bitset bounds = X.all();
    bool any_atom = false;
    detail::down_closed(X, x).for_each([&](std::size_t a) {
      if (X.strictly_below(a).none()) {
        bounds &= detail::up_closed(X, a);
        any_atom = true;
      }
    });
    if (!any_atom || !bounds.is_subset_of(detail::up_closed(X, x)))
      return false;
  }
  return true;
}

inline bool is_coatomic(Poset const &X)
{
  return is_atomic(X.opposite());
}

namespace detail
{

inline std::optional<std::size_t> meet(Poset const &X, std::size_t a, std::size_t b)
{
  return maximum_of(X, down_closed(X, a) & down_closed(X, b));
}

/// Elements of X that are meets of non-empty lower-bounded sets of
/// maximal elements. Iterated pairwise meets with maximal elements reach
/// every such meet.
inline Bitset meets_of_maxima(Poset const &X)
{
  auto maxima = maximal_elements(X);
  Bitset keep(X.size());
  std::vector<std::size_t> work;
  for (std::size_t m : maxima) {
    keep.set(m);
    work.push_back(m);
  }
  for (std::size_t head = 0; head < work.size(); ++head) {
    poll_deadline();
    for (std::size_t m : maxima) {
      auto c = meet(X, work[head], m);
      if (c && !keep.test(*c)) {
        keep.set(*c);
        work.push_back(*c);
      }
    }
  }
  return keep;
}

inline void require_reduced_lattice(Poset const &X)
{
  if (!is_reduced_lattice(X))
    throw NotReducedLattice("poset is not a reduced lattice");
}

} // namespace detail

/// i(X): meets of non-empty lower-bounded sets of maximal elements.
inline Poset i_op(Poset const &X)
{
  detail::require_reduced_lattice(X);
  return X.induced(detail::meets_of_maxima(X));
}

/// s(X): joins of non-empty upper-bounded sets of minimal elements.
inline Poset s_op(Poset const &X)
{
  detail::require_reduced_lattice(X);
  return X.induced(detail::meets_of_maxima(X.opposite()));
}

/// X, then alternately i and s (starting with i when X is atomic, with s
/// when it is only coatomic) until a term repeats. The last term is a core.
inline std::vector<Poset> xn_sequence(Poset const &X)
{
  detail::require_reduced_lattice(X);
  bool use_i;
  if (is_atomic(X))
    use_i = true;
  else if (is_coatomic(X))
    use_i = false;
  else
    throw NeitherAtomicNorCoatomic("poset is neither atomic nor coatomic");

  std::vector<Poset> seq{X};
  for (;;) {
    Poset const &cur = seq.back();
    Bitset keep = use_i ? detail::meets_of_maxima(cur)
                        : detail::meets_of_maxima(cur.opposite());
    if (keep.count() == cur.size())
      break;
    seq.push_back(cur.induced(keep));
    use_i = !use_i;
  }
  return seq;
}

/// Least n with X_n a single point, or nullopt when the sequence settles on
/// a larger core (X is not contractible).
inline std::optional<std::size_t> steps_to_contract(Poset const &X)
{
  if (X.empty())
    throw EmptyPoset("steps_to_contract of the empty poset");
  auto seq = xn_sequence(X);
  for (std::size_t n = 0; n < seq.size(); ++n)
    if (seq[n].size() == 1)
      return n;
  return std::nullopt;
}

/// A G-invariant core carrying the restricted action. For atomic or
/// coatomic reduced lattices this is the limit of xn_sequence; otherwise
/// whole orbits of beat points are removed until none is left (an orbit
/// of a beat point is an antichain of beat points of the same kind, so it
/// can go at once).
inline Poset invariant_core(Poset const &X)
{
  if (!X.has_action())
    throw MissingAction("invariant_core needs a poset with a group action");
  if (is_reduced_lattice(X) && (is_atomic(X) || is_coatomic(X)))
    return xn_sequence(X).back();

  Bitset alive = X.all();
  bool removed = true;
  while (removed && alive.count() > 1) {
    removed = false;
    for (std::size_t x = 0; x < X.size() && !removed; ++x) {
      poll_deadline();
      if (!alive.test(x) ||
          !(detail::is_down_beat_in(X, x, alive) || detail::is_up_beat_in(X, x, alive)))
        continue;
      Bitset orbit(X.size());
      std::vector<std::size_t> work{x};
      orbit.set(x);
      for (std::size_t head = 0; head < work.size(); ++head)
        for (auto const &g : X.action())
          if (!orbit.test(g[work[head]])) {
            orbit.set(g[work[head]]);
            work.push_back(g[work[head]]);
          }
      if (orbit.count() == alive.count())
        continue;
      alive.subtract(orbit);
      removed = true;
    }
  }
  return X.induced(alive);
}

inline constexpr std::size_t kDefaultOracleLimit = 12;

/// Minimum number of kind changes over all beat-point removal sequences
/// that end in a single point; nullopt if X is not contractible.
///
/// Exhaustive over removal sequences, memoized on the surviving subset:
/// a 0-1 shortest path on (subset, last kind) states.
inline std::optional<std::size_t> min_changes_oracle(Poset const &X,
                                                     std::size_t limit = kDefaultOracleLimit)
{
  std::size_t const n = X.size();
  if (n > limit)
    throw SizeLimitExceeded("oracle limited to " + std::to_string(limit) +
                            " elements, poset has " + std::to_string(n));
  if (n == 0)
    throw EmptyPoset("oracle on the empty poset");
  if (n > 24)
    throw SizeLimitExceeded("oracle state space too large");
  if (n == 1)
    return 0;

  using Mask = std::uint32_t;
  std::vector<Mask> below(n, 0), above(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (X.less(i, j)) {
        below[j] |= Mask{1} << i;
        above[i] |= Mask{1} << j;
      }

  auto has_max = [&](Mask s) {
    for (std::size_t m = 0; m < n; ++m)
      if ((s >> m & 1u) && (s & ~(Mask{1} << m) & ~below[m]) == 0)
        return true;
    return false;
  };
  auto has_min = [&](Mask s) {
    for (std::size_t m = 0; m < n; ++m)
      if ((s >> m & 1u) && (s & ~(Mask{1} << m) & ~above[m]) == 0)
        return true;
    return false;
  };

  // last kind: 0 none, 1 down, 2 up
  std::size_t const states = std::size_t{1} << n;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(states * 3, kInf);
  std::deque<std::pair<Mask, unsigned>> queue;
  Mask full = static_cast<Mask>(states - 1);
  dist[full * 3] = 0;
  queue.push_back({full, 0});
  while (!queue.empty()) {
    auto [mask, last] = queue.front();
    queue.pop_front();
    std::size_t d = dist[mask * 3 + last];
    if (std::popcount(mask) == 1)
      return d;
    for (std::size_t x = 0; x < n; ++x) {
      if (!(mask >> x & 1u))
        continue;
      Mask rest = mask & ~(Mask{1} << x);
      for (unsigned kind : {1u, 2u}) {
        bool beat = kind == 1 ? (below[x] & mask) && has_max(below[x] & mask)
                              : (above[x] & mask) && has_min(above[x] & mask);
        if (!beat)
          continue;
        std::size_t cost = (last != 0 && last != kind) ? 1 : 0;
        std::size_t &slot = dist[rest * 3 + kind];
        if (d + cost < slot) {
          slot = d + cost;
          if (cost == 0)
            queue.push_front({rest, kind});
          else
            queue.push_back({rest, kind});
        }
      }
    }
  }
  return std::nullopt;
}

/// Covering pairs (a, b): a < b with nothing strictly between.
inline std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(Poset const &X)
{
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < X.size(); ++a)
    X.strictly_above(a).for_each([&](std::size_t b) {
      if (!X.strictly_above(a).intersects(X.strictly_below(b)))
        edges.push_back({a, b});
    });
  return edges;
}

/// Graphviz rendering of the Hasse diagram, minimal elements at the bottom.
inline std::string to_dot(Poset const &X,
                          std::function<std::string(std::size_t)> const &node_label,
                          std::string const &graph_name = "poset")
{
  auto escape = [](std::string const &s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\')
        out += '\\';
      out += c;
    }
    return out;
  };
  std::ostringstream os;
  os << "digraph \"" << escape(graph_name) << "\" {\n";
  os << "  rankdir=BT;\n";
  os << "  node [shape=box];\n";
  for (std::size_t i = 0; i < X.size(); ++i)
    os << "  n" << i << " [label=\"" << escape(node_label(i)) << "\"];\n";
  for (auto [a, b] : hasse_edges(X))
    os << "  n" << a << " -> n" << b << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace psub

#endif // PSUB_POSET_HPP
