#ifndef PSUB_GROUP_HPP
#define PSUB_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bitset.hpp"
#include "error.hpp"
#include "perm.hpp"

namespace psub
{

using ElementIndex = std::uint32_t;

inline constexpr std::size_t kDefaultMaxOrder = 4096;
inline constexpr std::size_t kMaxTabulatedOrder = 4096;

inline bool is_prime(std::size_t n)
{
  if (n < 2)
    return false;
  for (std::size_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// Prime divisors of n in increasing order.
inline std::vector<unsigned> prime_divisors(std::size_t n)
{
  std::vector<unsigned> out;
  for (std::size_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<unsigned>(d));
      while (n % d == 0)
        n /= d;
    }
  }
  if (n > 1)
    out.push_back(static_cast<unsigned>(n));
  return out;
}

/// Largest power of p dividing n.
inline std::size_t p_part(std::size_t n, unsigned p)
{
  std::size_t r = 1;
  while (n && n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

/// Exponent k if n == p^k, otherwise -1.
inline int p_power_exponent(std::size_t n, unsigned p)
{
  int k = 0;
  while (n > 1) {
    if (n % p != 0)
      return -1;
    n /= p;
    ++k;
  }
  return n == 1 ? k : -1;
}

/// A subgroup of an ambient Group, as a set of element indices.
struct Subgroup
{
  Bitset members;
  std::size_t order = 0;

  Subgroup() = default;
  explicit Subgroup(Bitset m) : members(std::move(m)), order(members.count()) {}

  bool contains(ElementIndex g) const { return members.test(g); }
  bool is_trivial() const { return order == 1; }
  bool is_subgroup_of(Subgroup const &other) const
  {
    return members.is_subset_of(other.members);
  }

  friend bool operator==(Subgroup const &a, Subgroup const &b)
  {
    return a.members == b.members;
  }
};

/// Deterministic sort key: by order, then by member bitset.
inline bool subgroup_less(Subgroup const &a, Subgroup const &b)
{
  if (a.order != b.order)
    return a.order < b.order;
  return a.members < b.members;
}

/// A finite permutation group with every element enumerated.
///
/// Index 0 is the identity. Elements are numbered breadth-first from the
/// identity, right-multiplying by the generators in input order, so the
/// numbering depends only on the generator list.
class Group
{
public:
  /// Group generated by `gens` on `degree` points.
  /// Throws OrderLimitExceeded once more than `max_order` elements appear.
  static Group closure(std::size_t degree, std::vector<Perm> gens,
                       std::size_t max_order = kDefaultMaxOrder)
  {
    if (degree == 0)
      throw std::invalid_argument("closure: degree must be positive");
    if (max_order == 0)
      throw std::invalid_argument("closure: max_order must be at least 1");
    for (auto const &g : gens)
      if (g.degree() != degree)
        throw DegreeMismatch("closure: generator " + g.to_cycle_string() +
                             " has degree " + std::to_string(g.degree()) +
                             ", expected " + std::to_string(degree));

    Group G;
    G.degree_ = degree;
    G.generators_ = std::move(gens);
    G.add(Perm(degree));

    // right_gen_[i * k + j] = index of element(i) * gen(j)
    std::size_t const k = G.generators_.size();
    std::vector<ElementIndex> right_gen;
    for (std::size_t i = 0; i < G.elements_.size(); ++i) {
      poll_deadline();
      for (std::size_t j = 0; j < k; ++j) {
        Perm prod = G.elements_[i] * G.generators_[j];
        auto it = G.index_.find(prod);
        ElementIndex idx;
        if (it == G.index_.end()) {
          if (G.elements_.size() >= max_order)
            throw OrderLimitExceeded("closure exceeds max_order " +
                                     std::to_string(max_order));
          idx = G.add(std::move(prod));
          G.parent_.push_back({static_cast<ElementIndex>(i), static_cast<ElementIndex>(j)});
        } else {
          idx = it->second;
        }
        right_gen.push_back(idx);
      }
    }

    std::size_t const n = G.elements_.size();
    G.inverse_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      G.inverse_[i] = G.index_.at(G.elements_[i].inverse());

    if (n <= kMaxTabulatedOrder) {
      // i * j = (i * parent(j)) * gen(j), filled in BFS order of j
      G.table_.assign(n * n, 0);
      for (std::size_t i = 0; i < n; ++i)
        G.table_[i * n] = static_cast<std::uint16_t>(i);
      for (std::size_t j = 1; j < n; ++j) {
        auto [par, gen] = G.parent_[j - 1];
        for (std::size_t i = 0; i < n; ++i)
          G.table_[i * n + j] = static_cast<std::uint16_t>(
            right_gen[G.table_[i * n + par] * k + gen]);
      }
    }

    G.orders_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t ord = 1;
      ElementIndex x = static_cast<ElementIndex>(i);
      while (x != 0) {
        x = G.mul(x, static_cast<ElementIndex>(i));
        ++ord;
      }
      G.orders_[i] = static_cast<std::uint32_t>(ord);
    }
    return G;
  }

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return generators_; }
  Perm const &element(ElementIndex i) const { return elements_[i]; }
  std::vector<Perm> const &elements() const { return elements_; }
  bool has_table() const { return !table_.empty(); }

  std::optional<ElementIndex> index_of(Perm const &p) const
  {
    auto it = index_.find(p);
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  ElementIndex mul(ElementIndex a, ElementIndex b) const
  {
    if (!table_.empty())
      return table_[std::size_t{a} * elements_.size() + b];
    return index_.at(elements_[a] * elements_[b]);
  }

  ElementIndex inv(ElementIndex a) const { return inverse_[a]; }

  /// g * x * g^-1
  ElementIndex conj(ElementIndex g, ElementIndex x) const
  {
    return mul(mul(g, x), inverse_[g]);
  }

  ElementIndex pow(ElementIndex a, std::size_t e) const
  {
    ElementIndex r = 0;
    for (std::size_t i = 0; i < e; ++i)
      r = mul(r, a);
    return r;
  }

  /// Smallest k >= 1 with a^k = e.
  std::size_t element_order(ElementIndex a) const { return orders_[a]; }

  Subgroup whole() const { return Subgroup(Bitset(order(), true)); }

  Subgroup trivial() const
  {
    Bitset b(order());
    b.set(0);
    return Subgroup(std::move(b));
  }

private:
  Group() = default;

  ElementIndex add(Perm p)
  {
    auto idx = static_cast<ElementIndex>(elements_.size());
    index_.emplace(p, idx);
    elements_.push_back(std::move(p));
    return idx;
  }

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, ElementIndex, PermHash> index_;
  std::vector<std::pair<ElementIndex, ElementIndex>> parent_;
  std::vector<ElementIndex> inverse_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint32_t> orders_;
};

inline std::size_t element_order(Group const &G, ElementIndex i)
{
  return G.element_order(i);
}

/// Subgroup generated by the given elements.
inline Subgroup generate(Group const &G, std::span<ElementIndex const> gens)
{
  Bitset members(G.order());
  members.set(0);
  std::vector<ElementIndex> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (ElementIndex s : gens) {
      ElementIndex x = G.mul(queue[head], s);
      if (!members.test(x)) {
        members.set(x);
        queue.push_back(x);
      }
    }
  }
  return Subgroup(std::move(members));
}

/// Subgroup generated by the members of a set of elements.
inline Subgroup generate(Group const &G, Bitset const &elements)
{
  auto idx = elements.indices();
  std::vector<ElementIndex> gens(idx.begin(), idx.end());
  return generate(G, gens);
}

/// A small generating set: members added in index order whenever they are
/// not yet in the span of the previous picks.
inline std::vector<ElementIndex> generators_of(Group const &G, Subgroup const &S)
{
  std::vector<ElementIndex> gens;
  Subgroup span = G.trivial();
  S.members.for_each([&](std::size_t x) {
    if (!span.members.test(x)) {
      gens.push_back(static_cast<ElementIndex>(x));
      span = generate(G, gens);
    }
  });
  return gens;
}

inline Subgroup intersection(Subgroup const &a, Subgroup const &b)
{
  return Subgroup(a.members & b.members);
}

inline bool is_abelian(Group const &G, Subgroup const &S)
{
  auto gens = generators_of(G, S);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (G.mul(gens[i], gens[j]) != G.mul(gens[j], gens[i]))
        return false;
  return true;
}

/// {g S g^-1}
inline Subgroup conjugate(Group const &G, Subgroup const &S, ElementIndex g)
{
  Bitset m(G.order());
  S.members.for_each([&](std::size_t x) { m.set(G.conj(g, static_cast<ElementIndex>(x))); });
  return Subgroup(std::move(m));
}

/// C_G(S) = {g : gs = sg for all s in S}.
inline Subgroup centralizer(Group const &G, Subgroup const &S)
{
  auto gens = generators_of(G, S);
  Bitset m(G.order());
  for (ElementIndex g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (ElementIndex s : gens)
      if (G.mul(g, s) != G.mul(s, g)) {
        ok = false;
        break;
      }
    if (ok)
      m.set(g);
  }
  return Subgroup(std::move(m));
}

inline Subgroup center(Group const &G)
{
  return centralizer(G, G.whole());
}

/// N_G(S) = {g : g S g^-1 = S}; `gens` must generate S.
inline Subgroup normalizer(Group const &G, Subgroup const &S,
                           std::span<ElementIndex const> gens)
{
  Bitset m(G.order());
  for (ElementIndex g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (ElementIndex s : gens)
      if (!S.members.test(G.conj(g, s))) {
        ok = false;
        break;
      }
    if (ok)
      m.set(g);
  }
  return Subgroup(std::move(m));
}

inline Subgroup normalizer(Group const &G, Subgroup const &S)
{
  auto gens = generators_of(G, S);
  return normalizer(G, S, gens);
}

inline bool is_normal(Group const &G, Subgroup const &S)
{
  auto gens = generators_of(G, S);
  for (Perm const &g : G.generators()) {
    ElementIndex gi = *G.index_of(g);
    for (ElementIndex s : gens)
      if (!S.members.test(G.conj(gi, s)))
        return false;
  }
  return true;
}

/// Omega_1: the subgroup generated by the elements of order exactly p in S.
inline Subgroup omega1(Group const &G, Subgroup const &S, unsigned p)
{
  Bitset order_p(G.order());
  S.members.for_each([&](std::size_t x) {
    if (G.element_order(static_cast<ElementIndex>(x)) == p)
      order_p.set(x);
  });
  return generate(G, order_p);
}

inline Subgroup omega1(Group const &G, unsigned p)
{
  return omega1(G, G.whole(), p);
}

/// Abelian and every non-identity element has order p.
inline bool is_elementary_abelian(Group const &G, Subgroup const &S, unsigned p)
{
  bool exponent_p = true;
  S.members.for_each([&](std::size_t x) {
    if (x != 0 && G.element_order(static_cast<ElementIndex>(x)) != p)
      exponent_p = false;
  });
  return exponent_p && is_abelian(G, S);
}

} // namespace psub

#endif // PSUB_GROUP_HPP
