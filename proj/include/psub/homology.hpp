#ifndef PSUB_HOMOLOGY_HPP
#define PSUB_HOMOLOGY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "error.hpp"
#include "poset.hpp"

namespace psub
{

using BigInt = mpz_class;
using Simplex = std::vector<std::uint32_t>;

/// A simplicial complex as its simplices grouped by dimension; every
/// simplex lists its vertices in increasing order and each dimension is
/// sorted lexicographically.
struct SimplicialComplex
{
  std::vector<std::vector<Simplex>> simplices_by_dim;

  /// Top dimension, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(simplices_by_dim.size()) - 1; }
  bool empty() const { return simplices_by_dim.empty(); }

  std::size_t count(std::size_t k) const
  {
    return k < simplices_by_dim.size() ? simplices_by_dim[k].size() : 0;
  }

  std::size_t index_of(Simplex const &s) const
  {
    auto const &level = simplices_by_dim.at(s.size() - 1);
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s)
      return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(it - level.begin());
  }

  /// Face-closed, duplicate-free, vertices strictly increasing.
  bool validate() const
  {
    for (std::size_t k = 0; k < simplices_by_dim.size(); ++k) {
      auto const &level = simplices_by_dim[k];
      for (std::size_t i = 0; i < level.size(); ++i) {
        if (level[i].size() != k + 1)
          return false;
        if (!std::is_sorted(level[i].begin(), level[i].end()) ||
            std::adjacent_find(level[i].begin(), level[i].end()) != level[i].end())
          return false;
        if (i && !(level[i - 1] < level[i]))
          return false;
        if (k == 0)
          continue;
        for (std::size_t drop = 0; drop <= k; ++drop) {
          Simplex face = level[i];
          face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
          if (index_of(face) == std::numeric_limits<std::size_t>::max())
            return false;
        }
      }
    }
    return true;
  }

  /// The same complex with vertex v renamed to relabel[v].
  SimplicialComplex relabeled(std::vector<std::uint32_t> const &relabel) const
  {
    SimplicialComplex out;
    out.simplices_by_dim.resize(simplices_by_dim.size());
    for (std::size_t k = 0; k < simplices_by_dim.size(); ++k) {
      for (auto const &s : simplices_by_dim[k]) {
        Simplex t;
        for (auto v : s)
          t.push_back(relabel[v]);
        std::sort(t.begin(), t.end());
        out.simplices_by_dim[k].push_back(std::move(t));
      }
      std::sort(out.simplices_by_dim[k].begin(), out.simplices_by_dim[k].end());
    }
    return out;
  }
};

/// K(X): the non-empty chains of X; a chain of k+1 elements is a k-simplex.
inline SimplicialComplex order_complex(Poset const &X)
{
  SimplicialComplex K;
  std::vector<std::uint32_t> chain;
  auto extend = [&](auto &&self, std::size_t top) -> void {
    poll_deadline();
    std::size_t k = chain.size() - 1;
    if (K.simplices_by_dim.size() <= k)
      K.simplices_by_dim.resize(k + 1);
    Simplex s = chain;
    std::sort(s.begin(), s.end());
    K.simplices_by_dim[k].push_back(std::move(s));
    X.strictly_above(top).for_each([&](std::size_t y) {
      chain.push_back(static_cast<std::uint32_t>(y));
      self(self, y);
      chain.pop_back();
    });
  };
  for (std::size_t x = 0; x < X.size(); ++x) {
    chain.assign(1, static_cast<std::uint32_t>(x));
    extend(extend, x);
  }
  for (auto &level : K.simplices_by_dim)
    std::sort(level.begin(), level.end());
  return K;
}

/// Number of chains of X with k+1 elements, for each k (no enumeration).
inline std::vector<std::int64_t> chain_counts(Poset const &X)
{
  std::vector<std::size_t> order(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    order[X.rank()[i]] = i;
  // ending[x][k] = chains with k+1 elements whose top is x
  std::vector<std::vector<std::int64_t>> ending(X.size());
  std::vector<std::int64_t> total;
  for (std::size_t x : order) {
    auto &row = ending[x];
    row.assign(1, 1);
    X.strictly_below(x).for_each([&](std::size_t y) {
      auto const &below = ending[y];
      if (row.size() < below.size() + 1)
        row.resize(below.size() + 1, 0);
      for (std::size_t k = 0; k < below.size(); ++k)
        if (__builtin_add_overflow(row[k + 1], below[k], &row[k + 1]))
          throw std::overflow_error("chain count exceeds 64 bits");
    });
    if (total.size() < row.size())
      total.resize(row.size(), 0);
    for (std::size_t k = 0; k < row.size(); ++k)
      if (__builtin_add_overflow(total[k], row[k], &total[k]))
        throw std::overflow_error("chain count exceeds 64 bits");
  }
  return total;
}

/// chi(K(X)), through the signed recursion f(x) = 1 - sum_{y < x} f(y)
/// whose total is the alternating count of chains. 0 for the empty poset.
inline std::int64_t euler_char(Poset const &X)
{
  std::vector<std::size_t> order(X.size());
  for (std::size_t i = 0; i < X.size(); ++i)
    order[X.rank()[i]] = i;
  std::vector<std::int64_t> f(X.size(), 0);
  std::int64_t chi = 0;
  for (std::size_t x : order) {
    std::int64_t v = 1;
    X.strictly_below(x).for_each([&](std::size_t y) { v -= f[y]; });
    f[x] = v;
    chi += v;
  }
  return chi;
}

/// Sparse integer matrix stored by columns; entries within a column are
/// sorted by row.
struct SparseIntMatrix
{
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> columns;

  std::int64_t at(std::size_t r, std::size_t c) const
  {
    for (auto [row, v] : columns.at(c))
      if (row == r)
        return v;
    return 0;
  }

  std::vector<std::vector<std::int64_t>> to_dense() const
  {
    std::vector<std::vector<std::int64_t>> d(rows, std::vector<std::int64_t>(cols, 0));
    for (std::size_t c = 0; c < cols; ++c)
      for (auto [r, v] : columns[c])
        d[r][c] = v;
    return d;
  }

  static SparseIntMatrix from_dense(std::vector<std::vector<std::int64_t>> const &d)
  {
    SparseIntMatrix M;
    M.rows = d.size();
    M.cols = d.empty() ? 0 : d.front().size();
    M.columns.resize(M.cols);
    for (std::size_t c = 0; c < M.cols; ++c)
      for (std::size_t r = 0; r < M.rows; ++r)
        if (d[r][c] != 0)
          M.columns[c].push_back({static_cast<std::uint32_t>(r), d[r][c]});
    return M;
  }
};

/// Simplicial boundary d_k : C_k -> C_{k-1}; deleting the vertex in
/// position i carries sign (-1)^i.
inline SparseIntMatrix boundary_matrix(SimplicialComplex const &K, int k)
{
  if (k < 1 || k > K.dimension())
    throw DimensionOutOfRange("boundary_matrix: dimension " + std::to_string(k) +
                              " outside 1.." + std::to_string(K.dimension()));
  auto const &cells = K.simplices_by_dim[static_cast<std::size_t>(k)];
  SparseIntMatrix M;
  M.rows = K.count(static_cast<std::size_t>(k - 1));
  M.cols = cells.size();
  M.columns.resize(M.cols);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto &col = M.columns[c];
    for (std::size_t drop = 0; drop < cells[c].size(); ++drop) {
      Simplex face = cells[c];
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      col.push_back({static_cast<std::uint32_t>(K.index_of(face)), drop % 2 ? -1 : 1});
    }
    std::sort(col.begin(), col.end());
  }
  return M;
}

struct SmithResult
{
  /// Non-zero invariant factors d1 | d2 | ..., all positive.
  std::vector<BigInt> factors;
  std::size_t rank = 0;
};

namespace detail
{

struct Overflow
{};

template<typename Int>
struct Arith;

template<>
struct Arith<std::int64_t>
{
  static std::int64_t from(std::int64_t v) { return v; }
  static std::int64_t sub_mul(std::int64_t a, std::int64_t q, std::int64_t b)
  {
    std::int64_t prod, r;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &r))
      throw Overflow{};
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b)
  {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
      throw Overflow{};
    return r;
  }
  static std::int64_t abs(std::int64_t a)
  {
    if (a == std::numeric_limits<std::int64_t>::min())
      throw Overflow{};
    return a < 0 ? -a : a;
  }
  static BigInt big(std::int64_t a) { return BigInt(static_cast<long>(a)); }
};

template<>
struct Arith<BigInt>
{
  static BigInt from(std::int64_t v) { return BigInt(static_cast<long>(v)); }
  static BigInt sub_mul(BigInt const &a, BigInt const &q, BigInt const &b)
  {
    return a - q * b;
  }
  static BigInt add(BigInt const &a, BigInt const &b) { return a + b; }
  static BigInt abs(BigInt const &a) { return ::abs(a); }
  static BigInt big(BigInt const &a) { return a; }
};

/// Dense SNF with smallest-absolute-value pivoting; returns |diagonal|.
template<typename Int>
std::vector<BigInt> dense_smith(std::vector<std::vector<Int>> A)
{
  using Ar = Arith<Int>;
  std::size_t const m = A.size();
  std::size_t const n = m ? A.front().size() : 0;
  std::vector<BigInt> diag;
  Int const zero = Ar::from(0);

  auto swap_cols = [&](std::size_t a, std::size_t b) {
    for (auto &row : A)
      std::swap(row[a], row[b]);
  };

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest non-zero |entry| in the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (A[i][j] != zero && (pi == m || Ar::abs(A[i][j]) < Ar::abs(A[pi][pj]))) {
          pi = i;
          pj = j;
        }
    if (pi == m)
      break;
    std::swap(A[t], A[pi]);
    swap_cols(t, pj);

    for (;;) {
      poll_deadline();
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A[i][t] == zero)
          continue;
        Int q = A[i][t] / A[t][t];
        for (std::size_t j = t; j < n; ++j)
          A[i][j] = Ar::sub_mul(A[i][j], q, A[t][j]);
        if (A[i][t] != zero)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A[t][j] == zero)
          continue;
        Int q = A[t][j] / A[t][t];
        for (std::size_t i = t; i < m; ++i)
          A[i][j] = Ar::sub_mul(A[i][j], q, A[i][t]);
        if (A[t][j] != zero)
          clean = false;
      }
      if (!clean) {
        // move the smallest remainder in row/column t onto the diagonal
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (A[i][t] != zero && Ar::abs(A[i][t]) < Ar::abs(A[bi][bj])) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[t][j] != zero && Ar::abs(A[t][j]) < Ar::abs(A[bi][bj])) {
            bi = t;
            bj = j;
          }
        std::swap(A[t], A[bi]);
        swap_cols(t, bj);
        continue;
      }
      // divisibility: fold in a row whose entry the pivot does not divide
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (A[i][j] % A[t][t] != zero) {
            bad = i;
            break;
          }
      if (bad == m)
        break;
      for (std::size_t j = t; j < n; ++j)
        A[t][j] = Ar::add(A[t][j], A[bad][j]);
    }
    diag.push_back(Ar::big(Ar::abs(A[t][t])));
  }
  return diag;
}

/// Sparse elimination of unit pivots, then dense SNF on what is left.
template<typename Int>
SmithResult sparse_smith(SparseIntMatrix const &M)
{
  using Ar = Arith<Int>;
  using Col = std::vector<std::pair<std::uint32_t, Int>>;
  Int const zero = Ar::from(0);

  std::vector<Col> cols(M.cols);
  std::vector<std::vector<std::uint32_t>> row_cols(M.rows);
  for (std::size_t c = 0; c < M.cols; ++c)
    for (auto [r, v] : M.columns[c]) {
      if (v == 0)
        continue;
      cols[c].push_back({r, Ar::from(v)});
      row_cols[r].push_back(static_cast<std::uint32_t>(c));
    }
  std::vector<bool> col_alive(M.cols, true);

  auto entry = [&](Col const &col, std::uint32_t r) -> Int const * {
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](auto const &e, std::uint32_t row) { return e.first < row; });
    return it != col.end() && it->first == r ? &it->second : nullptr;
  };

  std::size_t units = 0;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t c = 0; c < M.cols; ++c) {
      if (!col_alive[c] || cols[c].empty())
        continue;
      poll_deadline();
      // unit entry on the sparsest row limits fill-in
      std::size_t best = cols[c].size();
      for (std::size_t e = 0; e < cols[c].size(); ++e) {
        Int const &v = cols[c][e].second;
        if (Ar::abs(v) != Ar::from(1))
          continue;
        if (best == cols[c].size() ||
            row_cols[cols[c][e].first].size() < row_cols[cols[c][best].first].size())
          best = e;
      }
      if (best == cols[c].size())
        continue;

      std::uint32_t const r = cols[c][best].first;
      Int const pivot = cols[c][best].second; // +-1, its own inverse
      Col const pivot_col = cols[c];
      col_alive[c] = false;
      ++units;
      progress = true;

      std::vector<std::uint32_t> others = row_cols[r];
      std::sort(others.begin(), others.end());
      others.erase(std::unique(others.begin(), others.end()), others.end());
      for (std::uint32_t c2 : others) {
        if (c2 == c || !col_alive[c2])
          continue;
        Int const *v2 = entry(cols[c2], r);
        if (!v2 || *v2 == zero)
          continue;
        Int const factor = Ar::sub_mul(zero, Ar::from(-1), *v2 * pivot);
        // col_c2 -= factor * pivot_col
        Col merged;
        merged.reserve(cols[c2].size() + pivot_col.size());
        auto a = cols[c2].begin();
        auto b = pivot_col.begin();
        while (a != cols[c2].end() || b != pivot_col.end()) {
          if (b == pivot_col.end() || (a != cols[c2].end() && a->first < b->first)) {
            merged.push_back(*a++);
          } else if (a == cols[c2].end() || b->first < a->first) {
            Int v = Ar::sub_mul(zero, factor, b->second);
            row_cols[b->first].push_back(c2);
            merged.push_back({b->first, std::move(v)});
            ++b;
          } else {
            Int v = Ar::sub_mul(a->second, factor, b->second);
            if (v != zero)
              merged.push_back({a->first, std::move(v)});
            ++a;
            ++b;
          }
        }
        cols[c2] = std::move(merged);
      }
      row_cols[r].clear();
    }
  }

  // leftovers: alive columns, restricted to rows still in use
  std::vector<std::size_t> rest_cols;
  std::vector<std::uint32_t> rest_rows;
  for (std::size_t c = 0; c < M.cols; ++c)
    if (col_alive[c] && !cols[c].empty()) {
      rest_cols.push_back(c);
      for (auto const &e : cols[c])
        rest_rows.push_back(e.first);
    }
  std::sort(rest_rows.begin(), rest_rows.end());
  rest_rows.erase(std::unique(rest_rows.begin(), rest_rows.end()), rest_rows.end());

  SmithResult result;
  result.factors.assign(units, BigInt(1));
  if (!rest_cols.empty()) {
    std::vector<std::vector<Int>> dense(rest_rows.size(),
                                        std::vector<Int>(rest_cols.size(), zero));
    for (std::size_t j = 0; j < rest_cols.size(); ++j)
      for (auto const &e : cols[rest_cols[j]]) {
        auto i = std::lower_bound(rest_rows.begin(), rest_rows.end(), e.first) -
                 rest_rows.begin();
        dense[static_cast<std::size_t>(i)][j] = e.second;
      }
    auto diag = dense_smith<Int>(std::move(dense));
    result.factors.insert(result.factors.end(), diag.begin(), diag.end());
  }
  // dense_smith yields a divisibility chain; the unit prefix keeps it one
  result.rank = result.factors.size();
  return result;
}

} // namespace detail

/// Smith normal form invariant factors and rank. Arithmetic runs in 64-bit
/// with overflow checks and is redone in arbitrary precision on overflow.
inline SmithResult smith_normal_form(SparseIntMatrix const &M)
{
  try {
    return detail::sparse_smith<std::int64_t>(M);
  } catch (detail::Overflow const &) {
    return detail::sparse_smith<BigInt>(M);
  }
}

inline SmithResult smith_normal_form(std::vector<std::vector<std::int64_t>> const &dense)
{
  return smith_normal_form(SparseIntMatrix::from_dense(dense));
}

/// Reduced integral homology: betti[k] and the torsion invariant factors
/// (> 1) of H_k, for k up to the last non-trivial group (at least 0).
struct HomologySummary
{
  std::vector<std::int64_t> betti;
  std::vector<std::vector<BigInt>> torsion;
  bool reduced = true;

  bool is_trivial() const
  {
    for (auto b : betti)
      if (b != 0)
        return false;
    for (auto const &t : torsion)
      if (!t.empty())
        return false;
    return true;
  }

  /// `b0;b1;...|t0;t1;...` where t_k lists H_k's torsion factors joined by
  /// commas (empty when torsion-free).
  std::string serialize() const
  {
    std::string out;
    for (std::size_t k = 0; k < betti.size(); ++k) {
      if (k)
        out += ';';
      out += std::to_string(betti[k]);
    }
    out += '|';
    for (std::size_t k = 0; k < torsion.size(); ++k) {
      if (k)
        out += ';';
      for (std::size_t i = 0; i < torsion[k].size(); ++i) {
        if (i)
          out += ',';
        out += torsion[k][i].get_str();
      }
    }
    return out;
  }

  friend bool operator==(HomologySummary const &a, HomologySummary const &b)
  {
    return a.betti == b.betti && a.torsion == b.torsion && a.reduced == b.reduced;
  }
};

inline HomologySummary reduced_homology(SimplicialComplex const &K)
{
  if (K.empty())
    throw EmptyComplex("reduced homology of the empty complex");
  std::size_t const top = static_cast<std::size_t>(K.dimension());
  // rank[k] = rank of d_k; d_0 is the augmentation, of rank 1
  std::vector<std::size_t> rank(top + 2, 0);
  std::vector<std::vector<BigInt>> factors(top + 2);
  rank[0] = 1;
  for (std::size_t k = 1; k <= top; ++k) {
    auto snf = smith_normal_form(boundary_matrix(K, static_cast<int>(k)));
    rank[k] = snf.rank;
    factors[k] = std::move(snf.factors);
  }
  HomologySummary h;
  for (std::size_t k = 0; k <= top; ++k) {
    h.betti.push_back(static_cast<std::int64_t>(K.count(k)) -
                      static_cast<std::int64_t>(rank[k]) -
                      static_cast<std::int64_t>(rank[k + 1]));
    std::vector<BigInt> tors;
    for (auto const &d : factors[k + 1])
      if (d > 1)
        tors.push_back(d);
    h.torsion.push_back(std::move(tors));
  }
  // trailing trivial groups carry no information and depend on dimension
  while (h.betti.size() > 1 && h.betti.back() == 0 && h.torsion.back().empty()) {
    h.betti.pop_back();
    h.torsion.pop_back();
  }
  return h;
}

/// Homology of K(X) computed on the core of X, which has the same
/// homotopy type.
inline HomologySummary poset_homology(Poset const &X)
{
  return reduced_homology(order_complex(core(X).first));
}

} // namespace psub

#endif // PSUB_HOMOLOGY_HPP
