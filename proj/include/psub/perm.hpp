#ifndef PSUB_PERM_HPP
#define PSUB_PERM_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace psub
{

using Point = std::uint16_t;

/// A permutation of {0, ..., degree-1}, stored by images.
///
/// Products follow the left-to-right convention of cycle notation: `a * b`
/// applies `a` first, so (a * b)(x) = b(a(x)).
class Perm
{
public:
  Perm() = default;

  explicit Perm(std::size_t degree) : images_(degree)
  {
    std::iota(images_.begin(), images_.end(), Point{0});
  }

  /// Throws std::invalid_argument unless `images` is a bijection.
  explicit Perm(std::vector<Point> images) : images_(std::move(images))
  {
    std::vector<bool> seen(images_.size(), false);
    for (Point x : images_) {
      if (x >= images_.size() || seen[x])
        throw std::invalid_argument("Perm: images do not form a bijection");
      seen[x] = true;
    }
  }

  /// Build from 0-based disjoint cycles.
  static Perm from_cycles(std::size_t degree,
                          std::initializer_list<std::initializer_list<Point>> cycles)
  {
    Perm p(degree);
    std::vector<bool> used(degree, false);
    for (auto const &cycle : cycles) {
      std::vector<Point> c(cycle);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree || used[c[i]])
          throw std::invalid_argument("Perm::from_cycles: bad or repeated point");
        used[c[i]] = true;
        p.images_[c[i]] = c[(i + 1) % c.size()];
      }
    }
    return p;
  }

  std::size_t degree() const { return images_.size(); }
  Point operator[](std::size_t x) const { return images_[x]; }
  std::vector<Point> const &images() const { return images_; }

  bool is_identity() const
  {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i)
        return false;
    return true;
  }

  Perm inverse() const
  {
    Perm r(degree());
    for (std::size_t i = 0; i < images_.size(); ++i)
      r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  friend Perm operator*(Perm const &a, Perm const &b)
  {
    Perm r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.images_.size(); ++i)
      r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  friend bool operator==(Perm const &, Perm const &) = default;
  friend auto operator<=>(Perm const &, Perm const &) = default;

  /// Disjoint-cycle notation with 1-based points; "()" for the identity.
  std::string to_cycle_string() const
  {
    std::string out;
    std::vector<bool> done(degree(), false);
    for (std::size_t start = 0; start < degree(); ++start) {
      if (done[start] || images_[start] == start)
        continue;
      out += '(';
      std::size_t x = start;
      bool first = true;
      do {
        if (!first)
          out += ' ';
        first = false;
        out += std::to_string(x + 1);
        done[x] = true;
        x = images_[x];
      } while (x != start);
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  std::size_t hash() const
  {
    std::uint64_t h = 1469598103934665603ULL;
    for (Point x : images_) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }

private:
  std::vector<Point> images_;
};

struct PermHash
{
  std::size_t operator()(Perm const &p) const { return p.hash(); }
};

inline std::ostream &operator<<(std::ostream &os, Perm const &p)
{
  return os << p.to_cycle_string();
}

/// Parse 1-based disjoint-cycle notation such as "(1 2 8 3)(4 7)".
///
/// `line` and `column_offset` only decorate ParseError positions; columns
/// are 1-based. Points larger than `degree` raise DegreeMismatch.
inline Perm parse_cycles(std::string_view text, std::size_t degree,
                         std::size_t line = 1, std::size_t column_offset = 0)
{
  Perm result(degree);
  std::vector<Point> images = result.images();
  std::vector<bool> used(degree, false);

  auto fail = [&](std::string const &msg, std::size_t pos) -> ParseError {
    return ParseError(msg, line, column_offset + pos + 1);
  };

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
      ++i;
  };

  skip_ws();
  if (i == text.size())
    throw fail("expected '('", i);

  while (i < text.size()) {
    if (text[i] != '(')
      throw fail("expected '('", i);
    ++i;
    std::vector<Point> cycle;
    for (;;) {
      skip_ws();
      if (i == text.size())
        throw fail("unterminated cycle", i);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] < '0' || text[i] > '9')
        throw fail(std::string("unexpected character '") + text[i] + "'", i);
      std::size_t start = i;
      std::size_t value = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
        value = value * 10 + static_cast<std::size_t>(text[i] - '0');
        if (value > 65535)
          throw fail("point out of range", start);
        ++i;
      }
      if (value == 0)
        throw fail("points are 1-based", start);
      if (value > degree)
        throw DegreeMismatch("line " + std::to_string(line) + ", column " +
                             std::to_string(column_offset + start + 1) + ": point " +
                             std::to_string(value) + " exceeds degree " +
                             std::to_string(degree));
      Point x = static_cast<Point>(value - 1);
      if (used[x])
        throw fail("point " + std::to_string(value) + " repeated within permutation",
                   start);
      used[x] = true;
      cycle.push_back(x);
    }
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    skip_ws();
  }
  return Perm(std::move(images));
}

} // namespace psub

#endif // PSUB_PERM_HPP
