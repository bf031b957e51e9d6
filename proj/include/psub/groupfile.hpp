#ifndef PSUB_GROUPFILE_HPP
#define PSUB_GROUPFILE_HPP

#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "group.hpp"
#include "perm.hpp"

namespace psub
{

/// A group as written in a `.grp` file.
///
///     # name: S4
///     degree 4
///     gen (1 2)
///     gen (1 2 3 4)
///
/// Points are 1-based in the file and 0-based in `gens`. Other `#` lines
/// and blank lines are ignored.
struct GroupFile
{
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> gens;

  Group to_group(std::size_t max_order = kDefaultMaxOrder) const
  {
    return Group::closure(degree, gens, max_order);
  }
};

namespace detail
{

inline std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

} // namespace detail

inline GroupFile parse_group_file(std::string_view text, std::string default_name = {})
{
  GroupFile out;
  out.name = std::move(default_name);
  bool have_degree = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!raw.empty() && raw.back() == '\r')
      raw.remove_suffix(1);

    std::size_t indent = 0;
    while (indent < raw.size() && std::isspace(static_cast<unsigned char>(raw[indent])))
      ++indent;
    std::string_view line = detail::trim(raw);
    if (line.empty())
      continue;

    if (line.front() == '#') {
      auto body = detail::trim(line.substr(1));
      if (body.starts_with("name:"))
        out.name = std::string(detail::trim(body.substr(5)));
      continue;
    }

    auto space = line.find_first_of(" \t");
    std::string_view keyword = line.substr(0, space);
    std::string_view rest =
      space == std::string_view::npos ? std::string_view{} : line.substr(space);
    std::size_t rest_col = indent + (space == std::string_view::npos ? line.size() : space);

    if (keyword == "degree") {
      if (have_degree)
        throw ParseError("duplicate degree line", line_no, indent + 1);
      auto digits = detail::trim(rest);
      if (digits.empty())
        throw ParseError("degree needs a value", line_no, rest_col + 1);
      std::size_t value = 0;
      std::size_t col = indent + static_cast<std::size_t>(digits.data() - line.data()) + 1;
      for (std::size_t k = 0; k < digits.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(digits[k])))
          throw ParseError("degree must be a positive integer", line_no, col + k);
        value = value * 10 + static_cast<std::size_t>(digits[k] - '0');
        if (value > 0xffff)
          throw ParseError("degree too large", line_no, col + k);
      }
      if (value == 0)
        throw ParseError("degree must be a positive integer", line_no, col);
      out.degree = value;
      have_degree = true;
    } else if (keyword == "gen") {
      if (!have_degree)
        throw ParseError("gen before degree", line_no, indent + 1);
      out.gens.push_back(parse_cycles(rest, out.degree, line_no, rest_col));
    } else {
      throw ParseError("unknown keyword '" + std::string(keyword) + "'", line_no, indent + 1);
    }
  }
  if (!have_degree)
    throw ParseError("missing degree line", line_no == 0 ? 1 : line_no, 1);
  return out;
}

/// Reads and parses a group file; the name defaults to the file stem.
inline GroupFile load_group_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_file(buf.str(), path.stem().string());
}

/// Inverse of parse_group_file, up to comments and spacing.
inline std::string format_group_file(GroupFile const &g)
{
  std::string out;
  if (!g.name.empty())
    out += "# name: " + g.name + "\n";
  out += "degree " + std::to_string(g.degree) + "\n";
  for (auto const &p : g.gens)
    out += "gen " + p.to_cycle_string() + "\n";
  return out;
}

} // namespace psub

#endif // PSUB_GROUPFILE_HPP
