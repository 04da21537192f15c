#pragma once

#include <compare>
#include <cstddef>
#include <string_view>

namespace sug {

namespace detail {

constexpr bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

constexpr std::size_t run_end(std::string_view s, std::size_t pos) noexcept {
  const bool digits = is_digit(s[pos]);
  while (pos < s.size() && is_digit(s[pos]) == digits) ++pos;
  return pos;
}

constexpr std::strong_ordering compare_numeric_runs(std::string_view a, std::string_view b) noexcept {
  while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
  while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
  if (a.size() != b.size()) return a.size() <=> b.size();
  return a.compare(b) <=> 0;
}

}  // namespace detail

/// Numeric-aware comparison of release strings: digit runs compare by value,
/// other runs byte-wise ("1.9" < "1.10", "2.0-beta" > "2.0"). Strings that
/// tie segment-wise (e.g. "1.01" vs "1.1") fall back to plain lexicographic
/// order, so this is a strict total order consistent with equality.
constexpr std::strong_ordering compare_versions(std::string_view a, std::string_view b) noexcept {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    const std::size_t ie = detail::run_end(a, i);
    const std::size_t je = detail::run_end(b, j);
    const std::string_view ra = a.substr(i, ie - i);
    const std::string_view rb = b.substr(j, je - j);
    const bool da = detail::is_digit(ra.front());
    const bool db = detail::is_digit(rb.front());
    std::strong_ordering cmp = std::strong_ordering::equal;
    if (da && db) {
      cmp = detail::compare_numeric_runs(ra, rb);
    } else if (da != db) {
      // Numbers sort before text at the same position.
      cmp = da ? std::strong_ordering::less : std::strong_ordering::greater;
    } else {
      cmp = ra.compare(rb) <=> 0;
    }
    if (cmp != 0) return cmp;
    i = ie;
    j = je;
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) <=> (b.size() - j);
  return a.compare(b) <=> 0;
}

struct VersionLess {
  constexpr bool operator()(std::string_view a, std::string_view b) const noexcept {
    return compare_versions(a, b) < 0;
  }
};

}  // namespace sug
