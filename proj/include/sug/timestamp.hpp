#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace sug {

/// UTC instant at millisecond precision. Day-precision inputs map to
/// midnight UTC.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Stands in for +infinity in time-sliced queries.
inline constexpr Timestamp kEndOfTime = Timestamp::max();
inline constexpr Timestamp kBeginningOfTime = Timestamp::min();

namespace detail {

inline bool read_digits(std::string_view s, std::size_t& pos, std::size_t count, int& out) {
  if (pos + count > s.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  pos += count;
  return true;
}

inline bool expect(std::string_view s, std::size_t& pos, char c) {
  if (pos < s.size() && s[pos] == c) {
    ++pos;
    return true;
  }
  return false;
}

inline void append_padded(std::string& out, long long value, int width) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  for (int pad = width - static_cast<int>(end - buf); pad > 0; --pad) out.push_back('0');
  out.append(buf, end);
}

}  // namespace detail

/// Parses `YYYY-MM-DD` or `YYYY-MM-DD[T| ]HH:MM[:SS[.fff]][Z|+HH:MM|-HH:MM]`.
/// Offsets are folded into UTC. Returns nullopt on anything else.
inline std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y = 0, mo = 0, d = 0;
  if (!detail::read_digits(text, pos, 4, y) || !detail::expect(text, pos, '-') ||
      !detail::read_digits(text, pos, 2, mo) || !detail::expect(text, pos, '-') ||
      !detail::read_digits(text, pos, 2, d)) {
    return std::nullopt;
  }
  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  Timestamp result = time_point_cast<milliseconds>(sys_days{date});
  if (pos == text.size()) return result;

  if (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' ') return std::nullopt;
  ++pos;
  int hh = 0, mm = 0, ss = 0, ms = 0;
  if (!detail::read_digits(text, pos, 2, hh) || !detail::expect(text, pos, ':') ||
      !detail::read_digits(text, pos, 2, mm)) {
    return std::nullopt;
  }
  if (detail::expect(text, pos, ':')) {
    if (!detail::read_digits(text, pos, 2, ss)) return std::nullopt;
    if (detail::expect(text, pos, '.')) {
      // Keep millisecond precision; further digits are truncated.
      int digits = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        if (digits < 3) ms = ms * 10 + (text[pos] - '0');
        ++digits;
        ++pos;
      }
      if (digits == 0) return std::nullopt;
      for (int i = digits; i < 3; ++i) ms *= 10;
    }
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  result += hours{hh} + minutes{mm} + seconds{ss} + milliseconds{ms};

  if (pos == text.size()) return result;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '+' ? 1 : -1;
    ++pos;
    int oh = 0, om = 0;
    if (!detail::read_digits(text, pos, 2, oh)) return std::nullopt;
    detail::expect(text, pos, ':');
    if (!detail::read_digits(text, pos, 2, om)) return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    result -= sign * (hours{oh} + minutes{om});
  }
  if (pos != text.size()) return std::nullopt;
  return result;
}

/// Canonical text form: `YYYY-MM-DD` at midnight, otherwise
/// `YYYY-MM-DDTHH:MM:SS[.fff]Z`. parse_timestamp(format_timestamp(t)) == t.
inline std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  if (t == kEndOfTime) return "+inf";
  if (t == kBeginningOfTime) return "-inf";
  const auto day_point = floor<days>(t);
  const year_month_day date{day_point};
  std::string out;
  out.reserve(24);
  detail::append_padded(out, static_cast<int>(date.year()), 4);
  out.push_back('-');
  detail::append_padded(out, static_cast<unsigned>(date.month()), 2);
  out.push_back('-');
  detail::append_padded(out, static_cast<unsigned>(date.day()), 2);
  const auto since_midnight = t - day_point;
  if (since_midnight == milliseconds::zero()) return out;

  const hh_mm_ss clock{since_midnight};
  out.push_back('T');
  detail::append_padded(out, clock.hours().count(), 2);
  out.push_back(':');
  detail::append_padded(out, clock.minutes().count(), 2);
  out.push_back(':');
  detail::append_padded(out, clock.seconds().count(), 2);
  if (clock.subseconds().count() != 0) {
    out.push_back('.');
    detail::append_padded(out, clock.subseconds().count(), 3);
  }
  out.push_back('Z');
  return out;
}

/// Shorthand for fixtures and tests.
inline Timestamp make_date(int y, unsigned m, unsigned d) {
  using namespace std::chrono;
  return time_point_cast<milliseconds>(sys_days{year{y} / month{m} / day{d}});
}

}  // namespace sug
