#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "girylab/error.hpp"

namespace girylab {

namespace detail {

using int128 = __int128;

constexpr int128 abs128(int128 x) { return x < 0 ? -x : x; }

constexpr int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr bool fits64(int128 x) {
  return x >= static_cast<int128>(std::numeric_limits<std::int64_t>::min()) &&
         x <= static_cast<int128>(std::numeric_limits<std::int64_t>::max());
}

}  // namespace detail

/// Exact rational number over 64-bit integers.
///
/// Invariant: den > 0 and gcd(|num|, den) == 1. All arithmetic is performed
/// in 128-bit intermediates and reduced before narrowing; a result that does
/// not fit in 64 bits raises Errc::overflow rather than wrapping. Every law
/// in this library is an exact identity, so there is no floating point
/// conversion anywhere on the value path.
class Rat {
public:
  constexpr Rat() = default;
  constexpr Rat(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

  static Rat make(detail::int128 n, detail::int128 d) {
    if (d == 0) raise(Errc::division_by_zero, "rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const detail::int128 g = detail::gcd128(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (!detail::fits64(n) || !detail::fits64(d))
      raise(Errc::overflow, "rational exceeds 64-bit range after reduction");
    Rat r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  constexpr bool is_zero() const { return num_ == 0; }
  constexpr bool is_negative() const { return num_ < 0; }
  constexpr bool is_positive() const { return num_ > 0; }
  constexpr bool is_integer() const { return den_ == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    using detail::int128;
    return make(int128(a.num_) * b.den_ + int128(b.num_) * a.den_, int128(a.den_) * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    using detail::int128;
    return make(int128(a.num_) * b.den_ - int128(b.num_) * a.den_, int128(a.den_) * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    using detail::int128;
    return make(int128(a.num_) * b.num_, int128(a.den_) * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    using detail::int128;
    if (b.num_ == 0) raise(Errc::division_by_zero, "division by zero rational");
    return make(int128(a.num_) * b.den_, int128(a.den_) * b.num_);
  }
  friend Rat operator-(const Rat& a) { return make(-detail::int128(a.num_), a.den_); }

  Rat& operator+=(const Rat& b) { return *this = *this + b; }
  Rat& operator-=(const Rat& b) { return *this = *this - b; }
  Rat& operator*=(const Rat& b) { return *this = *this * b; }
  Rat& operator/=(const Rat& b) { return *this = *this / b; }

  friend constexpr bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend constexpr bool operator<(const Rat& a, const Rat& b) {
    using detail::int128;
    return int128(a.num_) * b.den_ < int128(b.num_) * a.den_;
  }
  friend constexpr bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend constexpr bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend constexpr bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  /// Small nonnegative integer power, computed exactly.
  static Rat pow(const Rat& base, std::uint64_t exp) {
    Rat acc(1);
    Rat b = base;
    while (exp > 0) {
      if (exp & 1) acc *= b;
      b = (exp >>= 1) ? b * b : b;
    }
    return acc;
  }

  /// Canonical text form: "num" when the value is an integer, else "num/den".
  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "num" or "num/den". Raises Errc::parse_error on anything else.
  static Rat parse(std::string_view text) {
    const auto bad = [&] { raise(Errc::parse_error, "not a rational: '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    const std::size_t slash = text.find('/');
    const std::string_view num_part = text.substr(0, slash);
    std::int64_t n = parse_int(num_part, bad);
    std::int64_t d = 1;
    if (slash != std::string_view::npos) {
      d = parse_int(text.substr(slash + 1), bad);
      if (d <= 0) bad();
    }
    return Rat(n, d);
  }

private:
  template <typename Fail>
  static std::int64_t parse_int(std::string_view s, Fail&& bad) {
    if (s.empty()) bad();
    bool neg = false;
    std::size_t i = 0;
    if (s[0] == '-') {
      neg = true;
      i = 1;
      if (s.size() == 1) bad();
    }
    detail::int128 acc = 0;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') bad();
      acc = acc * 10 + (s[i] - '0');
      if (!detail::fits64(acc)) bad();
    }
    return static_cast<std::int64_t>(neg ? -acc : acc);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(const Rat& r) { return r.str(); }

}  // namespace girylab
