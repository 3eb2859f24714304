#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <charconv>
#include <compare>

namespace bmc {

/// Exact rational number over 64-bit integers, always kept in lowest terms
/// with a positive denominator. Arithmetic that would overflow throws
/// std::overflow_error instead of silently wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    normalize();
  }

  [[nodiscard]] constexpr std::int64_t num() const { return num_; }
  [[nodiscard]] constexpr std::int64_t den() const { return den_; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }
  [[nodiscard]] constexpr int sign() const { return (num_ > 0) - (num_ < 0); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(wide(a.num_) + b.num_, a.den_);
    return from_wide(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                     wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ <=> wide(b.num_) * a.den_;
  }

  /// "num/den", or just "num" when integral.
  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  /// Always "num/den", for machine-readable output.
  [[nodiscard]] std::string fraction_str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  [[nodiscard]] double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Parses "a" or "a/b". Throws std::invalid_argument on malformed text.
  static Rational parse(std::string_view text) {
    auto slash = text.find('/');
    auto parse_int = [&](std::string_view part) {
      std::int64_t v = 0;
      const char* first = part.data();
      const char* last = part.data() + part.size();
      if (!part.empty() && part.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (part.empty() || ec != std::errc{} || ptr != last)
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
      return v;
    };
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }

 private:
  using wide_t = __int128;
  static constexpr wide_t wide(std::int64_t v) { return static_cast<wide_t>(v); }

  static wide_t gcd_wide(wide_t a, wide_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      wide_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(wide_t num, wide_t den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    wide_t g = gcd_wide(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr wide_t lo = INT64_MIN;
    constexpr wide_t hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void normalize() {
    *this = from_wide(wide(num_), wide(den_));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

/// H_n = 1 + 1/2 + ... + 1/n.
inline Rational harmonic(std::size_t n) {
  Rational h;
  for (std::size_t i = 1; i <= n; ++i) h += Rational(1, static_cast<std::int64_t>(i));
  return h;
}

/// Exact test of `value <= scale * (a - c / sqrt(radicand))` for non-negative
/// `value`, `scale` and positive `radicand`, without evaluating the root.
///
/// Rearranged as `a*scale - value >= c*scale / sqrt(r)`; both sides are
/// compared after squaring once the left side is known to be non-negative.
inline bool within_sqrt_bound(const Rational& value, const Rational& scale,
                              const Rational& a, const Rational& c,
                              const Rational& radicand) {
  Rational slack = a * scale - value;
  Rational rhs = c * scale;
  if (rhs.sign() <= 0) return slack.sign() >= 0;
  if (slack.sign() < 0) return false;
  return slack * slack * radicand >= rhs * rhs;
}

}  // namespace bmc
