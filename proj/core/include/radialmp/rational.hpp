#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace radialmp {

__extension__ using wide_int = __int128;

/// Exact rational number with 64-bit numerator and denominator.
///
/// Always normalized: gcd(num, den) == 1 and den > 0. Arithmetic is carried
/// out in 128-bit intermediates; a result that does not fit in 64 bits throws
/// NumericalError rather than silently wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);  // NOLINT(google-explicit-constructor)

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  double to_double() const noexcept {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;

  /// Parses "p", "p/q" or "-p/q".
  static std::optional<Rational> parse(std::string_view text);

  /// Returns the rational p/q with q <= max_den whose double conversion equals
  /// x exactly, if one exists.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 1000000);

  /// Nearest p/q with q <= max_den when |x - p/q| <= tol; used to snap fitted
  /// exponents onto their obvious closed forms.
  static std::optional<Rational> snap(double x, std::int64_t max_den, double tol);

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const { return Rational(-num_, den_); }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  static Rational from_wide(wide_int num, wide_int den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline double to_double(double x) noexcept { return x; }
inline double to_double(const Rational& x) noexcept { return x.to_double(); }

}  // namespace radialmp
