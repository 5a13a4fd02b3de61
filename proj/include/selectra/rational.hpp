#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace selectra {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

/// p/q in lowest terms (GMP does not reduce two-argument constructions).
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q", "p", "-p/q" (any sign on p, q > 0 after normalisation).
/// Throws Error(ParseError) on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical form: "p" when q == 1, else "p/q" with q > 0 and gcd(p, q) == 1.
std::string format_rational(const Rational& value);

std::string format_vec(const Vec& v);

/// A value of ℚ ∪ {−∞, +∞}.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() : kind_(Kind::Finite), value_(0) {}
  ExtRational(const Rational& v) : kind_(Kind::Finite), value_(v) {}  // NOLINT
  ExtRational(long v) : kind_(Kind::Finite), value_(v) {}             // NOLINT
  ExtRational(int v) : kind_(Kind::Finite), value_(v) {}              // NOLINT
  template <class T, class U>
  ExtRational(const __gmp_expr<T, U>& e) : kind_(Kind::Finite), value_(e) {}  // NOLINT

  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Precondition: is_finite().
  const Rational& value() const;

  ExtRational operator-() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  explicit ExtRational(Kind k) : kind_(k), value_(0) {}

  Kind kind_;
  Rational value_;
};

/// Sum; (+∞) + (−∞) is rejected with InvalidArgument.
ExtRational operator+(const ExtRational& a, const ExtRational& b);
ExtRational operator-(const ExtRational& a, const ExtRational& b);
/// Scaling by a finite rational; 0 · ±∞ = 0.
ExtRational operator*(const Rational& s, const ExtRational& a);

ExtRational min(const ExtRational& a, const ExtRational& b);
ExtRational max(const ExtRational& a, const ExtRational& b);

/// Accepts everything parse_rational accepts plus "inf", "+inf", "-inf".
ExtRational parse_ext(std::string_view text);
std::string format_ext(const ExtRational& value);

Rational pow2(int exponent);

// Small vector helpers used across modules.
Rational dot(const Vec& a, const Vec& b);
Rational norm_inf(const Vec& a);
Rational norm_1(const Vec& a);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rational& s, const Vec& a);
Rational dist_inf(const Vec& a, const Vec& b);

}  // namespace selectra
