#include "selectra/rational.hpp"

#include <cctype>
#include <sstream>

#include "selectra/errors.hpp"

namespace selectra {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::OverlappingInteriors: return "OverlappingInteriors";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::PointOutsideComplex: return "PointOutsideComplex";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::NotOpenForm: return "NotOpenForm";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::EmptyBody: return "EmptyBody";
    case ErrorCode::EnumerationOverflow: return "EnumerationOverflow";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::NonConvexUnion: return "NonConvexUnion";
    case ErrorCode::NotDisjoint: return "NotDisjoint";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::NotOpenRelation: return "NotOpenRelation";
    case ErrorCode::NotLSCRelation: return "NotLSCRelation";
    case ErrorCode::NotUSC: return "NotUSC";
    case ErrorCode::NotLSC: return "NotLSC";
    case ErrorCode::GapViolated: return "GapViolated";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::NotASelectionOnA: return "NotASelectionOnA";
    case ErrorCode::SubdivisionLimitExceeded: return "SubdivisionLimitExceeded";
    case ErrorCode::InfeasibleInteriorPoint: return "InfeasibleInteriorPoint";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnsupportedDim: return "UnsupportedDim";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) {
    throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  }
  Rational r(negative ? mpz_class(-p) : p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  // mpq get_str is canonical once the value is canonicalised, which every
  // arithmetic result in gmpxx already is.
  return value.get_str(10);
}

std::string format_vec(const Vec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_rational(v[i]);
  }
  return out + ")";
}

const Rational& ExtRational::value() const {
  if (!is_finite()) throw Error(ErrorCode::InvalidArgument, "value() of an infinite ExtRational");
  return value_;
}

ExtRational ExtRational::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    case Kind::Finite: break;
  }
  return ExtRational(Rational(-value_));
}

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_) return false;
  return a.kind_ != ExtRational::Kind::Finite || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  auto rank = [](ExtRational::Kind k) {
    return k == ExtRational::Kind::NegInf ? 0 : k == ExtRational::Kind::Finite ? 1 : 2;
  };
  if (a.kind_ != b.kind_) return rank(a.kind_) <=> rank(b.kind_);
  if (a.kind_ != ExtRational::Kind::Finite) return std::strong_ordering::equal;
  const int c = cmp(a.value_, b.value_);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw Error(ErrorCode::InvalidArgument, "indeterminate sum +inf + -inf");
  }
  if (!a.is_finite()) return a;
  if (!b.is_finite()) return b;
  return ExtRational(Rational(a.value() + b.value()));
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational operator*(const Rational& s, const ExtRational& a) {
  if (sgn(s) == 0) return ExtRational(0);
  if (a.is_finite()) return ExtRational(Rational(s * a.value()));
  return sgn(s) > 0 ? a : -a;
}

ExtRational min(const ExtRational& a, const ExtRational& b) { return b < a ? b : a; }
ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

ExtRational parse_ext(std::string_view text) {
  if (text == "inf" || text == "+inf") return ExtRational::pos_inf();
  if (text == "-inf") return ExtRational::neg_inf();
  return ExtRational(parse_rational(text));
}

std::string format_ext(const ExtRational& value) {
  if (value.is_pos_inf()) return "inf";
  if (value.is_neg_inf()) return "-inf";
  return format_rational(value.value());
}

Rational pow2(int exponent) {
  mpz_class p(1);
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e);
  return exponent >= 0 ? Rational(p) : Rational(mpz_class(1), p);
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational norm_inf(const Vec& a) {
  Rational m(0);
  for (const auto& x : a) {
    Rational ax = abs(x);
    if (ax > m) m = ax;
  }
  return m;
}

Rational norm_1(const Vec& a) {
  Rational s(0);
  for (const auto& x : a) s += abs(x);
  return s;
}

Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rational& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Rational dist_inf(const Vec& a, const Vec& b) {
  Rational m(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = abs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

}  // namespace selectra
