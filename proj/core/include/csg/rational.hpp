#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace csg {

/// Raised when an operation is handed data outside its domain (bad input
/// files, parameter ranges, capacity limits). The CLI maps it to exit code 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Integer = mpz_class;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. All arithmetic is exact; there is no floating-point path.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(int n) : q_(n) {}   // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const Integer& n) : q_(n) {}

  /// Parses "num/den" or a plain integer, optionally signed. Decimal or
  /// exponent notation is rejected, not converted.
  static Rational parse(std::string_view text);

  /// 2^e for any integer e (negative exponents give 1/2^|e|).
  static Rational pow2(long e);

  /// "num/den" in lowest terms; plain "num" when the denominator is 1.
  std::string str() const;

  Integer numerator() const { return q_.get_num(); }
  Integer denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// Larger of the numerator's and denominator's bit lengths.
  std::size_t bit_size() const;

  Rational pow(unsigned long e) const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  Integer floor() const;
  Integer ceil() const;
  double to_double() const { return q_.get_d(); }

  const mpq_class& raw() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  mpq_class q_;
};

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::string integer_str(const Integer& n);
Integer parse_integer(std::string_view text);

}  // namespace csg
