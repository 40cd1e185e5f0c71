#include "csg/rational.hpp"

#include <algorithm>
#include <cctype>

namespace csg {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num) / mpq_class(den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw DomainError("rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw DomainError("not a rational (expected \"num/den\" or integer): '" + std::string(text) + "'");
  Integer n(std::string(num), 10), d(std::string(den), 10);
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  if (neg) n = -n;
  return Rational(n, d);
}

Rational Rational::pow2(long e) {
  mpq_class q;
  if (e >= 0) {
    mpz_mul_2exp(q.get_num_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    q = 1;
    mpz_mul_2exp(q.get_den_mpz_t(), mpz_class(1).get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  q.canonicalize();
  return Rational(q);
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t Rational::bit_size() const {
  const std::size_t nb = mpz_sizeinbase(q_.get_num_mpz_t(), 2);
  const std::size_t db = mpz_sizeinbase(q_.get_den_mpz_t(), 2);
  return std::max(nb, db);
}

Rational Rational::pow(unsigned long e) const {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), q_.get_den_mpz_t(), e);
  r.canonicalize();
  return Rational(r);
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Integer Rational::ceil() const {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string integer_str(const Integer& n) { return n.get_str(); }

Integer parse_integer(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw DomainError("not an integer: '" + std::string(text) + "'");
  Integer n(std::string(s), 10);
  return neg ? Integer(-n) : n;
}

}  // namespace csg
