#include "flatq/rational.hpp"

#include <cctype>

#include "flatq/error.hpp"

namespace flatq {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw Error(Errc::ParseError, "empty integer in '" + std::string(whole) + "'");
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
    }
  }
  return BigInt(std::string(text), 10);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(Errc::InvalidArgument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  BigInt num;
  BigInt den = 1;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    num = parse_integer(trim(text.substr(0, slash)), whole);
    den = parse_integer(trim(text.substr(slash + 1)), whole);
    if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(whole) + "'");
  } else {
    num = parse_integer(text, whole);
  }
  if (negative) num = -num;
  return Rational(num, den);
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(Errc::InvalidArgument, "division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& q) { return os << q.to_string(); }

Rational reciprocal(const Rational& q) { return Rational(1) / q; }

Rational pow(const Rational& base, unsigned long exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent > 0) {
    if (exponent & 1UL) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

}  // namespace flatq
