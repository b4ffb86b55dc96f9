#include "bimoment/rational.hpp"

#include <cctype>
#include <ostream>

namespace bimoment {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(numerator, denominator);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
  if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view original = text;
  text = trim(text);
  auto fail = [&]() -> Rational {
    throw DomainError("malformed rational '" + std::string(original) + "'");
  };

  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  mpq_class q;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return fail();
    const mpz_class d(std::string(den), 10);
    if (d == 0) throw DomainError("rational '" + std::string(original) + "' has zero denominator");
    q = mpq_class(mpz_class(std::string(num), 10), d);
  } else if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return fail();
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) return fail();
    const std::string digits = std::string(whole) + std::string(frac);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    q = mpq_class(mpz_class(digits.empty() ? "0" : digits, 10), scale);
  } else {
    if (!all_digits(text)) return fail();
    q = mpq_class(mpz_class(std::string(text), 10));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(std::move(q));
}

std::string Rational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::decimal(int digits) const {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = abs(q_.get_num()) * scale;
  const mpz_class& den = q_.get_den();
  mpz_class quotient = num / den;
  const mpz_class remainder = num - quotient * den;
  if (2 * remainder >= den) ++quotient;

  std::string body = quotient.get_str();
  if (digits > 0) {
    if (body.size() <= static_cast<std::size_t>(digits)) {
      body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(digits), ".");
  }
  const bool negative = sign() < 0 && quotient != 0;
  return negative ? "-" + body : body;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
  mpq_class result(1);
  mpz_pow_ui(result.get_num_mpz_t(), base.raw().get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.raw().get_den_mpz_t(), exponent);
  return Rational(std::move(result));
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace bimoment
