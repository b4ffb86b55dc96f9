#ifndef BIMOMENT_RATIONAL_HPP
#define BIMOMENT_RATIONAL_HPP

#include <compare>
#include <concepts>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace bimoment {

/// Raised when an argument lies outside the domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact fraction backed by GMP. Always stored in lowest terms with a
/// positive denominator.
class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : q_(static_cast<long>(value)) {}  // NOLINT(implicit)

  Rational(long numerator, long denominator);

  explicit Rational(mpq_class q);

  /// Accepts "a", "a/b" or a plain decimal such as "-0.125"; decimals are
  /// converted to the exact base-10 fraction.
  static Rational parse(std::string_view text);

  const mpq_class& raw() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Canonical text form: "a" for integers, "a/b" otherwise.
  std::string str() const;

  /// Decimal annotation rounded half away from zero to `digits` places.
  std::string decimal(int digits = 4) const;

  Rational& operator+=(const Rational& rhs) {
    q_ += rhs.q_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    q_ -= rhs.q_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    q_ *= rhs.q_;
    return *this;
  }
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned exponent);
Rational abs(const Rational& x);

/// (-1)^e as a small integer.
inline int alternating_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace bimoment

#endif  // BIMOMENT_RATIONAL_HPP
