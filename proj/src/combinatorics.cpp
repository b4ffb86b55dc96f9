#include "bimoment/combinatorics.hpp"

#include <string>
#include <vector>

namespace bimoment {

namespace {

constexpr long kTableLimit = 64;

Rational falling_factorial_binom(const Rational& d, long r) {
  if (r < 0) return 0;
  Rational num(1);
  Rational den(1);
  for (long i = 0; i < r; ++i) {
    num *= d - Rational(i);
    den *= Rational(i + 1);
  }
  return num / den;
}

// Rows d in [-kTableLimit, kTableLimit], columns r in [0, kTableLimit].
class BinomTable {
 public:
  BinomTable() : cells_((2 * kTableLimit + 1) * (kTableLimit + 1)) {
    for (long d = -kTableLimit; d <= kTableLimit; ++d) {
      for (long r = 0; r <= kTableLimit; ++r) {
        cells_[index(d, r)] = falling_factorial_binom(Rational(d), r);
      }
    }
  }

  static bool covers(long d, long r) {
    return d >= -kTableLimit && d <= kTableLimit && r >= 0 && r <= kTableLimit;
  }

  const Rational& at(long d, long r) const { return cells_[index(d, r)]; }

 private:
  static std::size_t index(long d, long r) {
    return static_cast<std::size_t>((d + kTableLimit) * (kTableLimit + 1) + r);
  }

  std::vector<Rational> cells_;
};

const BinomTable& table() {
  static const BinomTable instance;
  return instance;
}

void require(bool ok, const std::string& constraint) {
  if (!ok) throw DomainError("identity parameter violates " + constraint);
}

}  // namespace

Rational binom(const Rational& d, long r) {
  if (d.is_integer() && d.numerator().fits_slong_p()) return binom(d.numerator().get_si(), r);
  return falling_factorial_binom(d, r);
}

Rational binom(long d, long r) {
  if (r < 0) return 0;
  if (BinomTable::covers(d, r)) return table().at(d, r);
  if (d >= 0 && r > d) return 0;
  return falling_factorial_binom(Rational(d), r);
}

bool extended_pascal_holds(const Rational& d, long k) {
  require(k >= 1, "k >= 1");
  return binom(d, k) == binom(d - 1, k) + binom(d - 1, k - 1);
}

bool alternating_sum_holds(long n, long k) {
  require(n >= 1, "n >= 1");
  require(k >= 0, "k >= 0");
  Rational lhs;
  for (long x = 0; x <= k; ++x) lhs += alternating_sign(x) * binom(n, x);
  return lhs == alternating_sign(k) * binom(n - 1, k);
}

bool hockey_stick_holds(long n, long k) {
  require(k >= 1, "k >= 1");
  require(n >= 0, "n >= 0");
  Rational from_k;
  for (long x = k; x <= n; ++x) from_k += binom(x - 1, k - 1);
  // The full-range sum starts at x = 1: binom(-1, k-1) = (-1)^(k-1) is not
  // zero under the falling-factorial convention.
  Rational from_one;
  for (long x = 1; x <= n; ++x) from_one += binom(x - 1, k - 1);
  const Rational lhs = binom(n, k);
  return lhs == from_k && lhs == from_one;
}

bool telescoping_holds(long n, long k, long r) {
  require(k >= 1, "k >= 1");
  require(n >= k, "n >= k");
  require(r >= 1, "r >= 1");
  Rational rhs = binom(n - r + 1, k);
  for (long j = 1; j <= r - 1; ++j) rhs += binom(n - j, k - 1);
  return binom(n, k) == rhs;
}

bool complement_expansion_holds(long n, long l, long t) {
  require(n >= 0, "n >= 0");
  require(0 <= t && t <= n, "0 <= T <= n");
  require(0 <= l && l <= n, "0 <= l <= n");
  Rational rhs;
  for (long r = 0; r <= l; ++r) rhs += alternating_sign(r) * binom(n - r, l - r) * binom(t, r);
  return binom(n - t, l) == rhs;
}

bool check_identity(int which, std::span<const long> params) {
  auto arity = [&](std::size_t expected) {
    if (params.size() != expected) {
      throw DomainError("identity " + std::to_string(which) + " takes " + std::to_string(expected) +
                        " parameters, got " + std::to_string(params.size()));
    }
  };
  switch (static_cast<Identity>(which)) {
    case Identity::kExtendedPascal:
      arity(2);
      return extended_pascal_holds(Rational(params[0]), params[1]);
    case Identity::kAlternatingSum:
      arity(2);
      return alternating_sum_holds(params[0], params[1]);
    case Identity::kHockeyStick:
      arity(2);
      return hockey_stick_holds(params[0], params[1]);
    case Identity::kTelescoping:
      arity(3);
      return telescoping_holds(params[0], params[1], params[2]);
    case Identity::kComplementExpansion:
      arity(3);
      return complement_expansion_holds(params[0], params[1], params[2]);
  }
  throw DomainError("unknown identity " + std::to_string(which) + " (expected 1..5)");
}

}  // namespace bimoment
