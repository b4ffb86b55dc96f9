#ifndef BIMOMENT_COMBINATORICS_HPP
#define BIMOMENT_COMBINATORICS_HPP

#include <span>

#include "bimoment/rational.hpp"

namespace bimoment {

// Generalized binomial coefficient.
//
//   binom(d, r) = d (d-1) ... (d-r+1) / r!   for integer r > 0 and any rational d
//   binom(d, 0) = 1
//   binom(d, r) = 0                          for integer r < 0
//
// For a nonnegative integer d this gives 0 whenever r > d. A negative integer
// d is NOT clamped to zero: binom(-1, r) = (-1)^r.
Rational binom(const Rational& d, long r);

// Integer top argument. Served from a table for |d|, r below a fixed limit.
Rational binom(long d, long r);

// Numbered binomial identities. Each check evaluates both sides exactly and
// reports whether they agree; parameters outside an identity's domain raise
// DomainError naming the violated constraint.
enum class Identity {
  kExtendedPascal = 1,   // binom(d,k) = binom(d-1,k) + binom(d-1,k-1), k >= 1
  kAlternatingSum = 2,   // sum_{x<=k} (-1)^x binom(n,x) = (-1)^k binom(n-1,k), n >= 1, k >= 0
  kHockeyStick = 3,      // binom(n,k) = sum_{x=k..n} binom(x-1,k-1), k >= 1, n >= 0
  kTelescoping = 4,      // binom(n,k) = sum_{j=1..r-1} binom(n-j,k-1) + binom(n-r+1,k)
  kComplementExpansion = 5,  // binom(n-T,l) = sum_{r<=l} (-1)^r binom(n-r,l-r) binom(T,r)
};

bool extended_pascal_holds(const Rational& d, long k);
bool alternating_sum_holds(long n, long k);
bool hockey_stick_holds(long n, long k);
bool telescoping_holds(long n, long k, long r);
bool complement_expansion_holds(long n, long l, long t);

// Dispatches on the identity number (1..5). Parameter order:
//   1: (d, k)   2: (n, k)   3: (n, k)   4: (n, k, r)   5: (n, l, T)
bool check_identity(int which, std::span<const long> params);

}  // namespace bimoment

#endif  // BIMOMENT_COMBINATORICS_HPP
