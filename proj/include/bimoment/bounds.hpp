#ifndef BIMOMENT_BOUNDS_HPP
#define BIMOMENT_BOUNDS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bimoment/model.hpp"
#include "bimoment/rational.hpp"

namespace bimoment {

enum class Direction { kLower, kUpper };

enum class Family {
  kBonferroni,
  kFrechet,
  kGumbel,
  kFrechetType,
  kGumbelType,
  kChung,
  kGalambosXu,
  kChenSeneta,
  kMadiNagyPrekopa,
};

std::string_view to_string(Direction d);
std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view name);

/// A bound on P(S >= target_u, T >= target_v) computed from binomial moments.
///
/// Values are reported raw and may fall outside [0,1]. When a denominator
/// vanishes the bound is undefined: `value` is empty and `note` says why.
struct BoundValue {
  std::optional<Rational> value;
  Direction direction = Direction::kUpper;
  Family family = Family::kBonferroni;
  int target_u = 1;
  int target_v = 1;
  std::vector<std::pair<std::string, long>> params;
  std::string note;

  bool defined() const { return value.has_value(); }

  /// "gumbel(k=2,l=2)"-style label.
  std::string label() const;
};

struct BoundPair {
  BoundValue lower;
  BoundValue upper;
};

/// Truncations of the alternating tail series after anti-diagonal
/// u+v+2k+1 (lower) and u+v+2k (upper). Requires u, v >= 1 and k >= 0.
BoundPair bonferroni_pair(const MomentMatrix& mm, int u, int v, int k);

/// Lower bound on P(S>=1,T>=1): (binom(m,k)binom(n,l) - Sbar_{k,l}) / (binom(m,k)binom(n,l)).
BoundValue frechet_lower(const MomentMatrix& mm, int k, int l);

/// Upper bound on P(S>=1,T>=1): (binom(m,k)binom(n,l) - Sbar_{k,l}) / (binom(m-1,k-1)binom(n-1,l-1)).
BoundValue gumbel_upper(const MomentMatrix& mm, int k, int l);

/// Bounds on P(S>=s,T>=t) for 1 <= s,k <= m and 1 <= t,l <= n.
///   lower = 1 - Sbar_{k,l} / (binom(m-s+1,k) binom(n-t+1,l))
///   upper = (binom(m,k)binom(n,l) - Sbar_{k,l})
///           / ((binom(m,k) - binom(m-s,k)) (binom(n,l) - binom(n-t,l)))
BoundPair frechet_gumbel_type(const MomentMatrix& mm, int s, int t, int k, int l);

/// Ratio form A^{(s,t)}_{k,l} for s <= k <= m, t <= l <= n. Upper bound on
/// P(S>=s,T>=t), exact at (k,l) = (m,n).
BoundValue chung_bound(const MomentMatrix& mm, int s, int t, int k, int l);

enum class Comparison { kGalambosXu, kChenSeneta, kMadiNagyPrekopa };

/// Fixed-coefficient bounds on P(S>=1,T>=1) in S11, S12, S21, S22. Requires
/// m, n >= 2. The lower (Chen-Seneta) form takes integers a, b with
/// m - 2a - 1 <= 0 and n - 2b - 1 <= 0.
BoundValue comparison_bound(const MomentMatrix& mm, Comparison which, std::optional<int> a = std::nullopt,
                            std::optional<int> b = std::nullopt);

}  // namespace bimoment

#endif  // BIMOMENT_BOUNDS_HPP
