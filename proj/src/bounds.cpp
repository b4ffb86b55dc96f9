#include "bimoment/bounds.hpp"

#include <algorithm>
#include <array>

#include "bimoment/combinatorics.hpp"
#include "bimoment/transforms.hpp"

namespace bimoment {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::kBonferroni, "bonferroni"},
    {Family::kFrechet, "frechet"},
    {Family::kGumbel, "gumbel"},
    {Family::kFrechetType, "frechet_type"},
    {Family::kGumbelType, "gumbel_type"},
    {Family::kChung, "chung"},
    {Family::kGalambosXu, "galambos_xu"},
    {Family::kChenSeneta, "chen_seneta"},
    {Family::kMadiNagyPrekopa, "madi_nagy_prekopa"},
}};

BoundValue make(Family family, Direction direction, int u, int v,
                std::vector<std::pair<std::string, long>> params) {
  BoundValue b;
  b.family = family;
  b.direction = direction;
  b.target_u = u;
  b.target_v = v;
  b.params = std::move(params);
  return b;
}

void set_ratio(BoundValue& b, const Rational& num, const Rational& den, const char* what) {
  if (den.is_zero()) {
    b.note = std::string("bound undefined for these parameters: ") + what + " is zero";
    return;
  }
  b.value = num / den;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

// binom(m,k)binom(n,l) - Sbar_{k,l}, the expectation of the union-product form.
Rational union_numerator(const MomentMatrix& mm, int k, int l) {
  return binom(mm.m(), k) * binom(mm.n(), l) - complementary_moment(mm, k, l);
}

}  // namespace

std::string_view to_string(Direction d) { return d == Direction::kLower ? "lower" : "upper"; }

std::string_view to_string(Family f) {
  for (const auto& [family, name] : kFamilyNames) {
    if (family == f) return name;
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) {
  for (const auto& [family, known] : kFamilyNames) {
    if (known == name) return family;
  }
  return std::nullopt;
}

std::string BoundValue::label() const {
  std::string out(to_string(family));
  if (params.empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += ",";
    out += params[i].first + "=" + std::to_string(params[i].second);
  }
  out += ")";
  return out;
}

BoundPair bonferroni_pair(const MomentMatrix& mm, int u, int v, int k) {
  require(u >= 1 && v >= 1, "Bonferroni truncation requires u >= 1 and v >= 1");
  require(u <= mm.m() && v <= mm.n(), "Bonferroni target (u,v) must satisfy u <= m and v <= n");
  require(k >= 0, "Bonferroni depth k must be nonnegative");

  const int base = u + v;
  const int upper_cut = std::min(base + 2 * k, mm.m() + mm.n());
  const int lower_cut = std::min(base + 2 * k + 1, mm.m() + mm.n());

  auto partial = [&](int cutoff) {
    Rational sum;
    for (int t = base; t <= cutoff; ++t) {
      Rational diagonal;
      for (int i = std::max(u, t - mm.n()); i <= std::min(mm.m(), t - v); ++i) {
        const int j = t - i;
        diagonal += binom(i - 1, u - 1) * binom(j - 1, v - 1) * mm(i, j);
      }
      sum += alternating_sign(t - base) * diagonal;
    }
    return sum;
  };

  const std::vector<std::pair<std::string, long>> params{{"u", u}, {"v", v}, {"k", k}};
  BoundPair out{make(Family::kBonferroni, Direction::kLower, u, v, params),
                make(Family::kBonferroni, Direction::kUpper, u, v, params)};
  out.lower.value = partial(lower_cut);
  out.upper.value = partial(upper_cut);
  return out;
}

BoundValue frechet_lower(const MomentMatrix& mm, int k, int l) {
  require(1 <= k && k <= mm.m() && 1 <= l && l <= mm.n(), "Frechet bound requires 1 <= k <= m, 1 <= l <= n");
  BoundValue b = make(Family::kFrechet, Direction::kLower, 1, 1, {{"k", k}, {"l", l}});
  set_ratio(b, union_numerator(mm, k, l), binom(mm.m(), k) * binom(mm.n(), l), "binom(m,k)binom(n,l)");
  return b;
}

BoundValue gumbel_upper(const MomentMatrix& mm, int k, int l) {
  require(1 <= k && k <= mm.m() && 1 <= l && l <= mm.n(), "Gumbel bound requires 1 <= k <= m, 1 <= l <= n");
  BoundValue b = make(Family::kGumbel, Direction::kUpper, 1, 1, {{"k", k}, {"l", l}});
  set_ratio(b, union_numerator(mm, k, l), binom(mm.m() - 1, k - 1) * binom(mm.n() - 1, l - 1),
            "binom(m-1,k-1)binom(n-1,l-1)");
  return b;
}

BoundPair frechet_gumbel_type(const MomentMatrix& mm, int s, int t, int k, int l) {
  const int m = mm.m();
  const int n = mm.n();
  require(1 <= s && s <= m && 1 <= k && k <= m, "Frechet/Gumbel-type bounds require 1 <= s,k <= m");
  require(1 <= t && t <= n && 1 <= l && l <= n, "Frechet/Gumbel-type bounds require 1 <= t,l <= n");

  const Rational sbar = complementary_moment(mm, k, l);
  const Rational full = binom(m, k) * binom(n, l);
  const std::vector<std::pair<std::string, long>> params{{"s", s}, {"t", t}, {"k", k}, {"l", l}};

  BoundPair out{make(Family::kFrechetType, Direction::kLower, s, t, params),
                make(Family::kGumbelType, Direction::kUpper, s, t, params)};

  const Rational lower_den = binom(m - s + 1, k) * binom(n - t + 1, l);
  if (lower_den.is_zero()) {
    out.lower.note = "bound undefined for these parameters: binom(m-s+1,k)binom(n-t+1,l) is zero";
  } else {
    out.lower.value = Rational(1) - sbar / lower_den;
  }
  set_ratio(out.upper, full - sbar, (binom(m, k) - binom(m - s, k)) * (binom(n, l) - binom(n - t, l)),
            "(binom(m,k)-binom(m-s,k))(binom(n,l)-binom(n-t,l))");
  return out;
}

BoundValue chung_bound(const MomentMatrix& mm, int s, int t, int k, int l) {
  const int m = mm.m();
  const int n = mm.n();
  require(1 <= s && s <= k && k <= m, "Chung bound requires 1 <= s <= k <= m");
  require(1 <= t && t <= l && l <= n, "Chung bound requires 1 <= t <= l <= n");

  Rational num;
  for (int i = s; i <= k; ++i) {
    const Rational row = alternating_sign(i - s) * binom(i - 1, i - s) * binom(m - i, k - i);
    for (int j = t; j <= l; ++j) {
      num += row * alternating_sign(j - t) * binom(j - 1, j - t) * binom(n - j, l - j) * mm(i, j);
    }
  }
  BoundValue b = make(Family::kChung, Direction::kUpper, s, t, {{"s", s}, {"t", t}, {"k", k}, {"l", l}});
  set_ratio(b, num, binom(m - s, k - s) * binom(n - t, l - t), "binom(m-s,k-s)binom(n-t,l-t)");
  return b;
}

BoundValue comparison_bound(const MomentMatrix& mm, Comparison which, std::optional<int> a, std::optional<int> b) {
  const int m = mm.m();
  const int n = mm.n();
  require(m >= 2 && n >= 2, "comparison bounds require m >= 2 and n >= 2");
  const Rational& s11 = mm(1, 1);
  const Rational& s12 = mm(1, 2);
  const Rational& s21 = mm(2, 1);
  const Rational& s22 = mm(2, 2);

  switch (which) {
    case Comparison::kGalambosXu: {
      BoundValue out = make(Family::kGalambosXu, Direction::kUpper, 1, 1, {});
      out.value = s11 - Rational(2, n) * s12 - Rational(2, m) * s21 + Rational(4, static_cast<long>(m) * n) * s22;
      return out;
    }
    case Comparison::kChenSeneta: {
      require(a.has_value() && b.has_value(), "Chen-Seneta bound requires integers a and b");
      const long av = *a;
      const long bv = *b;
      require(m - 2 * av - 1 <= 0, "Chen-Seneta bound requires m - 2a - 1 <= 0");
      require(n - 2 * bv - 1 <= 0, "Chen-Seneta bound requires n - 2b - 1 <= 0");
      BoundValue out = make(Family::kChenSeneta, Direction::kLower, 1, 1, {{"a", av}, {"b", bv}});
      const Rational scale = Rational(4) / Rational((av + 1) * (bv + 1));
      out.value = scale * (s11 - s12 / Rational(bv) - s21 / Rational(av) + s22 / Rational(av * bv));
      return out;
    }
    case Comparison::kMadiNagyPrekopa: {
      BoundValue out = make(Family::kMadiNagyPrekopa, Direction::kUpper, 1, 1, {});
      const Rational mn(static_cast<long>(m) * n);
      const Rational first = s11 - Rational(2) / mn * s12 - Rational(2, m) * s21;
      const Rational second = s11 - Rational(2, n) * s12 - Rational(2) / mn * s21;
      out.value = std::min(first, second);
      return out;
    }
  }
  throw DomainError("unknown comparison bound");
}

}  // namespace bimoment
