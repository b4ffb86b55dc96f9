#include "bimoment/transforms.hpp"

#include <algorithm>
#include <string>

#include "bimoment/combinatorics.hpp"

namespace bimoment {

namespace {

std::string cell(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

void check_index(const char* what, int a, int b, int a_lo, int a_hi, int b_lo, int b_hi) {
  if (a < a_lo || a > a_hi || b < b_lo || b > b_hi) {
    throw DomainError(std::string(what) + " index " + cell(a, b) + " out of range " + cell(a_lo, b_lo) +
                      ".." + cell(a_hi, b_hi));
  }
}

// P(X >= u) from univariate moments M_i = moment(i), X on {0..top}.
template <typename MomentFn>
Rational univariate_tail(int top, int u, MomentFn moment) {
  if (u == 0) return 1;
  Rational tail;
  for (int i = u; i <= top; ++i) tail += alternating_sign(i - u) * binom(i - 1, u - 1) * moment(i);
  return tail;
}

// M_i = sum_{u>=i} binom(u-1,i-1) P(X >= u), with M_0 = 1.
template <typename TailFn>
Rational univariate_moment(int top, int i, TailFn tail) {
  if (i == 0) return 1;
  Rational moment;
  for (int u = i; u <= top; ++u) moment += binom(u - 1, i - 1) * tail(u);
  return moment;
}

}  // namespace

TailTable::TailTable(int m, int n, std::vector<Rational> q) : m_(m), n_(n), q_(std::move(q)) {
  if (m < 1 || n < 1) throw DomainError("tail table dimensions must be positive");
  if (q_.size() != static_cast<std::size_t>(m + 1) * (n + 1)) throw DomainError("tail table grid size mismatch");
  if ((*this)(0, 0) != Rational(1)) throw DomainError("tail q(0,0) must equal 1");
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) {
      const Rational& x = (*this)(u, v);
      if (x.sign() < 0 || x > Rational(1)) throw DomainError("tail q" + cell(u, v) + " outside [0,1]");
      if (u > 0 && x > (*this)(u - 1, v)) throw DomainError("tail table increases in u at " + cell(u, v));
      if (v > 0 && x > (*this)(u, v - 1)) throw DomainError("tail table increases in v at " + cell(u, v));
    }
  }
}

const Rational& TailTable::at(int u, int v) const {
  check_index("tail", u, v, 0, m_, 0, n_);
  return (*this)(u, v);
}

Rational pmf_from_moments(const MomentMatrix& mm, int u, int v) {
  check_index("pmf", u, v, 0, mm.m(), 0, mm.n());
  Rational p;
  for (int i = u; i <= mm.m(); ++i) {
    const Rational row = alternating_sign(i - u) * binom(i, u);
    for (int j = v; j <= mm.n(); ++j) {
      p += row * alternating_sign(j - v) * binom(j, v) * mm(i, j);
    }
  }
  return p;
}

JointPMF pmf_from_moments(const MomentMatrix& mm) {
  std::vector<Rational> p;
  p.reserve(static_cast<std::size_t>(mm.m() + 1) * (mm.n() + 1));
  for (int u = 0; u <= mm.m(); ++u) {
    for (int v = 0; v <= mm.n(); ++v) p.push_back(pmf_from_moments(mm, u, v));
  }
  return JointPMF(mm.m(), mm.n(), std::move(p));
}

Rational prob_zero_by_antidiagonals(const MomentMatrix& mm) {
  Rational p;
  for (int t = 0; t <= mm.m() + mm.n(); ++t) {
    Rational diagonal;
    for (int i = std::max(0, t - mm.n()); i <= std::min(t, mm.m()); ++i) diagonal += mm(i, t - i);
    p += alternating_sign(t) * diagonal;
  }
  return p;
}

Rational tails_from_moments(const MomentMatrix& mm, int u, int v) {
  check_index("tail", u, v, 0, mm.m(), 0, mm.n());
  if (u == 0) return univariate_tail(mm.n(), v, [&](int j) { return mm(0, j); });
  if (v == 0) return univariate_tail(mm.m(), u, [&](int i) { return mm(i, 0); });
  Rational tail;
  for (int i = u; i <= mm.m(); ++i) {
    const Rational row = alternating_sign(i - u) * binom(i - 1, u - 1);
    for (int j = v; j <= mm.n(); ++j) {
      tail += row * alternating_sign(j - v) * binom(j - 1, v - 1) * mm(i, j);
    }
  }
  return tail;
}

TailTable tail_table_from_moments(const MomentMatrix& mm) {
  std::vector<Rational> q;
  q.reserve(static_cast<std::size_t>(mm.m() + 1) * (mm.n() + 1));
  for (int u = 0; u <= mm.m(); ++u) {
    for (int v = 0; v <= mm.n(); ++v) q.push_back(tails_from_moments(mm, u, v));
  }
  return TailTable(mm.m(), mm.n(), std::move(q));
}

Rational moments_from_tails(const TailTable& tt, int i, int j) {
  check_index("moment", i, j, 0, tt.m(), 0, tt.n());
  if (i == 0) return univariate_moment(tt.n(), j, [&](int v) { return tt(0, v); });
  if (j == 0) return univariate_moment(tt.m(), i, [&](int u) { return tt(u, 0); });
  Rational moment;
  for (int u = i; u <= tt.m(); ++u) {
    const Rational row = binom(u - 1, i - 1);
    for (int v = j; v <= tt.n(); ++v) moment += row * binom(v - 1, j - 1) * tt(u, v);
  }
  return moment;
}

MomentMatrix moments_from_tails(const TailTable& tt) {
  std::vector<Rational> s;
  s.reserve(static_cast<std::size_t>(tt.m() + 1) * (tt.n() + 1));
  for (int i = 0; i <= tt.m(); ++i) {
    for (int j = 0; j <= tt.n(); ++j) s.push_back(moments_from_tails(tt, i, j));
  }
  return MomentMatrix(tt.m(), tt.n(), std::move(s));
}

Rational pgf_eval(const JointPMF& pmf, const Rational& t, const Rational& s) {
  // Horner in both variables.
  Rational outer;
  for (int u = pmf.m(); u >= 0; --u) {
    Rational inner;
    for (int v = pmf.n(); v >= 0; --v) inner = inner * s + pmf(u, v);
    outer = outer * t + inner;
  }
  return outer;
}

Rational moment_generating_eval(const MomentMatrix& mm, const Rational& t, const Rational& s) {
  Rational outer;
  for (int i = mm.m(); i >= 0; --i) {
    Rational inner;
    for (int j = mm.n(); j >= 0; --j) inner = inner * s + mm(i, j);
    outer = outer * t + inner;
  }
  return outer;
}

bool pgf_shift_identity_holds(const JointPMF& pmf, const MomentMatrix& mm, const Rational& t,
                              const Rational& s) {
  return pgf_eval(pmf, t + 1, s + 1) == moment_generating_eval(mm, t, s);
}

Rational complementary_moment(const MomentMatrix& mm, int k, int l) {
  check_index("complementary moment", k, l, 1, mm.m(), 1, mm.n());
  // Factored by rows: sum_s (-1)^s binom(m-s,k-s) sum_r (-1)^r binom(n-r,l-r) S(s,r).
  Rational sum;
  for (int s = 1; s <= k; ++s) {
    Rational row;
    for (int r = 1; r <= l; ++r) {
      const Rational term = binom(mm.n() - r, l - r) * mm(s, r);
      if (r % 2 == 0) {
        row += term;
      } else {
        row -= term;
      }
    }
    row *= binom(mm.m() - s, k - s);
    if (s % 2 == 0) {
      sum += row;
    } else {
      sum -= row;
    }
  }
  return binom(mm.m(), k) * binom(mm.n(), l) - sum;
}

Rational complementary_marginal_s(const MomentMatrix& mm, int k) {
  if (k < 0 || k > mm.m()) throw DomainError("complementary marginal order k out of range 0..m");
  Rational sum;
  for (int s = 0; s <= k; ++s) sum += alternating_sign(s) * binom(mm.m() - s, k - s) * mm(s, 0);
  return sum;
}

Rational complementary_marginal_t(const MomentMatrix& mm, int l) {
  if (l < 0 || l > mm.n()) throw DomainError("complementary marginal order l out of range 0..n");
  Rational sum;
  for (int r = 0; r <= l; ++r) sum += alternating_sign(r) * binom(mm.n() - r, l - r) * mm(0, r);
  return sum;
}

}  // namespace bimoment
