#ifndef BIMOMENT_TRANSFORMS_HPP
#define BIMOMENT_TRANSFORMS_HPP

#include <vector>

#include "bimoment/model.hpp"
#include "bimoment/rational.hpp"

namespace bimoment {

/// Joint upper-orthant probabilities q(u,v) = P(S >= u, T >= v).
class TailTable {
 public:
  /// Requires q(0,0) = 1, entries in [0,1], nonincreasing along both axes.
  TailTable(int m, int n, std::vector<Rational> q);

  int m() const { return m_; }
  int n() const { return n_; }
  const Rational& operator()(int u, int v) const { return q_[static_cast<std::size_t>(u) * (n_ + 1) + v]; }
  const Rational& at(int u, int v) const;
  const std::vector<Rational>& values() const { return q_; }

  friend bool operator==(const TailTable&, const TailTable&) = default;

 private:
  int m_;
  int n_;
  std::vector<Rational> q_;
};

// --- Moments -> point probabilities --------------------------------------

/// P(S=u, T=v) = sum_{i>=u, j>=v} binom(i,u) binom(j,v) (-1)^{i+j-u-v} S_{i,j}.
Rational pmf_from_moments(const MomentMatrix& mm, int u, int v);

/// Whole pmf. Throws DomainError if the moments do not describe a distribution.
JointPMF pmf_from_moments(const MomentMatrix& mm);

/// P(S+T = 0) by grouping moments on anti-diagonals i+j = t with sign (-1)^t.
Rational prob_zero_by_antidiagonals(const MomentMatrix& mm);

// --- Moments <-> tails ----------------------------------------------------

/// P(S>=u, T>=v). For u, v >= 1 this is the double alternating sum with
/// weights binom(i-1,u-1) binom(j-1,v-1). A zero index reduces to the
/// univariate tail of the other marginal (row or column 0 of the moments).
Rational tails_from_moments(const MomentMatrix& mm, int u, int v);

TailTable tail_table_from_moments(const MomentMatrix& mm);

/// S_{i,j} = sum_{u>=i, v>=j} binom(u-1,i-1) binom(v-1,j-1) q(u,v). A zero
/// index uses the univariate form on the corresponding marginal tail row.
Rational moments_from_tails(const TailTable& tt, int i, int j);

MomentMatrix moments_from_tails(const TailTable& tt);

// --- Generating functions --------------------------------------------------

/// sum_{u,v} p(u,v) t^u s^v.
Rational pgf_eval(const JointPMF& pmf, const Rational& t, const Rational& s);

/// sum_{i,j} S_{i,j} t^i s^j, which equals pgf_eval(pmf, 1+t, 1+s).
Rational moment_generating_eval(const MomentMatrix& mm, const Rational& t, const Rational& s);

bool pgf_shift_identity_holds(const JointPMF& pmf, const MomentMatrix& mm, const Rational& t,
                              const Rational& s);

// --- Complementary moments -------------------------------------------------

/// Sbar_{k,l} = binom(m,k) binom(n,l)
///            - sum_{s=1..k} sum_{r=1..l} (-1)^{s+r} binom(m-s,k-s) binom(n-r,l-r) S_{s,r}.
Rational complementary_moment(const MomentMatrix& mm, int k, int l);

/// E binom(m-S, k) from the S-marginal moments (column j = 0).
Rational complementary_marginal_s(const MomentMatrix& mm, int k);

/// E binom(n-T, l) from the T-marginal moments (row i = 0).
Rational complementary_marginal_t(const MomentMatrix& mm, int l);

}  // namespace bimoment

#endif  // BIMOMENT_TRANSFORMS_HPP
