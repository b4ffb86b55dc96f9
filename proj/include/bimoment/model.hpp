#ifndef BIMOMENT_MODEL_HPP
#define BIMOMENT_MODEL_HPP

#include <cstdint>
#include <vector>

#include "bimoment/rational.hpp"

namespace bimoment {

/// Exact joint law of (S, T) on {0..m} x {0..n}, stored densely row-major by u.
class JointPMF {
 public:
  /// Throws DomainError unless m, n >= 1, the grid has (m+1)(n+1) entries,
  /// every entry is nonnegative and the entries sum to exactly 1.
  JointPMF(int m, int n, std::vector<Rational> p);

  static JointPMF point_mass(int m, int n, int u, int v);

  int m() const { return m_; }
  int n() const { return n_; }

  const Rational& operator()(int u, int v) const { return p_[index(u, v)]; }
  const Rational& at(int u, int v) const;

  const std::vector<Rational>& values() const { return p_; }

  friend bool operator==(const JointPMF&, const JointPMF&) = default;

 private:
  std::size_t index(int u, int v) const { return static_cast<std::size_t>(u) * (n_ + 1) + v; }

  int m_;
  int n_;
  std::vector<Rational> p_;
};

/// One sample point of an event system: its probability and which of the
/// A-events (bit i-1 of a_mask for A_i) and B-events it belongs to.
struct Atom {
  Rational weight;
  std::uint64_t a_mask = 0;
  std::uint64_t b_mask = 0;

  bool in_a(int i) const { return (a_mask >> (i - 1)) & 1U; }
  bool in_b(int j) const { return (b_mask >> (j - 1)) & 1U; }
};

/// Finite probability space carrying two event families A_1..A_m, B_1..B_n.
class EventSystem {
 public:
  static constexpr int kMaxEvents = 62;

  /// Zero-weight atoms are dropped. Throws DomainError on negative weights,
  /// weights not summing to 1, indicator bits beyond m or n, or m, n outside
  /// 1..kMaxEvents.
  EventSystem(int m, int n, std::vector<Atom> atoms);

  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }

 private:
  int m_;
  int n_;
  std::vector<Atom> atoms_;
};

/// Bivariate binomial moments S_{i,j} = E[binom(S,i) binom(T,j)].
///
/// A matrix may be order-limited: only entries with i <= kmax and j <= lmax
/// are stored, mirroring the situation where intersection probabilities are
/// known only up to some order. Reading past the limit throws DomainError.
class MomentMatrix {
 public:
  /// Full matrix, (m+1)(n+1) entries row-major by i. Requires s(0,0) = 1.
  MomentMatrix(int m, int n, std::vector<Rational> s);

  /// Order-limited matrix with (kmax+1)(lmax+1) entries.
  MomentMatrix(int m, int n, int kmax, int lmax, std::vector<Rational> s);

  int m() const { return m_; }
  int n() const { return n_; }
  int kmax() const { return kmax_; }
  int lmax() const { return lmax_; }
  bool is_complete() const { return kmax_ == m_ && lmax_ == n_; }

  const Rational& operator()(int i, int j) const;

  /// Copy with one entry replaced. Used for fault injection in tests.
  MomentMatrix with_entry(int i, int j, Rational value) const;

  const std::vector<Rational>& values() const { return s_; }

  friend bool operator==(const MomentMatrix&, const MomentMatrix&) = default;

 private:
  int m_;
  int n_;
  int kmax_;
  int lmax_;
  std::vector<Rational> s_;
};

/// True when 0 <= s(i,j) <= binom(m,i) binom(n,j) for every stored entry.
bool within_moment_bounds(const MomentMatrix& mm);

MomentMatrix moments_from_pmf(const JointPMF& pmf);

/// Bonferroni sums S_{k,l} for k <= kmax, l <= lmax, by direct enumeration of
/// index subsets and summation of intersection probabilities over atoms.
/// Row/column 0 hold the univariate sums. Cost grows as 2^m 2^n.
MomentMatrix bonferroni_sums(const EventSystem& es, int kmax, int lmax);
MomentMatrix bonferroni_sums(const EventSystem& es);

/// Law of the counting variables (number of A-events, number of B-events).
JointPMF counting_pmf(const EventSystem& es);

/// One atom per support point (u,v); A_i holds it iff u >= i, B_j iff v >= j.
EventSystem event_system_from_pmf(const JointPMF& pmf);

/// Law of (m - S, n - T).
JointPMF complement_pmf(const JointPMF& pmf);

}  // namespace bimoment

#endif  // BIMOMENT_MODEL_HPP
