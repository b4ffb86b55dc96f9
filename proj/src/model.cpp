#include "bimoment/model.hpp"

#include <bit>
#include <map>
#include <string>

#include "bimoment/combinatorics.hpp"

namespace bimoment {

namespace {

void check_dims(int m, int n) {
  if (m < 1 || n < 1) {
    throw DomainError("dimensions must satisfy m >= 1 and n >= 1 (got m=" + std::to_string(m) +
                      ", n=" + std::to_string(n) + ")");
  }
}

std::string cell(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

// Calls f(mask) for every subset of {0..bits-1} with exactly `size` elements.
template <typename F>
void for_each_subset_of_size(int bits, int size, F&& f) {
  if (size == 0) {
    f(std::uint64_t{0});
    return;
  }
  if (size > bits) return;
  const std::uint64_t limit = std::uint64_t{1} << bits;
  std::uint64_t mask = (std::uint64_t{1} << size) - 1;
  while (mask < limit) {
    f(mask);
    // Gosper's hack: next mask with the same popcount.
    const std::uint64_t low = mask & (~mask + 1);
    const std::uint64_t ripple = mask + low;
    mask = (((ripple ^ mask) >> 2) / low) | ripple;
  }
}

}  // namespace

JointPMF::JointPMF(int m, int n, std::vector<Rational> p) : m_(m), n_(n), p_(std::move(p)) {
  check_dims(m, n);
  const auto expected = static_cast<std::size_t>(m + 1) * static_cast<std::size_t>(n + 1);
  if (p_.size() != expected) {
    throw DomainError("pmf grid has " + std::to_string(p_.size()) + " entries, expected " +
                      std::to_string(expected));
  }
  Rational total;
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) {
      const Rational& x = (*this)(u, v);
      if (x.sign() < 0) throw DomainError("pmf entry " + cell(u, v) + " is negative: " + x.str());
      total += x;
    }
  }
  if (total != Rational(1)) throw DomainError("pmf entries sum to " + total.str() + ", not 1");
}

JointPMF JointPMF::point_mass(int m, int n, int u, int v) {
  check_dims(m, n);
  if (u < 0 || u > m || v < 0 || v > n) throw DomainError("point mass location out of range");
  std::vector<Rational> p(static_cast<std::size_t>(m + 1) * (n + 1));
  p[static_cast<std::size_t>(u) * (n + 1) + v] = 1;
  return JointPMF(m, n, std::move(p));
}

const Rational& JointPMF::at(int u, int v) const {
  if (u < 0 || u > m_ || v < 0 || v > n_) throw DomainError("pmf index " + cell(u, v) + " out of range");
  return (*this)(u, v);
}

EventSystem::EventSystem(int m, int n, std::vector<Atom> atoms) : m_(m), n_(n) {
  check_dims(m, n);
  if (m > kMaxEvents || n > kMaxEvents) {
    throw DomainError("event families are limited to " + std::to_string(kMaxEvents) + " events each");
  }
  const std::uint64_t a_allowed = (std::uint64_t{1} << m) - 1;
  const std::uint64_t b_allowed = (std::uint64_t{1} << n) - 1;
  Rational total;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Atom& atom = atoms[i];
    if (atom.weight.sign() < 0) {
      throw DomainError("atom " + std::to_string(i) + " has negative weight " + atom.weight.str());
    }
    if ((atom.a_mask & ~a_allowed) != 0 || (atom.b_mask & ~b_allowed) != 0) {
      throw DomainError("atom " + std::to_string(i) + " references an event beyond m or n");
    }
    total += atom.weight;
    if (!atom.weight.is_zero()) atoms_.push_back(std::move(atom));
  }
  if (total != Rational(1)) throw DomainError("atom weights sum to " + total.str() + ", not 1");
}

MomentMatrix::MomentMatrix(int m, int n, std::vector<Rational> s)
    : MomentMatrix(m, n, m, n, std::move(s)) {}

MomentMatrix::MomentMatrix(int m, int n, int kmax, int lmax, std::vector<Rational> s)
    : m_(m), n_(n), kmax_(kmax), lmax_(lmax), s_(std::move(s)) {
  check_dims(m, n);
  if (kmax < 0 || kmax > m || lmax < 0 || lmax > n) {
    throw DomainError("moment order limits must satisfy 0 <= kmax <= m and 0 <= lmax <= n");
  }
  const auto expected = static_cast<std::size_t>(kmax + 1) * static_cast<std::size_t>(lmax + 1);
  if (s_.size() != expected) {
    throw DomainError("moment grid has " + std::to_string(s_.size()) + " entries, expected " +
                      std::to_string(expected));
  }
  if (s_.front() != Rational(1)) throw DomainError("moment S(0,0) must equal 1, got " + s_.front().str());
}

const Rational& MomentMatrix::operator()(int i, int j) const {
  if (i < 0 || i > kmax_ || j < 0 || j > lmax_) {
    throw DomainError("moment S" + cell(i, j) + " is not available (known up to " + cell(kmax_, lmax_) + ")");
  }
  return s_[static_cast<std::size_t>(i) * (lmax_ + 1) + j];
}

MomentMatrix MomentMatrix::with_entry(int i, int j, Rational value) const {
  (void)(*this)(i, j);
  std::vector<Rational> s = s_;
  s[static_cast<std::size_t>(i) * (lmax_ + 1) + j] = std::move(value);
  return MomentMatrix(m_, n_, kmax_, lmax_, std::move(s));
}

bool within_moment_bounds(const MomentMatrix& mm) {
  for (int i = 0; i <= mm.kmax(); ++i) {
    for (int j = 0; j <= mm.lmax(); ++j) {
      const Rational& x = mm(i, j);
      if (x.sign() < 0 || x > binom(mm.m(), i) * binom(mm.n(), j)) return false;
    }
  }
  return true;
}

MomentMatrix moments_from_pmf(const JointPMF& pmf) {
  const int m = pmf.m();
  const int n = pmf.n();
  std::vector<Rational> s(static_cast<std::size_t>(m + 1) * (n + 1));
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) {
      const Rational& p = pmf(u, v);
      if (p.is_zero()) continue;
      for (int i = 0; i <= u; ++i) {
        const Rational pi = binom(u, i) * p;
        for (int j = 0; j <= v; ++j) {
          s[static_cast<std::size_t>(i) * (n + 1) + j] += pi * binom(v, j);
        }
      }
    }
  }
  return MomentMatrix(m, n, std::move(s));
}

MomentMatrix bonferroni_sums(const EventSystem& es, int kmax, int lmax) {
  const int m = es.m();
  const int n = es.n();
  if (kmax < 0 || kmax > m) throw DomainError("kmax must satisfy 0 <= kmax <= m");
  if (lmax < 0 || lmax > n) throw DomainError("lmax must satisfy 0 <= lmax <= n");

  std::vector<Rational> s(static_cast<std::size_t>(kmax + 1) * (lmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    for_each_subset_of_size(m, k, [&](std::uint64_t a_subset) {
      // Atoms inside every A_i, i in the subset, pooled by their B-pattern.
      std::map<std::uint64_t, Rational> by_b_mask;
      for (const Atom& atom : es.atoms()) {
        if ((atom.a_mask & a_subset) == a_subset) by_b_mask[atom.b_mask] += atom.weight;
      }
      if (by_b_mask.empty()) return;
      for (int l = 0; l <= lmax; ++l) {
        Rational& entry = s[static_cast<std::size_t>(k) * (lmax + 1) + l];
        for_each_subset_of_size(n, l, [&](std::uint64_t b_subset) {
          for (const auto& [b_mask, weight] : by_b_mask) {
            if ((b_mask & b_subset) == b_subset) entry += weight;
          }
        });
      }
    });
  }
  return MomentMatrix(m, n, kmax, lmax, std::move(s));
}

MomentMatrix bonferroni_sums(const EventSystem& es) { return bonferroni_sums(es, es.m(), es.n()); }

JointPMF counting_pmf(const EventSystem& es) {
  const int n = es.n();
  std::vector<Rational> p(static_cast<std::size_t>(es.m() + 1) * (n + 1));
  for (const Atom& atom : es.atoms()) {
    const int u = std::popcount(atom.a_mask);
    const int v = std::popcount(atom.b_mask);
    p[static_cast<std::size_t>(u) * (n + 1) + v] += atom.weight;
  }
  return JointPMF(es.m(), n, std::move(p));
}

EventSystem event_system_from_pmf(const JointPMF& pmf) {
  std::vector<Atom> atoms;
  for (int u = 0; u <= pmf.m(); ++u) {
    for (int v = 0; v <= pmf.n(); ++v) {
      if (pmf(u, v).is_zero()) continue;
      atoms.push_back(Atom{pmf(u, v), (std::uint64_t{1} << u) - 1, (std::uint64_t{1} << v) - 1});
    }
  }
  return EventSystem(pmf.m(), pmf.n(), std::move(atoms));
}

JointPMF complement_pmf(const JointPMF& pmf) {
  const int m = pmf.m();
  const int n = pmf.n();
  std::vector<Rational> q(pmf.values().size());
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) q[static_cast<std::size_t>(u) * (n + 1) + v] = pmf(m - u, n - v);
  }
  return JointPMF(m, n, std::move(q));
}

}  // namespace bimoment
