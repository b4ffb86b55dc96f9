#include <gtest/gtest.h>

#include "bimoment/combinatorics.hpp"
#include "bimoment/model.hpp"
#include "bimoment/oracle.hpp"
#include "test_support.hpp"

namespace bimoment {
namespace {

using testing::three_point;
using testing::grid;

TEST(JointPMF, Validation) {
  EXPECT_THROW(JointPMF(0, 1, grid({"1", "0"})), DomainError);
  EXPECT_THROW(JointPMF(1, 1, grid({"1", "0", "0"})), DomainError);
  EXPECT_THROW(JointPMF(1, 1, grid({"1/2", "1/4", "0", "0"})), DomainError);
  EXPECT_THROW(JointPMF(1, 1, grid({"3/2", "-1/2", "0", "0"})), DomainError);
  EXPECT_NO_THROW(JointPMF(1, 1, grid({"1/2", "1/4", "0", "1/4"})));
  EXPECT_THROW(three_point().at(3, 0), DomainError);
}

TEST(Moments, PointMassAtCorner) {
  const MomentMatrix mm = moments_from_pmf(JointPMF::point_mass(2, 3, 2, 3));
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 3; ++j) EXPECT_EQ(mm(i, j), binom(2, i) * binom(3, j));
  }
  EXPECT_EQ(mm(1, 1), Rational(6));
}

TEST(Moments, ThreePoint) {
  const MomentMatrix mm = moments_from_pmf(three_point());
  EXPECT_EQ(mm(0, 0), Rational(1));
  EXPECT_EQ(mm(1, 1), Rational(5, 3));
  EXPECT_EQ(mm(1, 2), Rational(2, 3));
  EXPECT_EQ(mm(2, 1), Rational(2, 3));
  EXPECT_EQ(mm(2, 2), Rational(1, 3));
  EXPECT_TRUE(within_moment_bounds(mm));
}

TEST(MomentMatrix, Validation) {
  EXPECT_THROW(MomentMatrix(1, 1, grid({"2", "0", "0", "0"})), DomainError);
  const MomentMatrix limited(3, 3, 1, 1, grid({"1", "3/2", "3/2", "2"}));
  EXPECT_FALSE(limited.is_complete());
  EXPECT_EQ(limited(1, 1), Rational(2));
  EXPECT_THROW(limited(2, 1), DomainError);
  EXPECT_FALSE(within_moment_bounds(MomentMatrix(1, 1, grid({"1", "2", "0", "0"}))));
}

TEST(BonferroniSums, SingleFullAtom) {
  const EventSystem es(2, 2, {Atom{Rational(1), 0b11, 0b11}});
  const MomentMatrix sums = bonferroni_sums(es);
  for (int k = 0; k <= 2; ++k) {
    for (int l = 0; l <= 2; ++l) EXPECT_EQ(sums(k, l), binom(2, k) * binom(2, l));
  }
}

TEST(BonferroniSums, DisjointIndicators) {
  const EventSystem es(1, 1, {Atom{Rational(1, 2), 0b1, 0}, Atom{Rational(1, 2), 0, 0b1}});
  EXPECT_EQ(bonferroni_sums(es)(1, 1), Rational(0));
  EXPECT_EQ(bonferroni_sums(es)(1, 0), Rational(1, 2));
}

TEST(BonferroniSums, ThreeAtomSystemMatchesCountingMoments) {
  const EventSystem es(3, 2, {Atom{Rational(1, 5), 0b101, 0b10}, Atom{Rational(1, 2), 0b011, 0b11},
                              Atom{Rational(3, 10), 0b110, 0b00}});
  EXPECT_EQ(bonferroni_sums(es), moments_from_pmf(counting_pmf(es)));
}

TEST(BonferroniSums, OrderLimitedAgreesWithFull) {
  const EventSystem es = event_system_from_pmf(three_point());
  const MomentMatrix full = bonferroni_sums(es);
  const MomentMatrix partial = bonferroni_sums(es, 1, 2);
  for (int k = 0; k <= 1; ++k) {
    for (int l = 0; l <= 2; ++l) EXPECT_EQ(partial(k, l), full(k, l));
  }
  EXPECT_THROW(bonferroni_sums(es, 3, 0), DomainError);
  EXPECT_THROW(bonferroni_sums(es, 0, -1), DomainError);
}

TEST(EventSystem, Validation) {
  EXPECT_THROW(EventSystem(1, 1, {Atom{Rational(1, 2), 0, 0}}), DomainError);
  EXPECT_THROW(EventSystem(1, 1, {Atom{Rational(1), 0b10, 0}}), DomainError);
  EXPECT_THROW(EventSystem(1, 1, {Atom{Rational(3, 2), 0, 0}, Atom{Rational(-1, 2), 0, 0}}), DomainError);
  const EventSystem es(1, 1, {Atom{Rational(1), 0, 0}, Atom{Rational(0), 1, 1}});
  EXPECT_EQ(es.atoms().size(), 1U);
}

TEST(CountingPmf, Aggregation) {
  const EventSystem one(2, 1, {Atom{Rational(1), 0b11, 0}});
  EXPECT_EQ(counting_pmf(one)(2, 0), Rational(1));
  const EventSystem two(2, 1, {Atom{Rational(1, 2), 0b11, 0}, Atom{Rational(1, 2), 0b11, 0}});
  EXPECT_EQ(counting_pmf(two), counting_pmf(one));
}

TEST(EventSystemFromPmf, Construction) {
  const EventSystem point = event_system_from_pmf(JointPMF::point_mass(1, 1, 1, 0));
  ASSERT_EQ(point.atoms().size(), 1U);
  EXPECT_TRUE(point.atoms()[0].in_a(1));
  EXPECT_FALSE(point.atoms()[0].in_b(1));

  const JointPMF uniform = testing::uniform_unit_square();
  const EventSystem es = event_system_from_pmf(uniform);
  EXPECT_EQ(es.atoms().size(), 4U);
  for (const Atom& a : es.atoms()) EXPECT_EQ(a.weight, Rational(1, 4));
  EXPECT_EQ(counting_pmf(es), uniform);

  const EventSystem events = event_system_from_pmf(three_point());
  EXPECT_EQ(events.atoms().size(), 3U);
  EXPECT_EQ(bonferroni_sums(events), moments_from_pmf(three_point()));
}

TEST(ComplementPmf, InvolutionAndMoments) {
  EXPECT_EQ(complement_pmf(JointPMF::point_mass(2, 2, 0, 0)), JointPMF::point_mass(2, 2, 2, 2));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const JointPMF pmf = law_of(random_instance({seed, 3, 4, InstanceKind::kDensePmf, std::nullopt}));
    EXPECT_EQ(complement_pmf(complement_pmf(pmf)), pmf);
    const MomentMatrix comp = moments_from_pmf(complement_pmf(pmf));
    for (int k = 0; k <= 3; ++k) {
      for (int l = 0; l <= 4; ++l) {
        Rational direct;
        for (int u = 0; u <= 3; ++u) {
          for (int v = 0; v <= 4; ++v) direct += binom(3 - u, k) * binom(4 - v, l) * pmf(u, v);
        }
        EXPECT_EQ(comp(k, l), direct);
      }
    }
  }
}

}  // namespace
}  // namespace bimoment
