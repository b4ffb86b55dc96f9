#include <gtest/gtest.h>

#include "bimoment/oracle.hpp"
#include "test_support.hpp"

namespace bimoment {
namespace {

TEST(RandomInstance, Deterministic) {
  const InstanceSpec spec{0, 1, 1, InstanceKind::kDensePmf, std::nullopt};
  EXPECT_EQ(law_of(random_instance(spec)), law_of(random_instance(spec)));
  const InstanceSpec events{7, 3, 2, InstanceKind::kEventSystem, 5};
  EXPECT_EQ(law_of(random_instance(events)), law_of(random_instance(events)));
}

TEST(RandomInstance, NormalizedAndShaped) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (InstanceKind kind : {InstanceKind::kDensePmf, InstanceKind::kSparsePmf, InstanceKind::kEventSystem}) {
      const Instance inst = random_instance({seed, 3, 4, kind, std::nullopt});
      const JointPMF pmf = law_of(inst);
      EXPECT_EQ(pmf.m(), 3);
      EXPECT_EQ(pmf.n(), 4);
      Rational total;
      for (const Rational& p : pmf.values()) total += p;
      EXPECT_EQ(total, Rational(1));
      if (kind == InstanceKind::kEventSystem) {
        ASSERT_TRUE(std::holds_alternative<EventSystem>(inst));
        EXPECT_LE(std::get<EventSystem>(inst).atoms().size(), static_cast<std::size_t>(kMaxRandomAtoms));
      }
    }
  }
  EXPECT_THROW(random_instance({0, 0, 1, InstanceKind::kDensePmf, std::nullopt}), DomainError);
  EXPECT_THROW(random_instance({0, 1, 1, InstanceKind::kEventSystem, 0}), DomainError);
}

TEST(ExactTail, Examples) {
  const JointPMF law = testing::three_point();
  EXPECT_EQ(exact_tail(law, 0, 0), Rational(1));
  EXPECT_EQ(exact_tail(law, 1, 1), Rational(2, 3));
  EXPECT_EQ(exact_tail(law, 2, 1), Rational(1, 3));
  EXPECT_THROW(exact_tail(law, 3, 0), DomainError);
}

TEST(MakeSpecs, RangesAndDeterminism) {
  const auto specs = make_specs(60, 11, 3, 5);
  ASSERT_EQ(specs.size(), 60U);
  EXPECT_EQ(specs, make_specs(60, 11, 3, 5));
  for (const auto& s : specs) {
    EXPECT_GE(s.m, 1);
    EXPECT_LE(s.m, 3);
    EXPECT_GE(s.n, 1);
    EXPECT_LE(s.n, 5);
  }
}

TEST(Validate, DenseInstancesAllPropertiesHold) {
  const auto specs = make_specs(100, 3, 4, 4, {InstanceKind::kDensePmf});
  const ValidationReport report = validate(specs, all_properties());
  EXPECT_EQ(report.trials, 100U);
  EXPECT_GT(report.checks, 0U);
  EXPECT_TRUE(report.ok()) << report_to_json(report);
}

TEST(Validate, FaultInjectionIsRecorded) {
  ValidateOptions options;
  options.moment_fault = [](const MomentMatrix& mm) { return mm.with_entry(1, 1, mm(1, 1) - 1); };
  const auto specs = make_specs(5, 1, 3, 3, {InstanceKind::kDensePmf});
  const ValidationReport report = validate(specs, {"pmf_roundtrip"}, options);
  ASSERT_FALSE(report.ok());
  for (const Failure& f : report.failures) EXPECT_EQ(f.property, "pmf_roundtrip");
  EXPECT_NE(report.failures.front().lhs, report.failures.front().rhs);
}

TEST(Validate, EmptyPropertySetCountsTrials) {
  const ValidationReport report = validate(make_specs(7, 0, 2, 2), {});
  EXPECT_EQ(report.trials, 7U);
  EXPECT_TRUE(report.ok());
}

TEST(Validate, UnknownPropertyIsDomainError) {
  EXPECT_THROW(validate(make_specs(1, 0, 2, 2), {"no_such_property"}), DomainError);
}

TEST(Validate, ReportIsReproducible) {
  const auto specs = make_specs(20, 5, 3, 3);
  EXPECT_EQ(report_to_json(validate(specs, all_properties()), false),
            report_to_json(validate(specs, all_properties()), false));
}

}  // namespace
}  // namespace bimoment
