#ifndef BIMOMENT_ORACLE_HPP
#define BIMOMENT_ORACLE_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bimoment/model.hpp"
#include "bimoment/rational.hpp"
#include "bimoment/transforms.hpp"

namespace bimoment {

enum class InstanceKind { kDensePmf, kSparsePmf, kEventSystem };

std::string_view to_string(InstanceKind kind);

struct InstanceSpec {
  std::uint64_t seed = 0;
  int m = 1;
  int n = 1;
  InstanceKind kind = InstanceKind::kDensePmf;
  std::optional<int> atoms;  // event systems only; drawn from 1..16 when absent

  friend bool operator==(const InstanceSpec&, const InstanceSpec&) = default;
};

using Instance = std::variant<JointPMF, EventSystem>;

/// Integer weights in 0..kWeightGranularity, normalized exactly.
inline constexpr int kWeightGranularity = 16;
inline constexpr int kMaxRandomAtoms = 16;

/// Deterministic in the spec: the same spec always yields the same instance.
Instance random_instance(const InstanceSpec& spec);

/// The joint law of an instance (the counting pmf for an event system).
JointPMF law_of(const Instance& instance);

/// `trials` specs with m in 1..mmax, n in 1..nmax, cycling through `kinds`.
std::vector<InstanceSpec> make_specs(std::size_t trials, std::uint64_t seed, int mmax, int nmax,
                                     std::vector<InstanceKind> kinds = {InstanceKind::kDensePmf,
                                                                        InstanceKind::kSparsePmf,
                                                                        InstanceKind::kEventSystem});

// --- Ground truth, computed from the pmf without any moment machinery -------

/// P(S >= u, T >= v) by suffix summation.
Rational exact_tail(const JointPMF& pmf, int u, int v);

TailTable tail_table_from_pmf(const JointPMF& pmf);

/// binom(m,k) E binom(n-T,l) + binom(n,l) E binom(m-S,k) - E binom(m-S,k) binom(n-T,l).
Rational complementary_moment_from_pmf(const JointPMF& pmf, int k, int l);

/// E[(binom(m,k) - binom(m-S,k)) (binom(n,l) - binom(n-T,l))].
Rational union_product_expectation(const JointPMF& pmf, int k, int l);

// --- Randomized validation -------------------------------------------------

/// Property suites understood by validate().
inline const std::vector<std::string>& property_ids() {
  static const std::vector<std::string> ids{
      "pmf_roundtrip", "tail_roundtrip", "zero_probability", "pgf_identity",
      "subset_sums",   "complement",     "moment_bounds",    "sandwich",
      "frechet_shape", "gumbel_shape",   "chung_shape",      "anchors",
  };
  return ids;
}

struct Failure {
  InstanceSpec spec;
  std::string property;
  std::string parameters;
  Rational lhs;
  Rational rhs;
};

struct ValidationReport {
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::vector<Failure> failures;
  std::chrono::milliseconds elapsed{0};

  bool ok() const { return failures.empty(); }
};

struct ValidateOptions {
  /// Applied to every instance's moment matrix before the checks run.
  std::function<MomentMatrix(const MomentMatrix&)> moment_fault;
  /// Abort an instance's remaining checks after this many failures.
  std::size_t max_failures_per_trial = 16;
};

/// Runs the selected property suites on every spec. Violations are recorded,
/// never thrown. Unknown property ids raise DomainError.
ValidationReport validate(const std::vector<InstanceSpec>& specs, const std::set<std::string>& properties,
                          const ValidateOptions& options = {});

std::set<std::string> all_properties();

/// Stable JSON rendering of a report (keys in fixed order).
std::string report_to_json(const ValidationReport& report, bool include_elapsed = true);

}  // namespace bimoment

#endif  // BIMOMENT_ORACLE_HPP
