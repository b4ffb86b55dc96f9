#include "bimoment/oracle.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

#include <json.hpp>

#include "bimoment/bounds.hpp"
#include "bimoment/combinatorics.hpp"

namespace bimoment {

namespace {

std::vector<Rational> normalize(const std::vector<long>& weights) {
  long total = 0;
  for (long w : weights) total += w;
  std::vector<Rational> out;
  out.reserve(weights.size());
  for (long w : weights) out.emplace_back(w, total);
  return out;
}

// Integer weights in 0..kWeightGranularity with at least one positive entry.
std::vector<long> draw_weights(std::mt19937_64& rng, std::size_t count, bool sparse) {
  std::uniform_int_distribution<long> weight(0, kWeightGranularity);
  std::bernoulli_distribution keep(0.5);
  std::vector<long> w(count);
  for (auto& x : w) x = weight(rng);
  if (sparse) {
    for (auto& x : w) {
      if (!keep(rng)) x = 0;
    }
  }
  if (std::all_of(w.begin(), w.end(), [](long x) { return x == 0; })) {
    std::uniform_int_distribution<std::size_t> pick(0, count - 1);
    w[pick(rng)] = 1 + weight(rng) % kWeightGranularity;
  }
  return w;
}

std::string params_str(std::initializer_list<std::pair<const char*, long>> params) {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ",";
    out += std::string(name) + "=" + std::to_string(value);
  }
  return out;
}

// Accumulates checks for a single instance.
class Checker {
 public:
  Checker(const InstanceSpec& spec, ValidationReport& report, std::size_t cap)
      : spec_(spec), report_(report), cap_(cap) {}

  bool saturated() const { return local_failures_ >= cap_; }

  void equal(const char* property, const std::string& params, const Rational& lhs, const Rational& rhs) {
    record(property, params, lhs, rhs, lhs == rhs);
  }

  // Passes when lhs <= rhs.
  void at_most(const char* property, const std::string& params, const Rational& lhs, const Rational& rhs) {
    record(property, params, lhs, rhs, lhs <= rhs);
  }

 private:
  void record(const char* property, const std::string& params, const Rational& lhs, const Rational& rhs, bool ok) {
    ++report_.checks;
    if (ok || saturated()) return;
    ++local_failures_;
    report_.failures.push_back(Failure{spec_, property, params, lhs, rhs});
  }

  const InstanceSpec& spec_;
  ValidationReport& report_;
  std::size_t cap_;
  std::size_t local_failures_ = 0;
};

struct Context {
  const InstanceSpec& spec;
  const Instance& instance;
  const JointPMF& pmf;
  const MomentMatrix& mm;
  Checker& check;
};

void check_pmf_roundtrip(const Context& c) {
  for (int u = 0; u <= c.pmf.m(); ++u) {
    for (int v = 0; v <= c.pmf.n(); ++v) {
      c.check.equal("pmf_roundtrip", params_str({{"u", u}, {"v", v}}), pmf_from_moments(c.mm, u, v), c.pmf(u, v));
    }
  }
}

void check_tail_roundtrip(const Context& c) {
  const TailTable truth = tail_table_from_pmf(c.pmf);
  for (int u = 0; u <= c.pmf.m(); ++u) {
    for (int v = 0; v <= c.pmf.n(); ++v) {
      c.check.equal("tail_roundtrip", params_str({{"u", u}, {"v", v}}), tails_from_moments(c.mm, u, v),
                    truth(u, v));
      c.check.equal("tail_roundtrip", params_str({{"i", u}, {"j", v}}), moments_from_tails(truth, u, v),
                    c.mm(u, v));
    }
  }
}

void check_zero_probability(const Context& c) {
  c.check.equal("zero_probability", "u=0,v=0", prob_zero_by_antidiagonals(c.mm), c.pmf(0, 0));
  c.check.equal("zero_probability", "u=0,v=0", prob_zero_by_antidiagonals(c.mm), pmf_from_moments(c.mm, 0, 0));
}

void check_pgf(const Context& c) {
  static const std::array<Rational, 3> grid{Rational(-1, 2), Rational(1, 3), Rational(2)};
  for (std::size_t a = 0; a < grid.size(); ++a) {
    for (std::size_t b = 0; b < grid.size(); ++b) {
      c.check.equal("pgf_identity", "t=" + grid[a].str() + ",s=" + grid[b].str(),
                    pgf_eval(c.pmf, grid[a] + 1, grid[b] + 1), moment_generating_eval(c.mm, grid[a], grid[b]));
    }
  }
  c.check.equal("pgf_identity", "t=1,s=1", pgf_eval(c.pmf, 1, 1), 1);
}

void check_subset_sums(const Context& c) {
  const EventSystem* es = std::get_if<EventSystem>(&c.instance);
  std::optional<EventSystem> built;
  if (es == nullptr) {
    if (c.pmf.m() > 8 || c.pmf.n() > 8) return;  // subset enumeration would dominate
    built.emplace(event_system_from_pmf(c.pmf));
    es = &*built;
    c.check.equal("subset_sums", "counting_roundtrip", counting_pmf(*es) == c.pmf ? 1 : 0, 1);
  }
  const MomentMatrix sums = bonferroni_sums(*es);
  for (int k = 0; k <= c.pmf.m(); ++k) {
    for (int l = 0; l <= c.pmf.n(); ++l) {
      c.check.equal("subset_sums", params_str({{"k", k}, {"l", l}}), sums(k, l), c.mm(k, l));
    }
  }
}

void check_complement(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  c.check.equal("complement", "involution", complement_pmf(complement_pmf(c.pmf)) == c.pmf ? 1 : 0, 1);
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= n; ++l) {
      const std::string p = params_str({{"k", k}, {"l", l}});
      const Rational sbar = complementary_moment(c.mm, k, l);
      c.check.equal("complement", p + ",expectation_form", sbar, complementary_moment_from_pmf(c.pmf, k, l));
      c.check.equal("complement", p + ",product_form", binom(m, k) * binom(n, l) - sbar,
                    union_product_expectation(c.pmf, k, l));
    }
  }
  for (int k = 0; k <= m; ++k) {
    Rational direct;
    for (int u = 0; u <= m; ++u) {
      for (int v = 0; v <= n; ++v) direct += binom(m - u, k) * c.pmf(u, v);
    }
    c.check.equal("complement", params_str({{"marginal_k", k}}), complementary_marginal_s(c.mm, k), direct);
  }
  for (int l = 0; l <= n; ++l) {
    Rational direct;
    for (int u = 0; u <= m; ++u) {
      for (int v = 0; v <= n; ++v) direct += binom(n - v, l) * c.pmf(u, v);
    }
    c.check.equal("complement", params_str({{"marginal_l", l}}), complementary_marginal_t(c.mm, l), direct);
  }
}

void check_moment_bounds(const Context& c) {
  c.check.equal("moment_bounds", "within", within_moment_bounds(c.mm) ? 1 : 0, 1);
  c.check.equal("moment_bounds", "s00", c.mm(0, 0), 1);
}

void sandwich_one(const Context& c, const BoundValue& b, const Rational& truth) {
  if (!b.defined()) return;
  if (b.direction == Direction::kLower) {
    c.check.at_most("sandwich", b.label(), *b.value, truth);
  } else {
    c.check.at_most("sandwich", b.label(), truth, *b.value);
  }
}

void check_sandwich(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  const TailTable truth = tail_table_from_pmf(c.pmf);

  for (int u = 1; u <= m; ++u) {
    for (int v = 1; v <= n; ++v) {
      for (int k = 0; u + v + 2 * k <= m + n; ++k) {
        const BoundPair pair = bonferroni_pair(c.mm, u, v, k);
        sandwich_one(c, pair.lower, truth(u, v));
        sandwich_one(c, pair.upper, truth(u, v));
      }
    }
  }
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= n; ++l) {
      sandwich_one(c, frechet_lower(c.mm, k, l), truth(1, 1));
      sandwich_one(c, gumbel_upper(c.mm, k, l), truth(1, 1));
      for (int s = 1; s <= m; ++s) {
        for (int t = 1; t <= n; ++t) {
          const BoundPair pair = frechet_gumbel_type(c.mm, s, t, k, l);
          sandwich_one(c, pair.lower, truth(s, t));
          sandwich_one(c, pair.upper, truth(s, t));
          if (s <= k && t <= l) sandwich_one(c, chung_bound(c.mm, s, t, k, l), truth(s, t));
        }
      }
    }
  }
  if (m >= 2 && n >= 2) {
    sandwich_one(c, comparison_bound(c.mm, Comparison::kGalambosXu), truth(1, 1));
    sandwich_one(c, comparison_bound(c.mm, Comparison::kMadiNagyPrekopa), truth(1, 1));
    for (int a = m / 2; a <= m; ++a) {
      if (m - 2 * a - 1 > 0) continue;
      for (int b = n / 2; b <= n; ++b) {
        if (n - 2 * b - 1 > 0) continue;
        sandwich_one(c, comparison_bound(c.mm, Comparison::kChenSeneta, a, b), truth(1, 1));
      }
    }
  }
}

// Shape checks walk one axis with the other fixed. `value(x)` is the bound at
// position x along the axis, x in [lo, hi].
template <typename F>
void check_monotone(const Context& c, const char* property, const std::string& tag, int lo, int hi,
                    bool increasing, F value) {
  for (int x = lo; x + 1 <= hi; ++x) {
    const Rational a = value(x);
    const Rational b = value(x + 1);
    const std::string p = tag + ",step=" + std::to_string(x);
    if (increasing) {
      c.check.at_most(property, p + ",monotone", a, b);
    } else {
      c.check.at_most(property, p + ",monotone", b, a);
    }
  }
  for (int x = lo; x + 2 <= hi; ++x) {
    const Rational second = value(x + 2) - 2 * value(x + 1) + value(x);
    const std::string p = tag + ",at=" + std::to_string(x);
    if (increasing) {
      c.check.at_most(property, p + ",concave", second, 0);
    } else {
      c.check.at_most(property, p + ",convex", 0, second);
    }
  }
}

void check_frechet_shape(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  for (int l = 1; l <= n; ++l) {
    check_monotone(c, "frechet_shape", "axis=k,l=" + std::to_string(l), 1, m, true,
                   [&](int k) { return *frechet_lower(c.mm, k, l).value; });
  }
  for (int k = 1; k <= m; ++k) {
    check_monotone(c, "frechet_shape", "axis=l,k=" + std::to_string(k), 1, n, true,
                   [&](int l) { return *frechet_lower(c.mm, k, l).value; });
  }
}

void check_gumbel_shape(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  for (int l = 1; l <= n; ++l) {
    check_monotone(c, "gumbel_shape", "axis=k,l=" + std::to_string(l), 1, m, false,
                   [&](int k) { return *gumbel_upper(c.mm, k, l).value; });
  }
  for (int k = 1; k <= m; ++k) {
    check_monotone(c, "gumbel_shape", "axis=l,k=" + std::to_string(k), 1, n, false,
                   [&](int l) { return *gumbel_upper(c.mm, k, l).value; });
  }
}

void check_chung_shape(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  auto chung = [&](int s, int t, int k, int l) { return *chung_bound(c.mm, s, t, k, l).value; };
  for (int s = 1; s <= m; ++s) {
    for (int t = 1; t <= n; ++t) {
      const std::string st = "s=" + std::to_string(s) + ",t=" + std::to_string(t);
      for (int l = t; l <= n; ++l) {
        check_monotone(c, "chung_shape", st + ",axis=k,l=" + std::to_string(l), s, m, false,
                       [&](int k) { return chung(s, t, k, l); });
      }
      for (int k = s; k <= m; ++k) {
        check_monotone(c, "chung_shape", st + ",axis=l,k=" + std::to_string(k), t, n, false,
                       [&](int l) { return chung(s, t, k, l); });
      }
      if (s < m) {
        for (int k = s; k < m; ++k) {
          for (int l = t; l <= n; ++l) {
            c.check.equal("chung_shape", st + ",recursion=k," + params_str({{"k", k}, {"l", l}}),
                          chung(s, t, k, l) - chung(s, t, k + 1, l), Rational(s, m - s) * chung(s + 1, t, k + 1, l));
          }
        }
      }
      if (t < n) {
        for (int k = s; k <= m; ++k) {
          for (int l = t; l < n; ++l) {
            c.check.equal("chung_shape", st + ",recursion=l," + params_str({{"k", k}, {"l", l}}),
                          chung(s, t, k, l) - chung(s, t, k, l + 1), Rational(t, n - t) * chung(s, t + 1, k, l + 1));
          }
        }
      }
    }
  }
}

void check_anchors(const Context& c) {
  const int m = c.pmf.m();
  const int n = c.pmf.n();
  const TailTable truth = tail_table_from_pmf(c.pmf);
  c.check.equal("anchors", "frechet(k=m,l=n)", *frechet_lower(c.mm, m, n).value, truth(1, 1));
  c.check.equal("anchors", "gumbel(k=1,l=1)", *gumbel_upper(c.mm, 1, 1).value, c.mm(1, 1));
  for (int s = 1; s <= m; ++s) {
    for (int t = 1; t <= n; ++t) {
      c.check.equal("anchors", "chung(" + params_str({{"s", s}, {"t", t}}) + ",k=m,l=n)", *chung_bound(c.mm, s, t, m, n).value, truth(s, t));
      const int depth = (m + n - s - t + 1) / 2;
      const BoundPair bonf = bonferroni_pair(c.mm, s, t, depth);
      const std::string p = params_str({{"u", s}, {"v", t}, {"k", depth}});
      c.check.equal("anchors", "bonferroni_lower(" + p + ")", *bonf.lower.value, truth(s, t));
      c.check.equal("anchors", "bonferroni_upper(" + p + ")", *bonf.upper.value, truth(s, t));
    }
  }
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= n; ++l) {
      const BoundPair typed = frechet_gumbel_type(c.mm, 1, 1, k, l);
      const std::string p = params_str({{"k", k}, {"l", l}});
      c.check.equal("anchors", "gumbel_type(s=1,t=1," + p + ")", *typed.upper.value, *gumbel_upper(c.mm, k, l).value);
      c.check.equal("anchors", "frechet_type(s=1,t=1," + p + ")", *typed.lower.value, *frechet_lower(c.mm, k, l).value);
    }
  }
  if (m >= 2 && n >= 2) {
    c.check.equal("anchors", "chen_seneta(a=m-1,b=n-1)", *comparison_bound(c.mm, Comparison::kChenSeneta, m - 1, n - 1).value,
                  *frechet_lower(c.mm, 2, 2).value);
  }
}

}  // namespace

std::string_view to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kDensePmf:
      return "dense_pmf";
    case InstanceKind::kSparsePmf:
      return "sparse_pmf";
    case InstanceKind::kEventSystem:
      return "event_system";
  }
  return "unknown";
}

Instance random_instance(const InstanceSpec& spec) {
  if (spec.m < 1 || spec.n < 1) throw DomainError("instance dimensions must satisfy m >= 1 and n >= 1");
  std::mt19937_64 rng(spec.seed);

  if (spec.kind == InstanceKind::kEventSystem) {
    if (spec.atoms && *spec.atoms < 1) throw DomainError("event system needs at least one atom");
    if (spec.m > EventSystem::kMaxEvents || spec.n > EventSystem::kMaxEvents) {
      throw DomainError("event system dimensions exceed the supported family size");
    }
    std::uniform_int_distribution<int> atom_count(1, kMaxRandomAtoms);
    const int count = spec.atoms ? *spec.atoms : atom_count(rng);
    const std::vector<Rational> weights = normalize(draw_weights(rng, static_cast<std::size_t>(count), false));
    std::uniform_int_distribution<std::uint64_t> a_bits(0, (std::uint64_t{1} << spec.m) - 1);
    std::uniform_int_distribution<std::uint64_t> b_bits(0, (std::uint64_t{1} << spec.n) - 1);
    std::vector<Atom> atoms;
    for (int i = 0; i < count; ++i) {
      const std::uint64_t a = a_bits(rng);
      const std::uint64_t b = b_bits(rng);
      atoms.push_back(Atom{weights[static_cast<std::size_t>(i)], a, b});
    }
    return EventSystem(spec.m, spec.n, std::move(atoms));
  }

  const auto cells = static_cast<std::size_t>(spec.m + 1) * static_cast<std::size_t>(spec.n + 1);
  const bool sparse = spec.kind == InstanceKind::kSparsePmf;
  return JointPMF(spec.m, spec.n, normalize(draw_weights(rng, cells, sparse)));
}

JointPMF law_of(const Instance& instance) {
  if (const auto* pmf = std::get_if<JointPMF>(&instance)) return *pmf;
  return counting_pmf(std::get<EventSystem>(instance));
}

std::vector<InstanceSpec> make_specs(std::size_t trials, std::uint64_t seed, int mmax, int nmax,
                                     std::vector<InstanceKind> kinds) {
  if (mmax < 1 || nmax < 1) throw DomainError("mmax and nmax must be at least 1");
  if (kinds.empty()) throw DomainError("at least one instance kind is required");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_m(1, mmax);
  std::uniform_int_distribution<int> pick_n(1, nmax);
  std::vector<InstanceSpec> specs;
  specs.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    InstanceSpec spec;
    spec.seed = rng();
    spec.m = pick_m(rng);
    spec.n = pick_n(rng);
    spec.kind = kinds[i % kinds.size()];
    specs.push_back(spec);
  }
  return specs;
}

Rational exact_tail(const JointPMF& pmf, int u, int v) {
  if (u < 0 || u > pmf.m() || v < 0 || v > pmf.n()) throw DomainError("tail index out of range");
  Rational sum;
  for (int i = u; i <= pmf.m(); ++i) {
    for (int j = v; j <= pmf.n(); ++j) sum += pmf(i, j);
  }
  return sum;
}

TailTable tail_table_from_pmf(const JointPMF& pmf) {
  const int m = pmf.m();
  const int n = pmf.n();
  std::vector<Rational> q(static_cast<std::size_t>(m + 1) * (n + 1));
  auto at = [&](int u, int v) -> Rational& { return q[static_cast<std::size_t>(u) * (n + 1) + v]; };
  for (int u = m; u >= 0; --u) {
    for (int v = n; v >= 0; --v) {
      Rational x = pmf(u, v);
      if (u < m) x += at(u + 1, v);
      if (v < n) x += at(u, v + 1);
      if (u < m && v < n) x -= at(u + 1, v + 1);
      at(u, v) = std::move(x);
    }
  }
  return TailTable(m, n, std::move(q));
}

Rational complementary_moment_from_pmf(const JointPMF& pmf, int k, int l) {
  const int m = pmf.m();
  const int n = pmf.n();
  if (k < 1 || k > m || l < 1 || l > n) throw DomainError("complementary moment index out of range");
  Rational e_s;
  Rational e_t;
  Rational e_st;
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) {
      const Rational& p = pmf(u, v);
      e_s += binom(m - u, k) * p;
      e_t += binom(n - v, l) * p;
      e_st += binom(m - u, k) * binom(n - v, l) * p;
    }
  }
  return binom(m, k) * e_t + binom(n, l) * e_s - e_st;
}

Rational union_product_expectation(const JointPMF& pmf, int k, int l) {
  const int m = pmf.m();
  const int n = pmf.n();
  if (k < 1 || k > m || l < 1 || l > n) throw DomainError("union product index out of range");
  Rational sum;
  for (int u = 0; u <= m; ++u) {
    for (int v = 0; v <= n; ++v) {
      sum += (binom(m, k) - binom(m - u, k)) * (binom(n, l) - binom(n - v, l)) * pmf(u, v);
    }
  }
  return sum;
}

std::set<std::string> all_properties() { return {property_ids().begin(), property_ids().end()}; }

ValidationReport validate(const std::vector<InstanceSpec>& specs, const std::set<std::string>& properties,
                          const ValidateOptions& options) {
  for (const auto& id : properties) {
    if (std::find(property_ids().begin(), property_ids().end(), id) == property_ids().end()) {
      throw DomainError("unknown property id '" + id + "'");
    }
  }
  using Suite = void (*)(const Context&);
  static const std::vector<std::pair<std::string, Suite>> suites{
      {"pmf_roundtrip", check_pmf_roundtrip},       {"tail_roundtrip", check_tail_roundtrip},
      {"zero_probability", check_zero_probability}, {"pgf_identity", check_pgf},
      {"subset_sums", check_subset_sums},           {"complement", check_complement},
      {"moment_bounds", check_moment_bounds},       {"sandwich", check_sandwich},
      {"frechet_shape", check_frechet_shape},       {"gumbel_shape", check_gumbel_shape},
      {"chung_shape", check_chung_shape},           {"anchors", check_anchors},
  };

  const auto start = std::chrono::steady_clock::now();
  ValidationReport report;
  for (const InstanceSpec& spec : specs) {
    ++report.trials;
    if (properties.empty()) continue;
    const Instance instance = random_instance(spec);
    const JointPMF pmf = law_of(instance);
    MomentMatrix mm = moments_from_pmf(pmf);
    if (options.moment_fault) mm = options.moment_fault(mm);
    Checker checker(spec, report, options.max_failures_per_trial);
    const Context context{spec, instance, pmf, mm, checker};
    for (const auto& [id, suite] : suites) {
      if (checker.saturated()) break;
      if (properties.count(id) != 0) suite(context);
    }
  }
  report.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return report;
}

std::string report_to_json(const ValidationReport& report, bool include_elapsed) {
  nlohmann::ordered_json doc;
  doc["trials"] = report.trials;
  doc["checks"] = report.checks;
  doc["ok"] = report.ok();
  auto failures = nlohmann::ordered_json::array();
  for (const Failure& f : report.failures) {
    nlohmann::ordered_json spec;
    spec["seed"] = f.spec.seed;
    spec["m"] = f.spec.m;
    spec["n"] = f.spec.n;
    spec["kind"] = std::string(to_string(f.spec.kind));
    if (f.spec.atoms) spec["atoms"] = *f.spec.atoms;
    nlohmann::ordered_json entry;
    entry["spec"] = std::move(spec);
    entry["property"] = f.property;
    entry["parameters"] = f.parameters;
    entry["lhs"] = f.lhs.str();
    entry["rhs"] = f.rhs.str();
    failures.push_back(std::move(entry));
  }
  doc["failures"] = std::move(failures);
  if (include_elapsed) doc["elapsed_ms"] = report.elapsed.count();
  return doc.dump(2);
}

}  // namespace bimoment
