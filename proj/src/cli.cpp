#include "bimoment/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bimoment/bounds.hpp"
#include "bimoment/combinatorics.hpp"
#include "bimoment/io.hpp"
#include "bimoment/oracle.hpp"
#include "bimoment/transforms.hpp"

namespace bimoment::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string annotate(const Rational& r) { return r.str() + " (≈" + r.decimal(4) + ")"; }

Rational clamp01(const Rational& r) { return std::clamp(r, Rational(0), Rational(1)); }

// The value a bound reports, with --clamp applied.
struct Rendered {
  std::optional<Rational> value;
  bool clamped = false;
};

Rendered render_value(const BoundValue& b, bool clamp) {
  Rendered out;
  if (!b.defined()) return out;
  out.value = clamp ? clamp01(*b.value) : *b.value;
  out.clamped = clamp && *out.value != *b.value;
  return out;
}

ordered_json bound_json(const BoundValue& b, bool clamp) {
  ordered_json j;
  j["family"] = std::string(to_string(b.family));
  j["direction"] = std::string(to_string(b.direction));
  j["target"] = {{"u", b.target_u}, {"v", b.target_v}};
  ordered_json params = ordered_json::object();
  for (const auto& [name, value] : b.params) params[name] = value;
  j["params"] = std::move(params);
  j["label"] = b.label();
  j["defined"] = b.defined();
  const Rendered r = render_value(b, clamp);
  if (r.value) {
    j["value"] = r.value->str();
    j["decimal"] = r.value->decimal(4);
    if (r.clamped) j["raw_value"] = b.value->str();
  } else {
    j["value"] = nullptr;
    j["note"] = b.note;
  }
  return j;
}

std::string bound_line(const BoundValue& b, bool clamp) {
  const Rendered r = render_value(b, clamp);
  std::string dir = "[" + std::string(to_string(b.direction)) + "]";
  if (!r.value) return "undefined " + dir + " " + b.note;
  std::string line = annotate(*r.value) + " " + dir;
  if (r.clamped) line += " clamped from " + b.value->str();
  return line;
}

std::string target_text(int u, int v) {
  return "P(S>=" + std::to_string(u) + ",T>=" + std::to_string(v) + ")";
}

// Exact tail from the law when known, otherwise by inversion of the moments.
std::optional<Rational> exact_target(const LoadedInput& in, int u, int v) {
  if (in.pmf) return exact_tail(*in.pmf, u, v);
  if (in.moments.is_complete()) return tails_from_moments(in.moments, u, v);
  return std::nullopt;
}

struct BoundFlags {
  std::string family;
  int u = 1;
  int v = 1;
  std::optional<int> s, t, k, l, a, b;
};

int need(const std::optional<int>& x, const char* flag, const std::string& family) {
  if (!x) throw UsageError("family '" + family + "' requires --" + std::string(flag));
  return *x;
}

void require_unit_target(const BoundFlags& f) {
  if (f.u != 1 || f.v != 1) {
    throw UsageError("family '" + f.family + "' bounds P(S>=1,T>=1); use --u 1 --v 1");
  }
}

BoundValue evaluate_bound(const MomentMatrix& mm, const BoundFlags& f) {
  const std::string& name = f.family;
  if (name == "bonferroni_lower" || name == "bonferroni_upper") {
    const BoundPair pair = bonferroni_pair(mm, f.u, f.v, need(f.k, "k", name));
    return name == "bonferroni_lower" ? pair.lower : pair.upper;
  }
  if (name == "frechet") {
    require_unit_target(f);
    return frechet_lower(mm, need(f.k, "k", name), need(f.l, "l", name));
  }
  if (name == "gumbel") {
    require_unit_target(f);
    return gumbel_upper(mm, need(f.k, "k", name), need(f.l, "l", name));
  }
  if (name == "frechet_type" || name == "gumbel_type" || name == "chung") {
    if ((f.s && *f.s != f.u) || (f.t && *f.t != f.v)) {
      throw UsageError("--s/--t must match the target --u/--v for family '" + name + "'");
    }
    const int k = need(f.k, "k", name);
    const int l = need(f.l, "l", name);
    if (name == "chung") return chung_bound(mm, f.u, f.v, k, l);
    const BoundPair pair = frechet_gumbel_type(mm, f.u, f.v, k, l);
    return name == "frechet_type" ? pair.lower : pair.upper;
  }
  if (name == "galambos_xu" || name == "c1") {
    require_unit_target(f);
    return comparison_bound(mm, Comparison::kGalambosXu);
  }
  if (name == "madi_nagy_prekopa" || name == "c6") {
    require_unit_target(f);
    return comparison_bound(mm, Comparison::kMadiNagyPrekopa);
  }
  if (name == "chen_seneta" || name == "c3") {
    require_unit_target(f);
    return comparison_bound(mm, Comparison::kChenSeneta, f.a.value_or(mm.m() - 1), f.b.value_or(mm.n() - 1));
  }
  throw UsageError("unknown family '" + name +
                   "' (expected bonferroni_lower, bonferroni_upper, frechet, gumbel, frechet_type, gumbel_type, "
                   "chung, galambos_xu|c1, chen_seneta|c3, madi_nagy_prekopa|c6)");
}

// Every bound that applies to target (u,v), plus notes for the omitted ones.
struct Catalogue {
  std::vector<BoundValue> bounds;
  std::vector<std::string> omitted;
};

Catalogue catalogue(const MomentMatrix& mm, int u, int v) {
  const int m = mm.m();
  const int n = mm.n();
  Catalogue c;
  auto add = [&](BoundValue b) {
    if (b.defined()) {
      c.bounds.push_back(std::move(b));
    } else {
      c.omitted.push_back(b.label() + ": " + b.note);
    }
  };
  // Order-limited inputs lack some moments; those bounds are listed as omitted.
  auto attempt = [&](const std::string& what, auto&& evaluate) {
    try {
      evaluate();
      return true;
    } catch (const DomainError& e) {
      c.omitted.push_back(what + ": " + e.what());
      return false;
    }
  };
  auto tag = [](const char* family, std::initializer_list<std::pair<const char*, int>> params) {
    std::string out = std::string(family) + "(";
    for (const auto& [name, value] : params) {
      out += (out.back() == '(' ? "" : ",") + std::string(name) + "=" + std::to_string(value);
    }
    return out + ")";
  };

  for (int k = 0;; ++k) {
    const bool ok = attempt(tag("bonferroni", {{"u", u}, {"v", v}, {"k", k}}), [&] {
      BoundPair pair = bonferroni_pair(mm, u, v, k);
      add(std::move(pair.lower));
      add(std::move(pair.upper));
    });
    if (!ok || u + v + 2 * k >= m + n) break;
  }
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= n; ++l) {
      attempt(tag("frechet_type/gumbel_type", {{"s", u}, {"t", v}, {"k", k}, {"l", l}}), [&] {
        BoundPair pair = frechet_gumbel_type(mm, u, v, k, l);
        add(std::move(pair.lower));
        add(std::move(pair.upper));
      });
    }
  }
  for (int k = u; k <= m; ++k) {
    for (int l = v; l <= n; ++l) {
      attempt(tag("chung", {{"s", u}, {"t", v}, {"k", k}, {"l", l}}), [&] { add(chung_bound(mm, u, v, k, l)); });
    }
  }
  if (u == 1 && v == 1) {
    for (int k = 1; k <= m; ++k) {
      for (int l = 1; l <= n; ++l) {
        attempt(tag("frechet/gumbel", {{"k", k}, {"l", l}}), [&] {
          add(frechet_lower(mm, k, l));
          add(gumbel_upper(mm, k, l));
        });
      }
    }
    if (m >= 2 && n >= 2) {
      attempt("galambos_xu", [&] { add(comparison_bound(mm, Comparison::kGalambosXu)); });
      attempt(tag("chen_seneta", {{"a", m - 1}, {"b", n - 1}}),
              [&] { add(comparison_bound(mm, Comparison::kChenSeneta, m - 1, n - 1)); });
      attempt("madi_nagy_prekopa", [&] { add(comparison_bound(mm, Comparison::kMadiNagyPrekopa)); });
    } else {
      c.omitted.emplace_back("galambos_xu, chen_seneta, madi_nagy_prekopa: require m >= 2 and n >= 2");
    }
  }
  std::stable_sort(c.bounds.begin(), c.bounds.end(), [](const BoundValue& x, const BoundValue& y) {
    if (*x.value != *y.value) return *x.value < *y.value;
    if (x.direction != y.direction) return x.direction == Direction::kLower;
    return x.label() < y.label();
  });
  return c;
}

int cmd_moments(const std::string& path, std::optional<int> kmax, std::optional<int> lmax, std::ostream& out) {
  const LoadedInput in = load_input(path);
  const MomentMatrix& full = in.moments;
  const int kk = kmax.value_or(full.kmax());
  const int ll = lmax.value_or(full.lmax());
  if (kk < 0 || kk > full.kmax() || ll < 0 || ll > full.lmax()) {
    throw UsageError("--kmax/--lmax must lie within 0..m and 0..n of the available moments");
  }
  std::vector<Rational> values;
  for (int i = 0; i <= kk; ++i) {
    for (int j = 0; j <= ll; ++j) values.push_back(full(i, j));
  }
  const MomentMatrix shown(full.m(), full.n(), kk, ll, std::move(values));

  if (!in.events) {
    out << to_json(shown);
    return kExitOk;
  }
  const MomentMatrix sums = bonferroni_sums(*in.events, kk, ll);
  const bool holds = sums == shown;
  std::vector<std::pair<std::string, std::string>> extra;
  if (!shown.is_complete()) {
    extra.emplace_back("kmax", std::to_string(kk));
    extra.emplace_back("lmax", std::to_string(ll));
  }
  extra.emplace_back("sums_match_moments", holds ? "true" : "false");
  std::string doc = grid_json(full.m(), full.n(), "s", kk + 1, ll + 1, shown.values(), extra);
  // Append the enumerated sums as a second grid inside the same object.
  std::ostringstream grid;
  grid << "  \"bonferroni_sums\": [\n";
  for (int i = 0; i <= kk; ++i) {
    grid << "    [";
    for (int j = 0; j <= ll; ++j) grid << (j > 0 ? ", " : "") << "\"" << sums(i, j).str() << "\"";
    grid << "]" << (i < kk ? "," : "") << "\n";
  }
  grid << "  ]\n}\n";
  doc.replace(doc.size() - 4, 4, "],\n" + grid.str());
  out << doc;
  return holds ? kExitOk : kExitViolation;
}

int cmd_invert(const std::string& path, const std::string& to, std::ostream& out) {
  const LoadedInput in = load_input(path);
  if (!in.moments.is_complete()) throw UsageError("inversion needs the complete moment matrix (kmax = m, lmax = n)");
  try {
    if (to == "pmf") {
      out << to_json(pmf_from_moments(in.moments));
    } else {
      out << to_json(tail_table_from_moments(in.moments));
    }
  } catch (const DomainError& e) {
    throw InputError(path + ": moments do not describe a distribution on the grid (" + e.what() + ")");
  }
  return kExitOk;
}

int cmd_bound(const std::string& path, const BoundFlags& flags, bool clamp, bool as_json, std::ostream& out) {
  const LoadedInput in = load_input(path);
  const BoundValue b = evaluate_bound(in.moments, flags);
  if (as_json) {
    out << bound_json(b, clamp).dump(2) << "\n";
  } else {
    out << bound_line(b, clamp) << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& path, const std::string& family, int u, int v, std::ostream& out) {
  const LoadedInput in = load_input(path);
  const MomentMatrix& mm = in.moments;
  const int m = mm.m();
  const int n = mm.n();
  const bool chung = family == "chung";
  if (!chung && (u != 1 || v != 1)) throw UsageError("family '" + family + "' bounds P(S>=1,T>=1); use --u 1 --v 1");
  if (u < 1 || u > m || v < 1 || v > n) throw UsageError("--u/--v must satisfy 1 <= u <= m, 1 <= v <= n");

  const int k0 = chung ? u : 1;
  const int l0 = chung ? v : 1;
  auto value_at = [&](int k, int l) -> Rational {
    if (family == "frechet") return *frechet_lower(mm, k, l).value;
    if (family == "gumbel") return *gumbel_upper(mm, k, l).value;
    return *chung_bound(mm, u, v, k, l).value;
  };
  std::map<std::pair<int, int>, Rational> grid;
  for (int k = k0; k <= m; ++k) {
    for (int l = l0; l <= n; ++l) grid.emplace(std::pair{k, l}, value_at(k, l));
  }

  std::size_t width = 4;
  for (const auto& [key, value] : grid) width = std::max(width, value.str().size());
  out << family << " bounds on " << target_text(u, v) << " over (k,l)\n";
  out << std::setw(6) << "k\\l";
  for (int l = l0; l <= n; ++l) out << "  " << std::setw(static_cast<int>(width)) << l;
  out << "\n";
  for (int k = k0; k <= m; ++k) {
    out << std::setw(6) << k;
    for (int l = l0; l <= n; ++l) out << "  " << std::setw(static_cast<int>(width)) << grid.at({k, l}).str();
    out << "\n";
  }

  // frechet rises and is concave; gumbel and chung fall and are convex.
  const bool rising = family == "frechet";
  std::vector<std::string> violations;
  auto check_axis = [&](bool along_k) {
    const int outer_lo = along_k ? l0 : k0;
    const int outer_hi = along_k ? n : m;
    const int lo = along_k ? k0 : l0;
    const int hi = along_k ? m : n;
    const char* axis = along_k ? "k" : "l";
    for (int o = outer_lo; o <= outer_hi; ++o) {
      auto at = [&](int x) { return along_k ? grid.at({x, o}) : grid.at({o, x}); };
      for (int x = lo; x + 1 <= hi; ++x) {
        const bool ok = rising ? at(x) <= at(x + 1) : at(x + 1) <= at(x);
        if (!ok) {
          violations.push_back(std::string("not ") + (rising ? "nondecreasing" : "nonincreasing") + " in " + axis +
                               " at " + axis + "=" + std::to_string(x) + " (other index " + std::to_string(o) + ")");
        }
      }
      for (int x = lo; x + 2 <= hi; ++x) {
        const Rational second = at(x + 2) - 2 * at(x + 1) + at(x);
        const bool ok = rising ? second <= 0 : second >= 0;
        if (!ok) {
          violations.push_back(std::string("not ") + (rising ? "concave" : "convex") + " in " + axis + " at " + axis +
                               "=" + std::to_string(x) + " (other index " + std::to_string(o) + ")");
        }
      }
    }
  };
  check_axis(true);
  check_axis(false);

  if (violations.empty()) {
    out << "shape: " << (rising ? "nondecreasing and concave" : "nonincreasing and convex") << " in k and l\n";
    return kExitOk;
  }
  for (const auto& v_line : violations) out << "VIOLATION: " << v_line << "\n";
  return kExitViolation;
}

int cmd_compare(const std::string& path, int u, int v, bool as_json, std::ostream& out) {
  const LoadedInput in = load_input(path);
  const MomentMatrix& mm = in.moments;
  if (u < 1 || u > mm.m() || v < 1 || v > mm.n()) throw UsageError("--u/--v must satisfy 1 <= u <= m, 1 <= v <= n");
  const Catalogue cat = catalogue(mm, u, v);
  const std::optional<Rational> exact = exact_target(in, u, v);

  std::optional<Rational> best_lower;
  std::optional<Rational> best_upper;
  for (const BoundValue& b : cat.bounds) {
    if (b.direction == Direction::kLower) {
      if (!best_lower || *b.value > *best_lower) best_lower = *b.value;
    } else if (!best_upper || *b.value < *best_upper) {
      best_upper = *b.value;
    }
  }
  auto is_best = [&](const BoundValue& b) {
    return b.direction == Direction::kLower ? *b.value == *best_lower : *b.value == *best_upper;
  };

  if (as_json) {
    ordered_json doc;
    doc["target"] = {{"u", u}, {"v", v}};
    doc["m"] = mm.m();
    doc["n"] = mm.n();
    doc["exact"] = exact ? ordered_json(exact->str()) : ordered_json(nullptr);
    ordered_json list = ordered_json::array();
    for (const BoundValue& b : cat.bounds) {
      ordered_json j = bound_json(b, false);
      j["best"] = is_best(b);
      list.push_back(std::move(j));
    }
    doc["bounds"] = std::move(list);
    doc["omitted"] = cat.omitted;
    out << doc.dump(2) << "\n";
    return kExitOk;
  }

  std::size_t width = 5;
  for (const BoundValue& b : cat.bounds) width = std::max(width, b.label().size());
  out << "target " << target_text(u, v) << "  m=" << mm.m() << " n=" << mm.n() << "\n";
  out << std::left << std::setw(7) << "exact" << std::setw(static_cast<int>(width)) << "" << "  "
      << (exact ? annotate(*exact) : std::string("unknown (order-limited moments)")) << "\n";
  for (const BoundValue& b : cat.bounds) {
    out << std::setw(7) << to_string(b.direction) << std::setw(static_cast<int>(width)) << b.label() << "  "
        << annotate(*b.value);
    if (is_best(b)) out << "  <- best " << to_string(b.direction);
    out << "\n";
  }
  for (const std::string& note : cat.omitted) out << "omitted: " << note << "\n";
  out << std::right;
  return kExitOk;
}

int cmd_validate(std::size_t trials, std::uint64_t seed, int mmax, int nmax, bool as_json, std::ostream& out) {
  const std::vector<InstanceSpec> specs = make_specs(trials, seed, mmax, nmax);
  const ValidationReport report = validate(specs, all_properties());
  if (as_json) {
    out << report_to_json(report) << "\n";
  } else {
    out << "trials: " << report.trials << "\nchecks: " << report.checks << "\nfailures: " << report.failures.size()
        << "\nelapsed_ms: " << report.elapsed.count() << "\n";
    for (const Failure& f : report.failures) {
      out << "FAIL " << f.property << " [" << f.parameters << "] seed=" << f.spec.seed << " m=" << f.spec.m
          << " n=" << f.spec.n << " kind=" << to_string(f.spec.kind) << " lhs=" << f.lhs << " rhs=" << f.rhs << "\n";
    }
  }
  return report.ok() ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bivariate binomial moments and Bonferroni-type bounds in exact arithmetic", "bimoment"};
  app.require_subcommand(1);

  std::string in_path;
  std::optional<int> kmax, lmax;
  auto* moments = app.add_subcommand("moments", "Print the binomial moment matrix of an input");
  moments->add_option("--in", in_path, "pmf JSON or event CSV")->required();
  moments->add_option("--kmax", kmax, "Highest order in S");
  moments->add_option("--lmax", lmax, "Highest order in T");

  std::string to;
  auto* invert = app.add_subcommand("invert", "Recover the pmf or tail table from moments");
  invert->add_option("--in", in_path, "moment JSON (or any input)")->required();
  invert->add_option("--to", to, "pmf or tails")->required()->check(CLI::IsMember({"pmf", "tails"}));

  BoundFlags flags;
  bool clamp = false;
  bool as_json = false;
  auto* bound = app.add_subcommand("bound", "Evaluate one bound");
  bound->add_option("--in", in_path)->required();
  bound->add_option("--family", flags.family)->required();
  bound->add_option("--u", flags.u)->required();
  bound->add_option("--v", flags.v)->required();
  bound->add_option("--s", flags.s);
  bound->add_option("--t", flags.t);
  bound->add_option("--k", flags.k);
  bound->add_option("--l", flags.l);
  bound->add_option("--a", flags.a);
  bound->add_option("--b", flags.b);
  bound->add_flag("--clamp", clamp, "Clamp the reported value to [0,1]");
  bound->add_flag("--json", as_json);

  std::string sweep_family;
  int u = 1;
  int v = 1;
  auto* sweep = app.add_subcommand("sweep", "Tabulate a bound family over (k,l) and check its shape");
  sweep->add_option("--in", in_path)->required();
  sweep->add_option("--family", sweep_family)->required()->check(CLI::IsMember({"frechet", "gumbel", "chung"}));
  sweep->add_option("--u", u)->required();
  sweep->add_option("--v", v)->required();

  auto* compare = app.add_subcommand("compare", "All applicable bounds with the exact tail");
  compare->add_option("--in", in_path)->required();
  compare->add_option("--u", u)->required();
  compare->add_option("--v", v)->required();
  compare->add_flag("--json", as_json);

  std::size_t trials = 100;
  std::uint64_t seed = 0;
  int mmax = 6;
  int nmax = 6;
  auto* validate_cmd = app.add_subcommand("validate", "Randomized exact verification of every property");
  validate_cmd->add_option("--trials", trials);
  validate_cmd->add_option("--seed", seed);
  validate_cmd->add_option("--mmax", mmax)->check(CLI::Range(1, 12));
  validate_cmd->add_option("--nmax", nmax)->check(CLI::Range(1, 12));
  validate_cmd->add_flag("--json", as_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (moments->parsed()) return cmd_moments(in_path, kmax, lmax, out);
    if (invert->parsed()) return cmd_invert(in_path, to, out);
    if (bound->parsed()) return cmd_bound(in_path, flags, clamp, as_json, out);
    if (sweep->parsed()) return cmd_sweep(in_path, sweep_family, u, v, out);
    if (compare->parsed()) return cmd_compare(in_path, u, v, as_json, out);
    if (validate_cmd->parsed()) return cmd_validate(trials, seed, mmax, nmax, as_json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace bimoment::cli
