// One PASS/FAIL line per acceptance criterion, with wall time. Exits non-zero
// when any line fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hlmax/cli.hpp"
#include "property_checks.hpp"

using namespace hlmax;

namespace {

const QuadratureSpec kQ{};

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::vector<double> range(double lo, double hi, double step = 1) {
  std::vector<double> out;
  for (double r = lo; r <= hi + 1e-9; r += step) out.push_back(r);
  return out;
}

void claims_pass(Verdict& v, const std::vector<ClaimReport>& reps) {
  v.require(!reps.empty(), "no claims evaluated");
  for (const auto& r : reps) {
    std::string where = r.claim;
    for (const auto& [k, val] : r.params) where += " " + k + "=" + val;
    if (r.error) where += " (" + *r.error + ")";
    v.require(r.pass, where + " margin_log=" + fmt(r.margin_log));
  }
}

Verdict example3() {
  Verdict v;
  ClaimParams par;
  par.lo = 2;
  par.hi = 12;
  const auto reps = run_claims(load_preset(ExampleId::Ex3), par, kQ, {"lower_bound", "upper_bound"});
  claims_pass(v, reps);
  for (const auto& r : reps) v.require(r.computed.is_exact() && r.bound.is_exact(), r.claim + " not exact");
  return v;
}

Verdict example4() {
  Verdict v;
  ClaimParams par;
  par.lo = 5;
  par.hi = 12;
  claims_pass(v, run_claims(load_preset(ExampleId::Ex4), par, kQ.with_log_domain(), {"plus_lower", "minus_upper"}));
  return v;
}

Verdict ratios() {
  Verdict v;
  const RatioSeries ex3 =
      condition_c_ratio_series(Measure::ex3(), lattice_point(0, 0), range(2, 14), MetricKind::Supremum, kQ);
  const double r14 = ex3.ratios.back().to_double();
  v.require(std::abs(r14 - 4) <= 0.04, "EX3 ratio at 14 is " + fmt(r14));
  const RatioSeries ex2 =
      condition_c_ratio_series(Measure::gauss_minus(), make_point(0.0), range(1, 10), MetricKind::Euclidean, kQ);
  const double r10 = ex2.ratios.back().to_double();
  v.require(std::abs(r10 - 1) <= 1e-4, "EX2 ratio at 10 is " + fmt(r10));
  const RatioSeries unit =
      condition_c_ratio_series(Measure::lattice(2), lattice_point(0, 0), range(1, 20), MetricKind::Supremum, kQ);
  for (std::size_t i = 0; i < unit.r.size(); ++i) {
    const long r = static_cast<long>(unit.r[i]);
    const Rational expected((2 * r + 1) * (2 * r + 1), (2 * r - 1) * (2 * r - 1));
    v.require(unit.ratios[i].is_exact() && *unit.ratios[i].exact() == expected, "unit ratio at r=" + std::to_string(r));
  }
  return v;
}

Verdict example1() {
  Verdict v;
  const Measure mu = Measure::gauss_plus();
  const QuadratureSpec q = kQ.with_log_domain();
  const std::vector<double> sched = range(0.25, 8, 0.25);
  const CenteredResult up = centered_max_truncated(mu, RampF{}, make_point(0.0), sched, MetricKind::Euclidean, q);
  v.require(up.sup.to_double() > 10, "series at 0 peaks at " + fmt(up.sup.to_double()) + " (r=" +
                                         fmt(up.argmax_radius) + "), never above 10 for r <= 8");
  QuadratureSpec half = q;
  half.rel_tol /= 2;
  const double cap = centered_max_truncated(mu, RampF{}, make_point(-1.0), sched, MetricKind::Euclidean, q).sup.to_double();
  const double cap2 =
      centered_max_truncated(mu, RampF{}, make_point(-1.0), sched, MetricKind::Euclidean, half).sup.to_double();
  v.require(std::abs(cap - cap2) <= 1e-6 * std::abs(cap), "cap at -1 moves under tolerance halving");
  v.detail += (v.detail.empty() ? "" : "; ") + std::string("cap at -1 = ") + fmt(cap);
  return v;
}

Verdict example5() {
  Verdict v;
  claims_pass(v, run_claims(load_preset(ExampleId::Ex5), ClaimParams{}, kQ,
                            {"eps_constraint", "strip_mass", "average", "off_A_bound"}));
  return v;
}

Verdict oracle() {
  Verdict v;
  std::ostringstream out;
  std::ostringstream err;
  const int code =
      cli::run({"oracle-check", "--seed", "1", "--count", "100", "--window", "4", "--points", "5"}, out, err);
  v.require(code == cli::kOk, "exit " + std::to_string(code) + " " + err.str().substr(0, 200));
  if (code == cli::kOk) {
    const Json j = Json::parse(out.str());
    v.require(j["data"]["compared"].get<int>() == 500, "compared " + j["data"]["compared"].dump());
  }
  return v;
}

Verdict properties() {
  Verdict v;
  constexpr int n = 200;
  const std::pair<const char*, std::function<std::string()>> checks[] = {
      {"truncation", [] { return props::truncation_monotone(n); }},
      {"domination", [] { return props::centered_dominated(n); }},
      {"homogeneity", [] { return props::homogeneous(n); }},
      {"subadditivity", [] { return props::subadditive(n); }},
      {"constant", [] { return props::constant_fixed(n); }},
      {"singleton", [] { return props::singleton_bound(n); }},
  };
  for (const auto& [name, check] : checks) {
    const std::string bad = check();
    v.require(bad.empty(), std::string(name) + " " + bad);
  }
  return v;
}

Verdict theorem2() {
  Verdict v;
  const Measure mu = theorem2_demo_measure(4);
  const WitnessSequence ws = theorem2_witness_sequence(mu, 6, 30, kQ);
  v.require(ws.a.size() >= 4, "witness depth " + std::to_string(ws.a.size()));
  if (!v.pass) return v;
  const Theorem2Witness w = theorem2_sector_select(mu, ws.a, 4, kQ);
  for (std::size_t i = 0; i < w.j.size(); ++i) {
    const Quantity need = Quantity::exact(pow2(-static_cast<long>(i + 1))) * w.ball[i];
    v.require(w.sector[i].is_exact() && w.sector[i] >= need, "sector mass at n=" + std::to_string(i + 1));
  }
  const Theorem2Report rep = theorem2_test_function(mu, w, 4, kQ);
  v.require(rep.near.size() == 4, "near checks " + std::to_string(rep.near.size()));
  for (const auto& c : rep.near) {
    v.require(c.value.is_exact() && c.value >= Quantity::exact(pow2(c.n)), "near average n=" + std::to_string(c.n));
  }
  v.require(!rep.far.empty(), "no far points");
  for (const auto& c : rep.far) {
    v.require(c.value.is_exact() && c.value <= Quantity::exact(Rational(2)), "far average n=" + std::to_string(c.n));
  }
  v.require(rep.pass, "report not passing");
  return v;
}

Verdict table1() {
  Verdict v;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"reproduce", "--table1", "--format", "csv"}, out, err);
  v.require(code == cli::kOk, "exit " + std::to_string(code));
  v.require(out.str() ==
                "example,dp_noncentered,dp_centered,expected_noncentered,expected_centered,match\n"
                "EX1,1,0,1,0,1\nEX2,1,1,1,1,1\nEX3,0,1,0,1,1\nEX4,0,0,0,0,1\n",
            "matrix:\n" + out.str());
  return v;
}

struct Criterion {
  const char* name;
  double budget_s;
  Verdict (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"example3_bounds", 10, example3},   {"example4_bounds", 5, example4},     {"condition_c_ratios", 5, ratios},
      {"example1_growth", 10, example1},   {"example5_bounds", 30, example5},    {"oracle_equivalence", 60, oracle},
      {"property_suite", 600, properties}, {"theorem2_constructor", 30, theorem2}, {"table1_reproduction", 600, table1},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    v.require(secs < c.budget_s, "over budget of " + fmt(c.budget_s) + " s");
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << " (" << std::fixed << std::setprecision(2) << secs << " s)"
              << std::defaultfloat;
    if (!v.detail.empty()) std::cout << ": " << v.detail;
    std::cout << '\n';
  }
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << '\n';
  return failed == 0 ? 0 : 1;
}
