#pragma once

// Ratio series mu(B_{r+1}) / mu(B_r), per-point growth classification, batch
// scans, and the witness / sector / test-function chain for measures whose
// ratio limsup is infinite.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/function.hpp"
#include "hlmax/geometry.hpp"
#include "hlmax/integrate.hpp"
#include "hlmax/maximal.hpp"
#include "hlmax/measure.hpp"
#include "hlmax/numeric.hpp"

namespace hlmax {

// ---------------------------------------------------------------------------
// ratio series

struct RatioSeries {
  Point y0;
  std::vector<double> r;
  std::vector<Quantity> ratios;
  Quantity tail_limsup;
  double tail_fraction = 0.25;
  std::size_t tail_count = 0;
};

inline RatioSeries condition_c_ratio_series(const Measure& mu, const Point& y0, const std::vector<double>& r_values,
                                            MetricKind metric, const QuadratureSpec& q,
                                            double tail_fraction = 0.25) {
  validate_radii(r_values);
  if (!(tail_fraction > 0 && tail_fraction <= 1)) {
    throw Error(ErrorCode::InvalidArgument, "tail_fraction must lie in (0, 1]");
  }
  RatioSeries out;
  out.y0 = y0;
  out.r = r_values;
  out.tail_fraction = tail_fraction;
  for (double r : r_values) {
    const Quantity inner = ball_mass(mu, make_ball(y0, r, metric), q);
    const Quantity outer = ball_mass(mu, make_ball(y0, r + 1, metric), q);
    out.ratios.push_back(outer / inner);
  }
  const auto len = static_cast<double>(out.ratios.size());
  out.tail_count = static_cast<std::size_t>(std::ceil(tail_fraction * len));
  out.tail_limsup = out.ratios.back();
  for (std::size_t i = out.ratios.size() - out.tail_count; i < out.ratios.size(); ++i) {
    if (out.ratios[i] > out.tail_limsup) out.tail_limsup = out.ratios[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// growth classification

enum class Trend { Bounded, Divergent };
enum class MaxMode { Centered, Noncentered };

inline std::string to_string(Trend t) { return t == Trend::Bounded ? "BOUNDED_TREND" : "DIVERGENT_TREND"; }
inline std::string to_string(MaxMode m) { return m == MaxMode::Centered ? "CENTERED" : "NONCENTERED"; }

struct GrowthReport {
  Point point;
  MaxMode mode = MaxMode::Centered;
  std::vector<double> schedule;
  std::vector<Quantity> values;  // running sup with cutoff schedule[i]
  Trend classification = Trend::Bounded;
  double growth_slope = 0;
  Quantity sup_observed;
  double threshold = 1e3;
  bool lower_bound_only = false;
};

/// Least-squares slope of log(value) against log(radius) over the last half.
inline double tail_log_log_slope(const std::vector<double>& radii, const std::vector<Quantity>& values) {
  const std::size_t len = values.size();
  const std::size_t start = len - std::max<std::size_t>(std::min<std::size_t>(len, 2), (len + 1) / 2);
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = start; i < len; ++i) {
    if (values[i].is_zero() || !(radii[i] > 0)) continue;
    xs.push_back(std::log(radii[i]));
    ys.push_back(values[i].log());
  }
  if (xs.size() < 2) return 0;
  const auto k = static_cast<double>(xs.size());
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i] - ys[0];
  }
  mx /= k;
  my /= k;
  double sxy = 0;
  double sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - ys[0] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0;
}

inline GrowthReport classify_point(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                   const std::vector<double>& schedule, MaxMode mode,
                                   const std::optional<BallFamily>& fam, MetricKind metric, double threshold,
                                   const QuadratureSpec& q) {
  validate_radii(schedule);
  if (!(threshold > 0)) throw Error(ErrorCode::InvalidArgument, "threshold must be positive");
  GrowthReport rep;
  rep.point = x;
  rep.mode = mode;
  rep.schedule = schedule;
  rep.threshold = threshold;
  if (mode == MaxMode::Centered) {
    const CenteredResult res = centered_max_truncated(mu, f, x, schedule, metric, q);
    Quantity run;
    for (std::size_t i = 0; i < res.series.size(); ++i) {
      if (i == 0 || res.series[i].average > run) run = res.series[i].average;
      rep.values.push_back(run);
    }
  } else {
    if (!fam) throw Error(ErrorCode::InvalidArgument, "non-centered classification needs a ball family");
    const RadiusProfile profile = noncentered_profile(mu, f, x, *fam, q);
    rep.lower_bound_only = profile.lower_bound_only;
    for (double cut : schedule) {
      const bool covered = profile.entries.front().radius <= cut;
      rep.values.push_back(covered ? profile_max(profile, cut).sup : Quantity::zero());
    }
  }
  rep.sup_observed = rep.values.back();
  rep.growth_slope = tail_log_log_slope(schedule, rep.values);
  const bool above = rep.sup_observed.log() > std::log(threshold);
  rep.classification = above && rep.growth_slope > 0 ? Trend::Divergent : Trend::Bounded;
  return rep;
}

struct ScanConfig {
  std::vector<double> schedule;
  MaxMode mode = MaxMode::Centered;
  /// Family for non-centered mode, built per query point.
  std::function<BallFamily(const Point&)> family;
  MetricKind metric = MetricKind::Euclidean;
  double threshold = 1e3;
};

struct ScanSummary {
  std::size_t bounded = 0;
  std::size_t divergent = 0;
  Quantity bounded_sampled_mass = Quantity::zero();
  bool violation = false;
};

struct ScanResult {
  std::vector<GrowthReport> reports;
  ScanSummary summary;
};

inline ScanResult dichotomy_scan(const Measure& mu, const FunctionDescriptor& f, const std::vector<Point>& points,
                                 const ScanConfig& cfg, const QuadratureSpec& q) {
  if (points.empty()) throw Error(ErrorCode::InvalidArgument, "no sample points");
  ScanResult out;
  for (const Point& x : points) {
    std::optional<BallFamily> fam;
    if (cfg.mode == MaxMode::Noncentered) {
      if (!cfg.family) throw Error(ErrorCode::InvalidArgument, "non-centered scan needs a family builder");
      fam = cfg.family(x);
    }
    out.reports.push_back(classify_point(mu, f, x, cfg.schedule, cfg.mode, fam, cfg.metric, cfg.threshold, q));
    if (out.reports.back().classification == Trend::Divergent) {
      ++out.summary.divergent;
    } else {
      ++out.summary.bounded;
      const Quantity m = ball_mass(mu, make_ball(x, 0.5, cfg.metric), q);
      out.summary.bounded_sampled_mass = out.summary.bounded_sampled_mass + m;
    }
  }
  out.summary.violation =
      out.summary.bounded > 0 && out.summary.divergent > 0 && !out.summary.bounded_sampled_mass.is_zero();
  return out;
}

// ---------------------------------------------------------------------------
// witness sequence

struct WitnessSequence {
  std::vector<double> a;
  std::vector<Quantity> inner_mass;  // mu(B_{a_k}(0,0))
  std::vector<Quantity> outer_mass;  // mu(B_{a_k + 1}(0,0))
  bool found() const { return !a.empty(); }
};

namespace detail {

/// Radii where r -> mu(B_r(0)) or r -> mu(B_{r+1}(0)) can jump, on Z^2.
inline std::vector<double> lattice_jump_radii(double lo, double hi) {
  std::vector<double> out;
  const auto limit = static_cast<std::int64_t>(std::ceil((hi + 1) * (hi + 1)));
  for (std::int64_t u = 0; u * u <= limit; ++u) {
    for (std::int64_t v = u; u * u + v * v <= limit; ++v) {
      const double d = std::sqrt(static_cast<double>(u * u + v * v));
      for (double c : {d, d - 1}) {
        if (c >= lo && c <= hi) out.push_back(c);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// mu(B_r(0,0)) for many r: sites sorted by squared distance with running sums.
class RadialMass {
 public:
  RadialMass(const DiscreteWeights& w, double max_r) {
    const auto reach = static_cast<std::int64_t>(std::ceil(max_r));
    for (std::int64_t n = -reach; n <= reach; ++n) {
      for (std::int64_t m = -reach; m <= reach; ++m) {
        const auto d2 = static_cast<double>(n * n + m * m);
        if (d2 < max_r * max_r) sites_.push_back({d2, Site{n, m}});
      }
    }
    std::sort(sites_.begin(), sites_.end(), [](const auto& a, const auto& b) {
      return a.first < b.first || (a.first == b.first && a.second < b.second);
    });
    Rational acc = 0;
    for (const auto& [d2, s] : sites_) {
      acc += *w.weight(s).exact();
      cumulative_.push_back(acc);
    }
  }

  Quantity operator()(double r) const {
    const auto it = std::lower_bound(sites_.begin(), sites_.end(), r * r,
                                     [](const auto& e, double v) { return e.first < v; });
    if (it == sites_.begin()) throw Error(ErrorCode::EmptyBall, "ball contains no lattice point");
    return Quantity::exact(cumulative_[static_cast<std::size_t>(it - sites_.begin()) - 1]);
  }

 private:
  std::vector<std::pair<double, Site>> sites_;
  std::vector<Rational> cumulative_;
};

}  // namespace detail

inline WitnessSequence theorem2_witness_sequence(const Measure& mu, int k_max, double search_horizon,
                                                 const QuadratureSpec& q, double continuous_step = 0.5) {
  require_same_dim(mu.dim(), 2);
  if (k_max < 1) throw Error(ErrorCode::InvalidArgument, "k_max must be at least 1");
  const Point origin = make_point(0.0, 0.0);
  const bool lattice = mu.is_discrete() && mu.discrete().exact() && !q.log_domain;

  std::vector<double> candidates;
  std::function<Quantity(double)> mass;
  std::optional<detail::RadialMass> radial;
  if (lattice) {
    candidates = detail::lattice_jump_radii(8, search_horizon);
    radial.emplace(mu.discrete(), search_horizon + 1.5);
    mass = [&radial](double r) { return (*radial)(r); };
  } else {
    for (double a = 8; a <= search_horizon; a += continuous_step) candidates.push_back(a);
    mass = [&](double r) { return ball_mass(mu, make_ball(origin, r, MetricKind::Euclidean), q); };
  }

  WitnessSequence out;
  double lower = 8;
  for (int k = 1; k <= k_max; ++k) {
    const Quantity factor = Quantity::exact(pow2(2L * k));
    bool hit = false;
    std::vector<double> trial{lower};
    for (double c : candidates) {
      if (c > lower) trial.push_back(c);
    }
    for (double a : trial) {
      if (a > search_horizon) break;
      const Quantity inner = mass(a);
      const Quantity outer = mass(a + 1);
      if (outer >= factor * inner) {
        out.a.push_back(a);
        out.inner_mass.push_back(inner);
        out.outer_mass.push_back(outer);
        lower = a + 2;
        hit = true;
        break;
      }
    }
    if (!hit) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// dyadic sectors

/// j in {1..2^n} with phi(s) in [2 pi (j-1)/2^n, 2 pi j/2^n); the origin has angle 0.
inline int sector_index(const Site& s, int n) {
  if (n < 1 || n > 30) throw Error(ErrorCode::InvalidArgument, "sector level must lie in [1, 30]");
  if (s.n == 0 && s.m == 0) return 1;
  int quadrant = 0;
  std::int64_t u = 0;
  std::int64_t v = 0;
  if (s.n > 0 && s.m >= 0) {
    quadrant = 0, u = s.n, v = s.m;
  } else if (s.n <= 0 && s.m > 0) {
    quadrant = 1, u = s.m, v = -s.n;
  } else if (s.n < 0 && s.m <= 0) {
    quadrant = 2, u = -s.n, v = -s.m;
  } else {
    quadrant = 3, u = -s.m, v = s.n;
  }
  const int octant = 2 * quadrant + (v >= u ? 1 : 0);
  if (n <= 3) return (octant >> (3 - n)) + 1;
  // finer boundaries have irrational slope, so no lattice point sits on one
  const long double pi = std::numbers::pi_v<long double>;
  long double local = std::atan2(static_cast<long double>(v), static_cast<long double>(u));
  if (v >= u) local -= pi / 4;
  const long double width = 2 * pi / std::ldexp(1.0L, n);
  const std::int64_t per_octant = std::int64_t{1} << (n - 3);
  auto sub = static_cast<std::int64_t>(std::floor(local / width));
  sub = std::clamp<std::int64_t>(sub, 0, per_octant - 1);
  return static_cast<int>(octant * per_octant + sub + 1);
}

/// mu(S^{(n)}_{k+, j}): the part of B_{a+1}(0,0) in the j-th sector of level n.
inline Quantity sector_mass(const Measure& mu, double a, int n, int j) {
  if (!mu.is_discrete()) throw Error(ErrorCode::Unsupported, "sector masses are implemented for lattice measures");
  const DiscreteWeights& w = mu.discrete();
  require_same_dim(w.dim, 2);
  const Ball b{make_point(0.0, 0.0), a + 1, MetricKind::Euclidean};
  const bool exact = w.exact();
  Rational acc = 0;
  LogSum log_acc;
  for (const Site& s : lattice_sites_in_ball(b, bounding_window(b))) {
    if (sector_index(s, n) != j) continue;
    const Quantity wt = w.weight(s);
    if (exact) {
      acc += *wt.exact();
    } else {
      log_acc.add(wt.log());
    }
  }
  return exact ? Quantity::exact(acc) : Quantity::from_log(log_acc.value());
}

struct Theorem2Witness {
  std::vector<double> a;       // a_1 < a_2 < ...
  std::vector<int> j;          // j_n, n = 1..n_max
  std::vector<int> k;          // k_n (1-based into a)
  std::vector<Quantity> sector;      // mu(S_{k_n+, j_n}^{(n)})
  std::vector<Quantity> ball;        // mu(B_{a_{k_n}}(0,0))
  double phi0 = 0;
  double phi0_width = 0;  // width of the final dyadic interval
};

inline Theorem2Witness theorem2_sector_select(const Measure& mu, const std::vector<double>& a_list, int n_max,
                                              const QuadratureSpec& q) {
  if (!mu.is_discrete()) throw Error(ErrorCode::Unsupported, "sector selection is implemented for lattice measures");
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "n_max must be at least 1");
  if (a_list.empty()) throw Error(ErrorCode::SelectionFailed, "empty witness sequence");
  const Point origin = make_point(0.0, 0.0);
  std::vector<Quantity> inner;
  for (double a : a_list) inner.push_back(ball_mass(mu, make_ball(origin, a, MetricKind::Euclidean), q));

  Theorem2Witness w;
  w.a = a_list;
  std::vector<int> lambda(a_list.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = static_cast<int>(i) + 1;
  int parent = 1;
  int k_prev = 0;
  for (int n = 1; n <= n_max; ++n) {
    const Quantity share = Quantity::exact(pow2(-n));
    const int first = n == 1 ? 1 : 2 * parent - 1;
    std::optional<int> chosen;
    std::vector<int> chosen_lambda;
    for (int j = first; j <= first + 1; ++j) {
      std::vector<int> next;
      for (int k : lambda) {
        const auto idx = static_cast<std::size_t>(k - 1);
        if (sector_mass(mu, a_list[idx], n, j) >= share * inner[idx]) next.push_back(k);
      }
      const bool usable = std::any_of(next.begin(), next.end(), [&](int k) { return k > k_prev; });
      if (usable && (!chosen || next.size() > chosen_lambda.size())) {
        chosen = j;
        chosen_lambda = std::move(next);
      }
    }
    if (!chosen) {
      throw Error(ErrorCode::SelectionFailed,
                  "no sector at level " + std::to_string(n) + " meets the mass bound for an unused k");
    }
    const int k_n = *std::find_if(chosen_lambda.begin(), chosen_lambda.end(), [&](int k) { return k > k_prev; });
    const auto idx = static_cast<std::size_t>(k_n - 1);
    w.j.push_back(*chosen);
    w.k.push_back(k_n);
    w.sector.push_back(sector_mass(mu, a_list[idx], n, *chosen));
    w.ball.push_back(inner[idx]);
    lambda = std::move(chosen_lambda);
    parent = *chosen;
    k_prev = k_n;
  }
  const double width = 2 * std::numbers::pi / std::ldexp(1.0, n_max);
  w.phi0_width = width;
  w.phi0 = (w.j.back() - 0.5) * width;
  return w;
}

// ---------------------------------------------------------------------------
// test function

struct Theorem2Check {
  int n = 0;           // level (near checks) or N(r) (far checks)
  double radius = 0;
  Quantity value;
  Quantity bound;
  bool lower = true;   // value >= bound when true, value <= bound otherwise
  bool pass = false;
};

struct Theorem2Report {
  FunctionDescriptor f = BumpsF{};
  std::vector<Point> bump_centers;
  std::vector<Theorem2Check> near;
  std::vector<Theorem2Check> far;
  Quantity c_constant = Quantity::zero();
  double n_tilde = 0;
  int n0 = 2;
  bool pass = true;
};

namespace detail {

inline bool touches_zero_angle(const Theorem2Witness& w) {
  for (std::size_t i = 0; i < w.j.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (w.j[i] != 1 && w.j[i] != (1 << n)) return false;
  }
  return true;
}

}  // namespace detail

/// Builds f = sum_n 2^n mu(B_n)/mu(B_{n-}) 1_{B_{n-}} for n <= N and checks it.
/// Throws VerificationError if the witness no longer satisfies its invariants.
inline Theorem2Report theorem2_test_function(const Measure& mu, const Theorem2Witness& w, int N,
                                             const QuadratureSpec& q) {
  if (N < 0 || static_cast<std::size_t>(N) > w.k.size()) {
    throw Error(ErrorCode::InvalidArgument, "depth exceeds the witness length");
  }
  require_same_dim(mu.dim(), 2);
  const Point origin = mu.is_discrete() ? lattice_point(0, 0) : make_point(0.0, 0.0);
  auto ball_at = [](const Point& c, double r) { return make_ball(c, r, MetricKind::Euclidean); };

  for (int n = 1; n <= N; ++n) {
    const auto idx = static_cast<std::size_t>(n - 1);
    const int k = w.k[idx];
    const double a = w.a[static_cast<std::size_t>(k - 1)];
    const Quantity inner = ball_mass(mu, ball_at(origin, a), q);
    const Quantity outer = ball_mass(mu, ball_at(origin, a + 1), q);
    if (!(outer >= Quantity::exact(pow2(2L * k)) * inner)) {
      throw VerificationError(n, "mu(B_{a_k+1}) < 4^k mu(B_{a_k}) at k = " + std::to_string(k));
    }
    if (!(sector_mass(mu, a, n, w.j[idx]) >= Quantity::exact(pow2(-n)) * inner)) {
      throw VerificationError(n, "sector mass below 2^{-n} mu(B_{a_k})");
    }
  }

  Theorem2Report rep;
  // direction opposite to phi0; exactly the negative x-axis when phi0 rounds to 0
  const double psi = detail::touches_zero_angle(w) ? 0.0 : w.phi0;
  std::vector<Bump> bumps;
  std::vector<Quantity> big;
  for (int n = 1; n <= N; ++n) {
    const auto idx = static_cast<std::size_t>(n - 1);
    const double a = w.a[static_cast<std::size_t>(w.k[idx] - 1)];
    double cx = -(a - 2) * std::cos(psi);
    double cy = -(a - 2) * std::sin(psi);
    if (psi == 0.0) cy = 0.0;
    Point c = make_point(cx, cy);
    if (mu.is_discrete()) c = lattice_point(std::llround(cx), std::llround(cy));
    const Quantity bn = ball_mass(mu, ball_at(origin, a), q);
    const Quantity bminus = ball_mass(mu, ball_at(c, 0.5), q);
    bumps.push_back(Bump{c, Quantity::exact(pow2(n)) * bn / bminus});
    big.push_back(bn);
    rep.bump_centers.push_back(c);
  }
  rep.f = BumpsF{bumps};

  for (int n = 1; n <= N; ++n) {
    const double a = w.a[static_cast<std::size_t>(w.k[static_cast<std::size_t>(n - 1)] - 1)];
    const AverageRecord rec = ball_average(mu, rep.f, ball_at(origin, a - 1), q);
    Theorem2Check chk{n, a - 1, rec.average, Quantity::exact(pow2(n)), true, false};
    chk.pass = chk.value >= chk.bound;
    rep.pass = rep.pass && chk.pass;
    rep.near.push_back(chk);
  }

  // far point (3,0): C regime while N(r) < N0, bound 2 afterwards
  const Point far = mu.is_discrete() ? lattice_point(3, 0) : make_point(3.0, 0.0);
  auto level = [&](double r) {
    int out = 0;
    for (int n = 1; n <= N; ++n) {
      if (distance(MetricKind::Euclidean, far, rep.bump_centers[static_cast<std::size_t>(n - 1)]) < r + 0.5) out = n;
    }
    return out;
  };
  rep.n_tilde = N >= rep.n0
                    ? distance(MetricKind::Euclidean, far, rep.bump_centers[static_cast<std::size_t>(rep.n0 - 1)]) - 0.5
                    : std::numeric_limits<double>::infinity();
  double r_max = 4;
  for (const Point& c : rep.bump_centers) r_max = std::max(r_max, distance(MetricKind::Euclidean, far, c) + 4);
  if (N >= rep.n0) {
    rep.c_constant = ball_integral(mu, rep.f, ball_at(far, rep.n_tilde), q) / ball_mass(mu, ball_at(far, 2.0), q);
  } else {
    rep.c_constant = ball_integral(mu, rep.f, ball_at(far, r_max), q) / ball_mass(mu, ball_at(far, 2.0), q);
  }
  std::vector<double> radii;
  if (mu.is_discrete()) {
    for (double r : canonical_lattice_radii(MetricKind::Euclidean, 2, static_cast<std::int64_t>(std::ceil(r_max)))) {
      if (r > 2) radii.push_back(r);
    }
  } else {
    for (double r = 2.5; r <= r_max; r += 0.5) radii.push_back(r);
  }
  const Quantity two = Quantity::exact(Rational(2));
  for (double r : radii) {
    const AverageRecord rec = ball_average(mu, rep.f, ball_at(far, r), q);
    const bool c_regime = r <= rep.n_tilde;
    Theorem2Check chk{level(r), r, rec.average, c_regime ? rep.c_constant : two, false, false};
    chk.pass = chk.value <= chk.bound;
    rep.pass = rep.pass && chk.pass;
    rep.far.push_back(chk);
  }
  return rep;
}

/// Lattice measure failing the ratio condition: weight 2^{4^{k+1}} at (6 + 2k, 0), 1 elsewhere.
inline Measure theorem2_demo_measure(int heavy_points = 4) {
  std::map<Site, Quantity> table;
  for (int k = 1; k <= heavy_points; ++k) {
    table.emplace(Site{6 + 2 * k, 0}, Quantity::exact(pow2(1L << (2 * (k + 1)))));
  }
  return Measure::lattice_table(2, std::move(table));
}

}  // namespace hlmax
