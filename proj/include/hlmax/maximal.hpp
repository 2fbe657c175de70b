#pragma once

// Ball averages and truncated maximal functions.
//
// Centered: sup over B_r(x) for r in a finite schedule.
// Non-centered: sup over a finite ball family filtered to balls containing x.
// Lattice families with exact weights go through summed-area tables; every
// other family evaluates ball by ball. Argmax ties go to the smallest radius,
// then to the lexicographically smallest center.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/function.hpp"
#include "hlmax/geometry.hpp"
#include "hlmax/integrate.hpp"
#include "hlmax/measure.hpp"
#include "hlmax/numeric.hpp"
#include "hlmax/quadrature.hpp"

namespace hlmax {

struct AverageRecord {
  Ball ball;
  Quantity mass;
  Quantity integral;
  Quantity average;
  bool log_domain = false;
};

inline bool uses_log_domain(const Measure& mu, const QuadratureSpec& q) {
  if (q.log_domain || mu.log_domain()) return true;
  return mu.is_discrete() && !mu.discrete().exact();
}

template <class Real = double>
AverageRecord ball_average(const Measure& mu, const FunctionDescriptor& f, const BasicBall<Real>& b,
                           const QuadratureSpec& q) {
  AverageRecord rec;
  rec.ball = detail::to_double_ball(b);
  rec.mass = ball_mass(mu, b, q);
  rec.integral = ball_integral(mu, f, b, q);
  rec.average = rec.integral / rec.mass;
  rec.log_domain = uses_log_domain(mu, q) || (mu.is_discrete() && !f.exact_on_lattice());
  return rec;
}

// ---------------------------------------------------------------------------
// centered

struct CenteredResult {
  Quantity sup;
  double argmax_radius = 0;
  std::vector<AverageRecord> series;
};

inline void validate_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "radius list is empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0)) throw Error(ErrorCode::InvalidArgument, "radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(ErrorCode::InvalidArgument, "radii must increase strictly");
  }
}

inline CenteredResult centered_max_truncated(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                             const std::vector<double>& radii, MetricKind metric,
                                             const QuadratureSpec& q) {
  validate_radii(radii);
  require_same_dim(mu.dim(), x.dim);
  CenteredResult out;
  for (double r : radii) {
    out.series.push_back(ball_average(mu, f, make_ball(x, r, metric), q));
    const AverageRecord& rec = out.series.back();
    if (out.series.size() == 1 || rec.average > out.sup) {
      out.sup = rec.average;
      out.argmax_radius = r;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ball families

/// Balls B_r(x) for r in `radii`.
struct CenteredFamily {
  std::vector<double> radii;
  MetricKind metric = MetricKind::Euclidean;
};

/// Every lattice ball with center in `window` and canonical radius <= max_radius.
struct DiscreteFamily {
  IntBox window;
  std::int64_t max_radius = 1;
  MetricKind metric = MetricKind::Supremum;
};

/// Intervals (a, b) with a, b drawn from the endpoint grid (1-D only).
struct EndpointFamily {
  std::vector<double> endpoints;
};

struct RealBox {
  double x_lo = 0;
  double x_hi = 0;
  double y_lo = 0;
  double y_hi = 0;
};

/// Centers on a square grid inside `box`, radii from a list. Lower bound only.
struct GridFamily {
  double spacing = 1;
  RealBox box;
  std::vector<double> radii;
  MetricKind metric = MetricKind::Euclidean;
};

using BallFamily = std::variant<CenteredFamily, DiscreteFamily, EndpointFamily, GridFamily>;

/// Endpoints at integer offsets out to `span` plus a geometric refinement
/// x +- 2^{-j}, j = 1..levels.
inline std::vector<double> refined_endpoint_grid(double x, double span, int levels) {
  std::vector<double> out;
  for (double t = std::ceil(x - span); t <= x + span; t += 1) {
    if (t != x) out.push_back(t);
  }
  for (int j = 1; j <= levels; ++j) {
    out.push_back(x - std::ldexp(1.0, -j));
    out.push_back(x + std::ldexp(1.0, -j));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ProfileEntry {
  double radius = 0;
  AverageRecord best;
};

/// Best average per radius over the balls of a family that contain x.
struct RadiusProfile {
  std::vector<ProfileEntry> entries;  // increasing radius
  std::size_t balls = 0;
  bool lower_bound_only = false;
};

struct NoncenteredOptions {
  /// Deliberately shifts the summed-area lookups; negative control only.
  bool corrupt_fast_path = false;
};

namespace detail {

inline bool center_less(const Point& a, const Point& b) {
  if (a[0] != b[0]) return a[0] < b[0];
  return a[1] < b[1];
}

/// Folds a candidate into a per-radius map under the (average, radius, center) order.
inline void offer(std::map<double, AverageRecord>& best, const AverageRecord& rec) {
  auto [it, inserted] = best.try_emplace(rec.ball.radius, rec);
  if (inserted) return;
  const auto c = compare(rec.average, it->second.average);
  if (c > 0 || (c == 0 && center_less(rec.ball.center, it->second.ball.center))) it->second = rec;
}

inline RadiusProfile to_profile(std::map<double, AverageRecord> best, std::size_t balls, bool lower_only) {
  RadiusProfile p;
  p.balls = balls;
  p.lower_bound_only = lower_only;
  for (auto& [r, rec] : best) p.entries.push_back(ProfileEntry{r, std::move(rec)});
  return p;
}

inline std::int64_t isqrt(std::int64_t s) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(s)));
  while (r * r > s) --r;
  while ((r + 1) * (r + 1) <= s) ++r;
  return r;
}

/// Inclusive 2-D prefix sums over an integer rectangle.
class SummedArea {
 public:
  SummedArea(std::int64_t n_lo, std::int64_t n_hi, std::int64_t m_lo, std::int64_t m_hi)
      : n_lo_(n_lo), m_lo_(m_lo), rows_(n_hi - n_lo + 2), cols_(m_hi - m_lo + 2),
        data_(static_cast<std::size_t>(rows_ * cols_), Rational(0)) {}

  template <class Cell>
  void fill(const Cell& cell) {
    for (std::int64_t i = 1; i < rows_; ++i) {
      for (std::int64_t j = 1; j < cols_; ++j) {
        at(i, j) = cell(Site{n_lo_ + i - 1, m_lo_ + j - 1}) + at(i - 1, j) + at(i, j - 1) - at(i - 1, j - 1);
      }
    }
  }

  /// Sum over n in [n0, n1], m in [m0, m1] (clamped to the table).
  Rational sum(std::int64_t n0, std::int64_t n1, std::int64_t m0, std::int64_t m1) const {
    const std::int64_t i0 = std::max<std::int64_t>(n0 - n_lo_, 0);
    const std::int64_t i1 = std::min<std::int64_t>(n1 - n_lo_ + 1, rows_ - 1);
    const std::int64_t j0 = std::max<std::int64_t>(m0 - m_lo_, 0);
    const std::int64_t j1 = std::min<std::int64_t>(m1 - m_lo_ + 1, cols_ - 1);
    if (i0 >= i1 || j0 >= j1) return Rational(0);
    return at(i1, j1) - at(i0, j1) - at(i1, j0) + at(i0, j0);
  }

 private:
  Rational& at(std::int64_t i, std::int64_t j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Rational& at(std::int64_t i, std::int64_t j) const {
    return data_[static_cast<std::size_t>(i * cols_ + j)];
  }

  std::int64_t n_lo_;
  std::int64_t m_lo_;
  std::int64_t rows_;
  std::int64_t cols_;
  std::vector<Rational> data_;
};

inline RadiusProfile discrete_fast_profile(const DiscreteWeights& w, const FunctionDescriptor& f, const Point& x,
                                           const DiscreteFamily& fam, const NoncenteredOptions& opt) {
  const int dim = w.dim;
  const std::int64_t pad = fam.max_radius + 1;
  const std::int64_t m_pad = dim == 2 ? pad : 0;
  SummedArea mass(fam.window.lo[0] - pad, fam.window.hi[0] + pad, fam.window.m_lo() - m_pad,
                  fam.window.m_hi() + m_pad);
  SummedArea integral = mass;
  mass.fill([&](const Site& s) { return *w.weight(s).exact(); });
  integral.fill([&](const Site& s) {
    const Quantity v = f.at_site(s, dim);
    return v.is_zero() ? Rational(0) : Rational(*w.weight(s).exact() * *v.exact());
  });
  const std::int64_t skew = opt.corrupt_fast_path ? 1 : 0;

  std::map<double, AverageRecord> best;
  std::size_t balls = 0;
  for (double r : canonical_lattice_radii(fam.metric, dim, fam.max_radius)) {
    const std::int64_t reach = lattice_reach(fam.metric, r);
    std::optional<Rational> best_i;
    std::optional<Rational> best_m;
    Site best_c;
    for (std::int64_t n = fam.window.lo[0]; n <= fam.window.hi[0]; ++n) {
      for (std::int64_t m = fam.window.m_lo(); m <= fam.window.m_hi(); ++m) {
        const Site c{n, m};
        if (!ball_contains(Ball{lattice_point(c, dim), r, fam.metric}, x)) continue;
        ++balls;
        Rational sm = 0;
        Rational si = 0;
        if (fam.metric == MetricKind::Supremum || dim == 1) {
          const std::int64_t t = fam.metric == MetricKind::Supremum ? reach : isqrt(reach);
          const std::int64_t tm = dim == 2 ? t : 0;
          sm = mass.sum(n - t, n + t + skew, m - tm, m + tm);
          si = integral.sum(n - t, n + t + skew, m - tm, m + tm);
        } else {
          const std::int64_t rows = isqrt(reach);
          for (std::int64_t dm = -rows; dm <= rows; ++dm) {
            const std::int64_t half = isqrt(reach - dm * dm) + (dm == 0 ? skew : 0);
            sm += mass.sum(n - half, n + half, m + dm, m + dm);
            si += integral.sum(n - half, n + half, m + dm, m + dm);
          }
        }
        // strict improvement only; centers arrive in lexicographic order
        if (!best_i || si * *best_m > *best_i * sm) {
          best_i = std::move(si);
          best_m = std::move(sm);
          best_c = c;
        }
      }
    }
    if (!best_i) continue;
    AverageRecord rec;
    rec.ball = Ball{lattice_point(best_c, dim), r, fam.metric};
    rec.mass = Quantity::exact(*best_m);
    rec.integral = Quantity::exact(*best_i);
    rec.average = rec.integral / rec.mass;
    best.emplace(r, std::move(rec));
  }
  return to_profile(std::move(best), balls, false);
}

inline RadiusProfile discrete_generic_profile(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                              const DiscreteFamily& fam, const QuadratureSpec& q) {
  const int dim = mu.dim();
  std::map<double, AverageRecord> best;
  std::size_t balls = 0;
  for (double r : canonical_lattice_radii(fam.metric, dim, fam.max_radius)) {
    for (std::int64_t n = fam.window.lo[0]; n <= fam.window.hi[0]; ++n) {
      for (std::int64_t m = fam.window.m_lo(); m <= fam.window.m_hi(); ++m) {
        const Ball b{lattice_point(Site{n, m}, dim), r, fam.metric};
        if (!ball_contains(b, x)) continue;
        ++balls;
        offer(best, ball_average(mu, f, b, q));
      }
    }
  }
  return to_profile(std::move(best), balls, false);
}

inline RadiusProfile endpoint_profile(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                      const EndpointFamily& fam, const QuadratureSpec& q) {
  if (mu.dim() != 1) throw Error(ErrorCode::DimensionMismatch, "endpoint families live on the line");
  std::vector<double> e = fam.endpoints;
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::map<double, AverageRecord> best;
  std::size_t balls = 0;
  auto interval = [](double a, double b) { return Ball{make_point((a + b) / 2), (b - a) / 2, MetricKind::Euclidean}; };

  if (mu.is_discrete()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        if (!(e[i] < x[0] && x[0] < e[j])) continue;
        const Ball b = interval(e[i], e[j]);
        ++balls;
        offer(best, ball_average(mu, f, b, q));
      }
    }
    return to_profile(std::move(best), balls, false);
  }

  // continuous: integrate each gap once, then combine gaps in log domain
  std::vector<double> piece_mass(e.size(), kLogZero);
  std::vector<double> piece_int(e.size(), kLogZero);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const Ball b = interval(e[i], e[i + 1]);
    auto one = [](const Point&) { return 0.0; };
    auto log_f = [&f](const Point& p) { return f.log_at(p); };
    piece_mass[i] = detail::continuous_ball_integral<double>(mu, b, one, {}, {}, q);
    piece_int[i] = detail::continuous_ball_integral<double>(mu, b, log_f, f.breakpoints(0), {}, q);
  }
  const bool log_dom = uses_log_domain(mu, q);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!(e[i] < x[0])) break;
    double lm = kLogZero;
    double li = kLogZero;
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      lm = log_add(lm, piece_mass[j - 1]);
      li = log_add(li, piece_int[j - 1]);
      if (!(x[0] < e[j])) continue;
      if (lm == kLogZero) throw Error(ErrorCode::NonpositiveMass, "interval has zero mass");
      ++balls;
      AverageRecord rec;
      rec.ball = interval(e[i], e[j]);
      rec.mass = Quantity::from_log(lm);
      rec.integral = Quantity::from_log(li);
      rec.average = rec.integral / rec.mass;
      rec.log_domain = log_dom;
      offer(best, rec);
    }
  }
  return to_profile(std::move(best), balls, false);
}

inline RadiusProfile grid_profile(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                  const GridFamily& fam, const QuadratureSpec& q) {
  if (!(fam.spacing > 0)) throw Error(ErrorCode::InvalidArgument, "grid spacing must be positive");
  validate_radii(fam.radii);
  const int dim = mu.dim();
  std::map<double, AverageRecord> best;
  std::size_t balls = 0;
  const auto steps = [&](double lo, double hi) { return static_cast<std::int64_t>(std::floor((hi - lo) / fam.spacing)); };
  const std::int64_t nx = steps(fam.box.x_lo, fam.box.x_hi);
  const std::int64_t ny = dim == 2 ? steps(fam.box.y_lo, fam.box.y_hi) : 0;
  for (double r : fam.radii) {
    for (std::int64_t i = 0; i <= nx; ++i) {
      for (std::int64_t j = 0; j <= ny; ++j) {
        const double cx = fam.box.x_lo + static_cast<double>(i) * fam.spacing;
        const Point c = dim == 2 ? make_point(cx, fam.box.y_lo + static_cast<double>(j) * fam.spacing) : make_point(cx);
        const Ball b{c, r, fam.metric};
        if (!ball_contains(b, x)) continue;
        ++balls;
        offer(best, ball_average(mu, f, b, q));
      }
    }
  }
  return to_profile(std::move(best), balls, true);
}

}  // namespace detail

inline RadiusProfile noncentered_profile(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                         const BallFamily& fam, const QuadratureSpec& q,
                                         const NoncenteredOptions& opt = {}) {
  require_same_dim(mu.dim(), x.dim);
  RadiusProfile p;
  if (const auto* c = std::get_if<CenteredFamily>(&fam)) {
    const CenteredResult res = centered_max_truncated(mu, f, x, c->radii, c->metric, q);
    p.balls = res.series.size();
    for (const AverageRecord& rec : res.series) p.entries.push_back(ProfileEntry{rec.ball.radius, rec});
  } else if (const auto* d = std::get_if<DiscreteFamily>(&fam)) {
    if (!mu.is_discrete()) throw Error(ErrorCode::InvalidArgument, "lattice family needs a lattice measure");
    require_same_dim(d->window.dim, mu.dim());
    if (d->max_radius < 1 || d->window.empty()) throw Error(ErrorCode::InvalidArgument, "empty lattice family");
    if (exact_lattice_arithmetic(mu.discrete(), &f, q)) {
      p = detail::discrete_fast_profile(mu.discrete(), f, x, *d, opt);
    } else {
      p = detail::discrete_generic_profile(mu, f, x, *d, q);
    }
  } else if (const auto* e = std::get_if<EndpointFamily>(&fam)) {
    p = detail::endpoint_profile(mu, f, x, *e, q);
  } else {
    p = detail::grid_profile(mu, f, x, std::get<GridFamily>(fam), q);
  }
  if (p.entries.empty()) throw Error(ErrorCode::EmptyFamily, "no ball of the family contains the query point");
  return p;
}

struct NoncenteredResult {
  Quantity sup;
  AverageRecord best;
  std::size_t balls = 0;
  bool lower_bound_only = false;
};

/// Sup over the profile entries with radius <= cutoff (all entries by default).
inline NoncenteredResult profile_max(const RadiusProfile& p, std::optional<double> cutoff = std::nullopt) {
  NoncenteredResult out;
  out.balls = p.balls;
  out.lower_bound_only = p.lower_bound_only;
  bool any = false;
  for (const ProfileEntry& e : p.entries) {
    if (cutoff && e.radius > *cutoff) break;
    if (!any || e.best.average > out.sup) {
      out.sup = e.best.average;
      out.best = e.best;
      any = true;
    }
  }
  if (!any) throw Error(ErrorCode::EmptyFamily, "no ball within the cutoff contains the query point");
  return out;
}

inline NoncenteredResult noncentered_max_truncated(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                                   const BallFamily& fam, const QuadratureSpec& q,
                                                   const NoncenteredOptions& opt = {}) {
  return profile_max(noncentered_profile(mu, f, x, fam, q, opt));
}

// ---------------------------------------------------------------------------
// oracle

struct BruteForceResult {
  Quantity sup;
  Ball argmax;
  std::size_t balls = 0;
};

/// Naive enumeration of every (center, canonical radius) pair; no tables, no pruning.
inline BruteForceResult brute_force_discrete_max(const Measure& mu, const FunctionDescriptor& f, const Point& x,
                                                 const IntBox& window, std::int64_t max_radius,
                                                 MetricKind metric = MetricKind::Supremum) {
  if (!mu.is_discrete()) throw Error(ErrorCode::InvalidArgument, "brute force needs a lattice measure");
  const DiscreteWeights& w = mu.discrete();
  const int dim = w.dim;
  require_same_dim(dim, x.dim);
  const bool exact = w.exact() && f.exact_on_lattice();
  BruteForceResult out;
  bool any = false;
  for (std::int64_t n = window.lo[0]; n <= window.hi[0]; ++n) {
    for (std::int64_t m = window.m_lo(); m <= window.m_hi(); ++m) {
      for (double r : canonical_lattice_radii(metric, dim, max_radius)) {
        const Ball b{lattice_point(Site{n, m}, dim), r, metric};
        if (!ball_contains(b, x)) continue;
        ++out.balls;
        Quantity mass = exact ? Quantity::zero() : Quantity::from_log(kLogZero);
        Quantity integral = mass;
        for (const Site& s : lattice_sites_in_ball(b, bounding_window(b))) {
          const Quantity wt = exact ? w.weight(s) : w.weight(s).as_log();
          const Quantity v = exact ? f.at_site(s, dim) : f.at_site(s, dim).as_log();
          mass = mass + wt;
          integral = integral + wt * v;
        }
        const Quantity avg = integral / mass;
        bool take = !any;
        if (any) {
          const auto c = compare(avg, out.sup);
          take = c > 0 || (c == 0 && (r < out.argmax.radius ||
                                      (r == out.argmax.radius && detail::center_less(b.center, out.argmax.center))));
        }
        if (take) {
          out.sup = avg;
          out.argmax = b;
          any = true;
        }
      }
    }
  }
  if (!any) throw Error(ErrorCode::EmptyFamily, "no ball of the window contains the query point");
  return out;
}

// ---------------------------------------------------------------------------
// oscillation

/// (1/mu(B)) * integral over B of |f(y) - f(x)| d mu(y).
inline Quantity oscillation_average(const Measure& mu, const FunctionDescriptor& f, const Ball& b, const Point& x,
                                    const QuadratureSpec& q) {
  require_same_dim(mu.dim(), x.dim);
  const Quantity mass = ball_mass(mu, b, q);
  if (mu.is_discrete()) {
    const DiscreteWeights& w = mu.discrete();
    const Point xs = x;
    const Quantity fx = f.value_at(xs);
    const bool exact = exact_lattice_arithmetic(w, &f, q) && fx.is_exact();
    const Quantity fx_used = exact ? fx : fx.as_log();
    const Quantity total = detail::lattice_sum(w, b, exact, [&](const Site& s) {
      const Quantity v = f.at_site(s, w.dim);
      return abs_diff(exact ? v : v.as_log(), fx_used);
    });
    return total / (exact ? mass : mass.as_log());
  }
  const double lfx = f.log_at(x);
  auto log_osc = [&](const Point& p) { return log_abs_diff(f.log_at(p), lfx); };
  const double li = detail::continuous_ball_integral<double>(mu, b, log_osc, f.breakpoints(0), f.breakpoints(1), q);
  return Quantity::from_log(li) / mass;
}

}  // namespace hlmax
