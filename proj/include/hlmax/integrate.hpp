#pragma once

// mu(B) and the integral of |f| over B, for every measure family.
//
// Lattice measures are summed exactly (GMP rationals) unless a weight or
// value is only known in log form or log domain is requested. Continuous
// measures use adaptive quadrature: directly on intervals, iterated on disks
// (outer angle substitution y = c_y + r sin(t) keeps the integrand smooth at
// the rim) and squares, and parametrically on segments after analytic
// clipping against the ball.

#include <cmath>
#include <functional>
#include <numbers>
#include <type_traits>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/function.hpp"
#include "hlmax/geometry.hpp"
#include "hlmax/measure.hpp"
#include "hlmax/numeric.hpp"
#include "hlmax/quadrature.hpp"

namespace hlmax {

/// Whether lattice sums for (mu, f) can be carried out exactly under q.
inline bool exact_lattice_arithmetic(const DiscreteWeights& w, const FunctionDescriptor* f, const QuadratureSpec& q) {
  if (q.log_domain) return false;
  if (!w.exact()) return false;
  return f == nullptr || f->exact_on_lattice();
}

namespace detail {

/// Sum of weight(s) * value(s) over the lattice sites of a ball.
template <class SiteValue>
Quantity lattice_sum(const DiscreteWeights& w, const Ball& ball, bool exact, const SiteValue& value) {
  require_same_dim(w.dim, ball.dim());
  const auto sites = lattice_sites_in_ball(ball, bounding_window(ball));
  if (sites.empty()) throw Error(ErrorCode::EmptyBall, "ball contains no lattice point");
  if (exact) {
    Rational acc = 0;
    for (const Site& s : sites) {
      const Quantity v = value(s);
      if (v.is_zero()) continue;
      acc += *w.weight(s).exact() * *v.exact();
    }
    return Quantity::exact(std::move(acc));
  }
  LogSum acc;
  for (const Site& s : sites) acc.add(w.weight(s).log() + value(s).log());
  return Quantity::from_log(acc.value());
}

template <class Real>
std::vector<Real> to_real(const std::vector<double>& v) {
  return std::vector<Real>(v.begin(), v.end());
}

/// Full-dimensional component: integral of exp(log_f + log_density) over the ball.
template <class Real, class LogF>
double integrate_full(const Density& density, const BasicBall<Real>& ball, const LogF& log_f,
                      const std::vector<double>& x_breaks, const std::vector<double>& y_breaks,
                      const QuadratureSpec& q) {
  using std::asin;
  using std::cos;
  using std::log;
  using std::sin;
  const Real r = ball.radius;
  const Real cx = ball.center[0];
  auto log_integrand = [&](const BasicPoint<Real>& p) {
    const double lf = log_f(p);
    return lf == kLogZero ? kLogZero : lf + log_density(density, p);
  };

  if (ball.dim() == 1) {
    auto g = [&](Real x) { return log_integrand(make_point<Real>(x)); };
    return integrate<Real>(g, cx - r, cx + r, to_real<Real>(x_breaks), q).log_value;
  }

  const Real cy = ball.center[1];
  // inner integral across the chord at height y, half-width `half`
  auto row = [&](Real y, Real half) {
    if (!(half > 0)) return kLogZero;
    auto g = [&](Real x) { return log_integrand(make_point<Real>(x, y)); };
    return integrate<Real>(g, cx - half, cx + half, to_real<Real>(x_breaks), q).log_value;
  };

  if (ball.metric == MetricKind::Supremum) {
    auto outer = [&](Real y) { return row(y, r); };
    return integrate<Real>(outer, cy - r, cy + r, to_real<Real>(y_breaks), q).log_value;
  }

  const Real quarter = Real(std::numbers::pi / 2);
  std::vector<Real> theta_breaks;
  for (double yb : y_breaks) {
    const Real rel = (Real(yb) - cy) / r;
    if (rel > -1 && rel < 1) theta_breaks.push_back(asin(rel));
  }
  auto outer = [&](Real theta) {
    const Real half = r * cos(theta);
    const double inner = row(Real(cy + r * sin(theta)), half);
    return inner == kLogZero ? kLogZero : inner + static_cast<double>(log(half));
  };
  return integrate<Real>(outer, Real(-quarter), quarter, std::move(theta_breaks), q).log_value;
}

/// Segment component: clip [a, b] against the ball, then integrate along it.
template <class Real, class LogF>
double integrate_segment(const Segment& seg, const Density& density, const BasicBall<Real>& ball, const LogF& log_f,
                         const std::vector<double>& x_breaks, const std::vector<double>& y_breaks,
                         const QuadratureSpec& q) {
  using std::abs;
  using std::sqrt;
  const int dim = ball.dim();
  const BasicPoint<Real> a = point_cast<Real>(seg.a);
  BasicPoint<Real> dir = a;
  Real len2 = 0;
  for (int i = 0; i < dim; ++i) {
    dir[i] = Real(seg.b[i]) - a[i];
    len2 += dir[i] * dir[i];
  }
  Real t0 = 0;
  Real t1 = 1;
  if (ball.metric == MetricKind::Euclidean || dim == 1) {
    // perpendicular-foot form: stays accurate when the segment barely grazes the ball
    Real dot = 0;
    for (int i = 0; i < dim; ++i) dot += dir[i] * (ball.center[i] - a[i]);
    const Real t_star = dot / len2;
    Real h2 = 0;
    for (int i = 0; i < dim; ++i) {
      const Real off = ball.center[i] - (a[i] + t_star * dir[i]);
      h2 += off * off;
    }
    const Real gap = ball.radius * ball.radius - h2;
    if (!(gap > 0)) return kLogZero;
    const Real reach = sqrt(gap / len2);
    t0 = std::max(t0, Real(t_star - reach));
    t1 = std::min(t1, Real(t_star + reach));
  } else {
    for (int i = 0; i < dim; ++i) {
      if (dir[i] == 0) {
        if (!(abs(a[i] - ball.center[i]) < ball.radius)) return kLogZero;
        continue;
      }
      Real lo = (ball.center[i] - ball.radius - a[i]) / dir[i];
      Real hi = (ball.center[i] + ball.radius - a[i]) / dir[i];
      if (hi < lo) std::swap(lo, hi);
      t0 = std::max(t0, lo);
      t1 = std::min(t1, hi);
    }
  }
  if (!(t0 < t1)) return kLogZero;

  std::vector<Real> t_breaks;
  const std::vector<double>* axis_breaks[2] = {&x_breaks, &y_breaks};
  for (int i = 0; i < dim; ++i) {
    if (dir[i] == 0) continue;
    for (double b : *axis_breaks[i]) t_breaks.push_back((Real(b) - a[i]) / dir[i]);
  }
  const double log_len = static_cast<double>(std::log(static_cast<double>(len2))) / 2;
  auto g = [&](Real t) {
    BasicPoint<Real> p = a;
    for (int i = 0; i < dim; ++i) p[i] = a[i] + t * dir[i];
    const double lf = log_f(p);
    return lf == kLogZero ? kLogZero : lf + log_density(density, p) + log_len;
  };
  return integrate<Real>(g, t0, t1, std::move(t_breaks), q).log_value;
}

/// Integral of exp(log_f) d(mu) over a ball of a continuous measure.
template <class Real, class LogF>
double continuous_ball_integral(const Measure& mu, const BasicBall<Real>& ball, const LogF& log_f,
                                const std::vector<double>& x_breaks, const std::vector<double>& y_breaks,
                                const QuadratureSpec& q_in) {
  QuadratureSpec q = q_in;
  q.log_domain = q_in.log_domain || mu.log_domain();
  if (const auto* w = std::get_if<WeightedLebesgue>(&mu.variant())) {
    return integrate_full<Real>(w->density, ball, log_f, x_breaks, y_breaks, q);
  }
  const auto& mixed = std::get<Mixed>(mu.variant());
  LogSum acc;
  for (const MixedComponent& c : mixed.components) {
    if (std::holds_alternative<FullSpace>(c.support)) {
      acc.add(integrate_full<Real>(c.density, ball, log_f, x_breaks, y_breaks, q));
    } else {
      acc.add(integrate_segment<Real>(std::get<Segment>(c.support), c.density, ball, log_f, x_breaks, y_breaks, q));
    }
  }
  return acc.value();
}

template <class Real>
Ball to_double_ball(const BasicBall<Real>& b) {
  return Ball{point_cast<double>(b.center), static_cast<double>(b.radius), b.metric};
}

}  // namespace detail

template <class Real = double>
Quantity ball_mass(const Measure& mu, const BasicBall<Real>& ball, const QuadratureSpec& q) {
  require_same_dim(mu.dim(), ball.dim());
  if (mu.is_discrete()) {
    const auto& w = mu.discrete();
    return detail::lattice_sum(w, detail::to_double_ball(ball), exact_lattice_arithmetic(w, nullptr, q),
                               [](const Site&) { return Quantity::one(); });
  }
  auto one = [](const BasicPoint<Real>&) { return 0.0; };
  const double lv = detail::continuous_ball_integral<Real>(mu, ball, one, {}, {}, q);
  if (lv == kLogZero) throw Error(ErrorCode::NonpositiveMass, "ball has zero mass");
  return Quantity::from_log(lv);
}

template <class Real = double>
Quantity ball_integral(const Measure& mu, const FunctionDescriptor& f, const BasicBall<Real>& ball,
                       const QuadratureSpec& q) {
  require_same_dim(mu.dim(), ball.dim());
  if (mu.is_discrete()) {
    const auto& w = mu.discrete();
    const int dim = w.dim;
    return detail::lattice_sum(w, detail::to_double_ball(ball), exact_lattice_arithmetic(w, &f, q),
                               [&](const Site& s) { return f.at_site(s, dim); });
  }
  auto log_f = [&f](const BasicPoint<Real>& p) { return f.log_at(p); };
  return Quantity::from_log(detail::continuous_ball_integral<Real>(mu, ball, log_f, f.breakpoints(0),
                                                                   f.breakpoints(1), q));
}

/// Lebesgue measure of a Euclidean ball in R^d (used by analytic bounds).
inline double euclidean_ball_volume(int dim, double radius) {
  return dim == 1 ? 2 * radius : std::numbers::pi * radius * radius;
}

}  // namespace hlmax
