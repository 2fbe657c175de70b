#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature on intervals, with a
// log-domain cell rule so integrands such as e^{x^2} at x = 60 stay finite.
// Results are always reported as logs.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/numeric.hpp"

namespace hlmax {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_depth = 40;
  bool log_domain = false;

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    if (max_depth < 1) throw Error(ErrorCode::InvalidArgument, "max_depth must be at least 1");
  }

  QuadratureSpec with_log_domain(bool on = true) const {
    QuadratureSpec q = *this;
    q.log_domain = on;
    return q;
  }
};

struct QuadratureResult {
  double log_value = kLogZero;
  double log_error = kLogZero;
  int cells = 0;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class Real>
struct Cell {
  Real a;
  Real b;
  double log_value;
  double log_error;
  int depth;
};

/// One GK15 cell on exp(g): shift by the max sample so nothing overflows.
template <class Real, class LogIntegrand>
Cell<Real> log_cell(const LogIntegrand& g, Real a, Real b, int depth) {
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  std::array<double, 15> samples{};
  samples[7] = g(mid);
  for (int i = 0; i < 7; ++i) {
    const Real off = half * Real(kKronrodNodes[static_cast<std::size_t>(i)]);
    samples[static_cast<std::size_t>(i)] = g(Real(mid - off));
    samples[static_cast<std::size_t>(14 - i)] = g(Real(mid + off));
  }
  double shift = kLogZero;
  for (double s : samples) {
    if (std::isnan(s)) throw Error(ErrorCode::InvalidArgument, "integrand returned NaN");
    shift = std::max(shift, s);
  }
  if (shift == kLogZero) return Cell<Real>{a, b, kLogZero, kLogZero, depth};
  double kronrod = kKronrodWeights[7] * std::exp(samples[7] - shift);
  double gauss = kGaussWeights[3] * std::exp(samples[7] - shift);
  for (int i = 0; i < 7; ++i) {
    const double pair = std::exp(samples[static_cast<std::size_t>(i)] - shift) +
                        std::exp(samples[static_cast<std::size_t>(14 - i)] - shift);
    kronrod += kKronrodWeights[static_cast<std::size_t>(i)] * pair;
    if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * pair;
  }
  const double log_half = std::log(static_cast<double>(half));
  const double diff = std::abs(kronrod - gauss);
  double log_error = diff > 0 ? shift + std::log(diff) + log_half : kLogZero;
  // GK15 never samples the endpoints; a steep rise there would go unseen
  const double edge = std::max(g(a), g(b));
  if (edge > shift + std::numbers::ln2) log_error = std::max(log_error, edge + log_half);
  return Cell<Real>{a, b, shift + std::log(kronrod) + log_half, log_error, depth};
}

/// One GK15 cell on a plain (linear-domain) integrand.
template <class Real, class Integrand>
Cell<Real> linear_cell(const Integrand& f, Real a, Real b, int depth) {
  const Real mid = (a + b) / 2;
  const Real half = (b - a) / 2;
  const double fc = f(mid);
  double kronrod = kKronrodWeights[7] * fc;
  double gauss = kGaussWeights[3] * fc;
  double peak = fc;
  for (int i = 0; i < 7; ++i) {
    const Real off = half * Real(kKronrodNodes[static_cast<std::size_t>(i)]);
    const double lo = f(Real(mid - off));
    const double hi = f(Real(mid + off));
    peak = std::max({peak, lo, hi});
    kronrod += kKronrodWeights[static_cast<std::size_t>(i)] * (lo + hi);
    if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * (lo + hi);
  }
  const double h = static_cast<double>(half);
  const double value = kronrod * h;
  double err = std::abs(kronrod - gauss) * h;
  const double edge = std::max(f(a), f(b));
  if (edge > 2 * peak) err = std::max(err, edge * h);
  if (!std::isfinite(value) || !std::isfinite(err)) {
    throw Error(ErrorCode::QuadratureNonconvergence, "linear-domain integrand overflowed; use log domain");
  }
  if (value < 0) throw Error(ErrorCode::InvalidArgument, "integrand must be nonnegative");
  return Cell<Real>{a, b, value > 0 ? std::log(value) : kLogZero, err > 0 ? std::log(err) : kLogZero, depth};
}

template <class Real, class CellRule>
QuadratureResult adaptive(const CellRule& rule, Real a, Real b, std::vector<Real> breaks, const QuadratureSpec& q) {
  q.validate();
  if (!(a < b)) return {};
  std::vector<Real> edges{a};
  std::sort(breaks.begin(), breaks.end());
  for (const Real& t : breaks) {
    if (t > edges.back() && t < b) edges.push_back(t);
  }
  edges.push_back(b);

  std::vector<Cell<Real>> cells;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) cells.push_back(rule(edges[i], edges[i + 1], 0));

  const double log_abs = std::log(q.abs_tol);
  const double log_rel = std::log(q.rel_tol);
  for (;;) {
    LogSum value;
    LogSum error;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      value.add(cells[i].log_value);
      error.add(cells[i].log_error);
      if (cells[i].log_error > cells[worst].log_error) worst = i;
    }
    const double tol = std::max(log_abs, log_rel + value.value());
    if (error.value() <= tol) {
      return QuadratureResult{value.value(), error.value(), static_cast<int>(cells.size())};
    }
    const Cell<Real> bad = cells[worst];
    if (bad.depth >= q.max_depth) {
      throw Error(ErrorCode::QuadratureNonconvergence,
                  "max_depth " + std::to_string(q.max_depth) + " exhausted before tolerance was met");
    }
    const Real mid = (bad.a + bad.b) / 2;
    cells[worst] = rule(bad.a, mid, bad.depth + 1);
    cells.push_back(rule(mid, bad.b, bad.depth + 1));
  }
}

}  // namespace detail

/// Integrates exp(g(t)) over [a, b]; g returns the log of the integrand.
template <class Real, class LogIntegrand>
QuadratureResult integrate_log(const LogIntegrand& g, Real a, Real b, std::vector<Real> breaks,
                               const QuadratureSpec& q) {
  auto rule = [&g](Real lo, Real hi, int depth) { return detail::log_cell<Real>(g, lo, hi, depth); };
  return detail::adaptive<Real>(rule, a, b, std::move(breaks), q);
}

/// Integrates a nonnegative f(t) over [a, b] in plain double arithmetic.
template <class Real, class Integrand>
QuadratureResult integrate_linear(const Integrand& f, Real a, Real b, std::vector<Real> breaks,
                                  const QuadratureSpec& q) {
  auto rule = [&f](Real lo, Real hi, int depth) { return detail::linear_cell<Real>(f, lo, hi, depth); };
  return detail::adaptive<Real>(rule, a, b, std::move(breaks), q);
}

/// Dispatches on q.log_domain; the integrand is always supplied as a log.
template <class Real, class LogIntegrand>
QuadratureResult integrate(const LogIntegrand& g, Real a, Real b, std::vector<Real> breaks, const QuadratureSpec& q) {
  if (q.log_domain) return integrate_log<Real>(g, a, b, std::move(breaks), q);
  auto linear = [&g](Real t) {
    const double lg = g(t);
    return lg == kLogZero ? 0.0 : std::exp(lg);
  };
  return integrate_linear<Real>(linear, a, b, std::move(breaks), q);
}

}  // namespace hlmax
