#pragma once

// Points, metrics and open balls on R^d / Z^d for d in {1, 2}.

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "hlmax/error.hpp"

namespace hlmax {

enum class MetricKind { Euclidean, Supremum };

inline std::string to_string(MetricKind m) { return m == MetricKind::Euclidean ? "euclidean" : "supremum"; }

/// Integer coordinates of a lattice point; unused trailing coordinate is 0.
struct Site {
  std::int64_t n = 0;
  std::int64_t m = 0;
  auto operator<=>(const Site&) const = default;
};

template <class Real = double>
struct BasicPoint {
  std::array<Real, 2> coords{};
  int dim = 1;
  bool lattice = false;

  const Real& operator[](int i) const { return coords[static_cast<std::size_t>(i)]; }
  Real& operator[](int i) { return coords[static_cast<std::size_t>(i)]; }

  Site site() const {
    if (!lattice) throw Error(ErrorCode::InvalidArgument, "point is not a lattice point");
    return Site{static_cast<std::int64_t>(coords[0]), dim == 2 ? static_cast<std::int64_t>(coords[1]) : 0};
  }

  friend bool operator==(const BasicPoint& a, const BasicPoint& b) {
    return a.dim == b.dim && a.coords == b.coords && a.lattice == b.lattice;
  }
};

using Point = BasicPoint<double>;

template <class Real = double>
BasicPoint<Real> make_point(Real x) {
  return BasicPoint<Real>{{x, Real(0)}, 1, false};
}

template <class Real = double>
BasicPoint<Real> make_point(Real x, Real y) {
  return BasicPoint<Real>{{x, y}, 2, false};
}

inline Point lattice_point(std::int64_t n) {
  return Point{{static_cast<double>(n), 0.0}, 1, true};
}

inline Point lattice_point(std::int64_t n, std::int64_t m) {
  return Point{{static_cast<double>(n), static_cast<double>(m)}, 2, true};
}

inline Point lattice_point(const Site& s, int dim) { return dim == 1 ? lattice_point(s.n) : lattice_point(s.n, s.m); }

template <class To, class From>
BasicPoint<To> point_cast(const BasicPoint<From>& p) {
  return BasicPoint<To>{{To(p.coords[0]), To(p.coords[1])}, p.dim, p.lattice};
}

inline void require_same_dim(int a, int b) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimension " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

template <class Real>
Real distance(MetricKind metric, const BasicPoint<Real>& p, const BasicPoint<Real>& q) {
  using std::abs;
  using std::sqrt;
  require_same_dim(p.dim, q.dim);
  Real acc = 0;
  for (int i = 0; i < p.dim; ++i) {
    const Real d = abs(p[i] - q[i]);
    if (metric == MetricKind::Euclidean) {
      acc += d * d;
    } else if (d > acc) {
      acc = d;
    }
  }
  return metric == MetricKind::Euclidean ? Real(sqrt(acc)) : acc;
}

template <class Real = double>
struct BasicBall {
  BasicPoint<Real> center;
  Real radius = 1;
  MetricKind metric = MetricKind::Euclidean;

  int dim() const { return center.dim; }
};

using Ball = BasicBall<double>;

template <class Real>
BasicBall<Real> make_ball(const BasicPoint<Real>& center, Real radius, MetricKind metric) {
  if (!(radius > 0)) throw Error(ErrorCode::InvalidArgument, "ball radius must be positive");
  return BasicBall<Real>{center, radius, metric};
}

/// Strict membership: the ball is open.
template <class Real>
bool ball_contains(const BasicBall<Real>& b, const BasicPoint<Real>& p) {
  using std::abs;
  require_same_dim(b.center.dim, p.dim);
  if (b.metric == MetricKind::Euclidean) {
    // squared form avoids a rounding sqrt on the boundary
    Real acc = 0;
    for (int i = 0; i < p.dim; ++i) {
      const Real d = p[i] - b.center[i];
      acc += d * d;
    }
    return acc < b.radius * b.radius;
  }
  for (int i = 0; i < p.dim; ++i) {
    if (!(abs(p[i] - b.center[i]) < b.radius)) return false;
  }
  return true;
}

/// Inclusive integer box; for dim 1 only the first range is used.
struct IntBox {
  int dim = 2;
  std::array<std::int64_t, 2> lo{0, 0};
  std::array<std::int64_t, 2> hi{0, 0};

  static IntBox line(std::int64_t lo, std::int64_t hi) { return IntBox{1, {lo, 0}, {hi, 0}}; }
  static IntBox square(std::int64_t lo, std::int64_t hi) { return IntBox{2, {lo, lo}, {hi, hi}}; }
  static IntBox rect(std::int64_t n_lo, std::int64_t n_hi, std::int64_t m_lo, std::int64_t m_hi) {
    return IntBox{2, {n_lo, m_lo}, {n_hi, m_hi}};
  }

  bool empty() const { return lo[0] > hi[0] || (dim == 2 && lo[1] > hi[1]); }

  bool contains(const Site& s) const {
    if (s.n < lo[0] || s.n > hi[0]) return false;
    if (dim == 1) return s.m == 0;
    return s.m >= lo[1] && s.m <= hi[1];
  }

  std::int64_t m_lo() const { return dim == 2 ? lo[1] : 0; }
  std::int64_t m_hi() const { return dim == 2 ? hi[1] : 0; }
};

/// Lattice sites of `window` inside the open ball, in lexicographic order.
inline std::vector<Site> lattice_sites_in_ball(const Ball& b, const IntBox& window) {
  require_same_dim(b.dim(), window.dim);
  std::vector<Site> out;
  const auto lower = [&](int i) { return static_cast<std::int64_t>(std::floor(b.center[i] - b.radius)); };
  const auto upper = [&](int i) { return static_cast<std::int64_t>(std::ceil(b.center[i] + b.radius)); };
  const std::int64_t n0 = std::max(window.lo[0], lower(0));
  const std::int64_t n1 = std::min(window.hi[0], upper(0));
  const std::int64_t m0 = window.dim == 2 ? std::max(window.lo[1], lower(1)) : 0;
  const std::int64_t m1 = window.dim == 2 ? std::min(window.hi[1], upper(1)) : 0;
  for (std::int64_t n = n0; n <= n1; ++n) {
    for (std::int64_t m = m0; m <= m1; ++m) {
      if (ball_contains(b, lattice_point(Site{n, m}, b.dim()))) out.push_back(Site{n, m});
    }
  }
  return out;
}

inline std::vector<Point> lattice_points_in_ball(const Ball& b, const IntBox& window) {
  std::vector<Point> out;
  for (const Site& s : lattice_sites_in_ball(b, window)) out.push_back(lattice_point(s, b.dim()));
  return out;
}

/// Smallest window holding every lattice point the ball can contain.
inline IntBox bounding_window(const Ball& b) {
  IntBox w;
  w.dim = b.dim();
  for (int i = 0; i < b.dim(); ++i) {
    w.lo[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::floor(b.center[i] - b.radius));
    w.hi[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(std::ceil(b.center[i] + b.radius));
  }
  return w;
}

/// One radius per distinct lattice ball centred at a lattice point, up to
/// `max_radius`. Supremum metric (and d = 1): {1/2, 1, 2, ..., R}. Euclidean
/// in 2-D: 1/2 plus sqrt(s + 1/2) for every sum of two squares 0 < s < R^2.
inline std::vector<double> canonical_lattice_radii(MetricKind metric, int dim, std::int64_t max_radius) {
  std::vector<double> radii{0.5};
  if (max_radius < 1) return radii;
  if (metric == MetricKind::Supremum || dim == 1) {
    for (std::int64_t r = 1; r <= max_radius; ++r) radii.push_back(static_cast<double>(r));
    return radii;
  }
  const std::int64_t limit = max_radius * max_radius;
  std::vector<bool> is_sum(static_cast<std::size_t>(limit), false);
  for (std::int64_t a = 0; a * a < limit; ++a) {
    for (std::int64_t c = a; a * a + c * c < limit; ++c) is_sum[static_cast<std::size_t>(a * a + c * c)] = true;
  }
  for (std::int64_t s = 1; s < limit; ++s) {
    if (is_sum[static_cast<std::size_t>(s)]) radii.push_back(std::sqrt(static_cast<double>(s) + 0.5));
  }
  return radii;
}

/// Largest squared (Euclidean) or plain (supremum) integer offset reachable
/// inside an open ball of radius r around a lattice point.
inline std::int64_t lattice_reach(MetricKind metric, double radius) {
  if (metric == MetricKind::Euclidean) {
    auto s = static_cast<std::int64_t>(std::ceil(radius * radius)) - 1;
    while (s >= 0 && !(static_cast<double>(s) < radius * radius)) --s;
    return s;
  }
  return static_cast<std::int64_t>(std::ceil(radius)) - 1;
}

}  // namespace hlmax
