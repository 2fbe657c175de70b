#pragma once

// Test integrands. Every descriptor is nonnegative; lattice evaluation is
// exact whenever the closed form is rational.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/geometry.hpp"
#include "hlmax/numeric.hpp"

namespace hlmax {

/// x * 1_{(0, inf)}(x) on the line.
struct RampF {};
/// 2^n on {n > 0, m = 0}.
struct RayPow2F {};
/// 2^{n^2} on {n > 0, m = 0}.
struct RaySquarePow2F {};

/// sum_{k <= depth} 2^k on the strips [0,1] x (2^{-k^2}, 2^{-k^2+1}).
struct StripsF {
  int depth = 8;
};

/// coefficient * 1_{B_{1/2}(center)} (Euclidean).
struct Bump {
  Point center;
  Quantity coefficient;
};

struct BumpsF {
  std::vector<Bump> bumps;
};

struct ConstantF {
  Quantity value;
};

/// Lattice table; sites outside the table evaluate to 0.
struct TabulatedF {
  std::map<Site, Quantity> table;
};

namespace detail {

template <class Real>
struct LogEval {
  const BasicPoint<Real>& p;

  double operator()(const RampF&) const { return p[0] > 0 ? std::log(static_cast<double>(p[0])) : kLogZero; }
  double operator()(const RayPow2F&) const { return ray_log(false); }
  double operator()(const RaySquarePow2F&) const { return ray_log(true); }
  double operator()(const StripsF& f) const {
    if (p.dim != 2 || p[0] < 0 || p[0] > 1) return kLogZero;
    const Real y = p[1];
    for (int k = 1; k <= f.depth; ++k) {
      const Real lo = Real(std::ldexp(1.0, -k * k));
      const Real hi = Real(std::ldexp(1.0, -k * k + 1));
      if (y > lo && y < hi) return k * std::numbers::ln2;
    }
    return kLogZero;
  }
  double operator()(const BumpsF& f) const {
    LogSum acc;
    for (const Bump& b : f.bumps) {
      const BasicBall<Real> ball{point_cast<Real>(b.center), Real(0.5), MetricKind::Euclidean};
      if (ball_contains(ball, p)) acc.add(b.coefficient.log());
    }
    return acc.value();
  }
  double operator()(const ConstantF& f) const { return f.value.log(); }
  double operator()(const TabulatedF& f) const {
    if (!is_integral()) return kLogZero;
    const Site s{static_cast<std::int64_t>(p[0]), p.dim == 2 ? static_cast<std::int64_t>(p[1]) : 0};
    if (auto it = f.table.find(s); it != f.table.end()) return it->second.log();
    return kLogZero;
  }

  bool is_integral() const {
    using std::floor;
    for (int i = 0; i < p.dim; ++i) {
      if (floor(p[i]) != p[i]) return false;
    }
    return true;
  }

  double ray_log(bool squared) const {
    if (!is_integral()) return kLogZero;
    if (p.dim == 2 && p[1] != 0) return kLogZero;
    const double n = static_cast<double>(p[0]);
    if (n <= 0) return kLogZero;
    return (squared ? n * n : n) * std::numbers::ln2;
  }
};

}  // namespace detail

class FunctionDescriptor {
 public:
  using Variant = std::variant<RampF, RayPow2F, RaySquarePow2F, StripsF, BumpsF, ConstantF, TabulatedF>;

  template <class T>
    requires(std::is_constructible_v<Variant, T &&> && !std::is_same_v<std::decay_t<T>, FunctionDescriptor>)
  FunctionDescriptor(T&& v) : v_(std::forward<T>(v)) {  // NOLINT(google-explicit-constructor)
    if (const auto* s = std::get_if<StripsF>(&v_); s && (s->depth < 0 || s->depth > 30)) {
      throw Error(ErrorCode::InvalidArgument, "strip depth must lie in [0, 30]");
    }
  }

  static FunctionDescriptor constant(Quantity c) { return ConstantF{std::move(c)}; }
  static FunctionDescriptor constant(long c) { return ConstantF{Quantity::exact(Rational(c))}; }

  const Variant& variant() const { return v_; }

  std::string name() const {
    struct Namer {
      std::string operator()(const RampF&) const { return "EX1_F"; }
      std::string operator()(const RayPow2F&) const { return "EX3_F"; }
      std::string operator()(const RaySquarePow2F&) const { return "EX4_G"; }
      std::string operator()(const StripsF& s) const { return "EX5_F(" + std::to_string(s.depth) + ")"; }
      std::string operator()(const BumpsF& b) const { return "THM2_F(" + std::to_string(b.bumps.size()) + ")"; }
      std::string operator()(const ConstantF&) const { return "CONSTANT"; }
      std::string operator()(const TabulatedF&) const { return "TABULATED"; }
    };
    return std::visit(Namer{}, v_);
  }

  /// Value at a lattice site.
  Quantity at_site(const Site& s, int dim) const {
    struct Eval {
      const Site& s;
      int dim;
      Quantity operator()(const RampF&) const {
        return Quantity::exact(s.n > 0 ? Rational(s.n) : Rational(0));
      }
      Quantity operator()(const RayPow2F&) const {
        return Quantity::exact(s.n > 0 && s.m == 0 ? pow2(s.n) : Rational(0));
      }
      Quantity operator()(const RaySquarePow2F&) const {
        return Quantity::exact(s.n > 0 && s.m == 0 ? pow2(s.n * s.n) : Rational(0));
      }
      Quantity operator()(const StripsF& f) const {
        // integer heights never fall strictly inside a strip
        (void)f;
        return Quantity::zero();
      }
      Quantity operator()(const BumpsF& f) const {
        Quantity acc = Quantity::zero();
        const Point p = lattice_point(s, dim);
        for (const Bump& b : f.bumps) {
          if (ball_contains(Ball{b.center, 0.5, MetricKind::Euclidean}, p)) acc = acc + b.coefficient;
        }
        return acc;
      }
      Quantity operator()(const ConstantF& f) const { return f.value; }
      Quantity operator()(const TabulatedF& f) const {
        if (auto it = f.table.find(s); it != f.table.end()) return it->second;
        return Quantity::zero();
      }
    };
    return std::visit(Eval{s, dim}, v_);
  }

  /// log f at a point of R^d.
  template <class Real>
  double log_at(const BasicPoint<Real>& p) const {
    return std::visit(detail::LogEval<Real>{p}, v_);
  }

  /// f at an arbitrary point: exact on lattice points, otherwise through log_at.
  Quantity value_at(const Point& p) const {
    if (p.lattice) return at_site(p.site(), p.dim);
    return Quantity::from_log(log_at(p));
  }

  /// Coordinates along `axis` where f may jump.
  std::vector<double> breakpoints(int axis) const {
    std::vector<double> out;
    if (std::holds_alternative<RampF>(v_) && axis == 0) out.push_back(0.0);
    if (const auto* s = std::get_if<StripsF>(&v_)) {
      if (axis == 0) {
        out = {0.0, 1.0};
      } else {
        for (int k = 1; k <= s->depth; ++k) {
          out.push_back(std::ldexp(1.0, -k * k));
          out.push_back(std::ldexp(1.0, -k * k + 1));
        }
      }
    }
    if (const auto* b = std::get_if<BumpsF>(&v_)) {
      for (const Bump& bump : b->bumps) {
        if (axis < bump.center.dim) {
          out.push_back(bump.center[axis] - 0.5);
          out.push_back(bump.center[axis] + 0.5);
        }
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// True when every lattice value is an exact rational.
  bool exact_on_lattice() const {
    if (const auto* c = std::get_if<ConstantF>(&v_)) return c->value.is_exact();
    if (const auto* t = std::get_if<TabulatedF>(&v_)) {
      for (const auto& [s, v] : t->table) {
        if (!v.is_exact()) return false;
      }
    }
    if (const auto* b = std::get_if<BumpsF>(&v_)) {
      for (const Bump& bump : b->bumps) {
        if (!bump.coefficient.is_exact()) return false;
      }
    }
    return true;
  }

 private:
  Variant v_;
};

}  // namespace hlmax
