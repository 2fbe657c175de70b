#pragma once

// Randomized property checks on small lattice instances. Each returns an
// empty string on success or a description of the first counterexample.

#include <cmath>
#include <random>
#include <string>

#include "hlmax/maximal.hpp"

namespace hlmax::props {

inline const QuadratureSpec kQ{};
inline constexpr std::int64_t kHalf = 4;

struct Instance {
  Measure mu = Measure::lattice(2);
  std::map<Site, Quantity> values;
  Point x = lattice_point(0, 0);
  MetricKind metric = MetricKind::Supremum;
};

inline Instance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> weight(1, 1000);
  std::uniform_int_distribution<int> value(0, 100);
  std::uniform_int_distribution<std::int64_t> coord(-kHalf, kHalf);
  std::bernoulli_distribution euclid(0.3);
  Instance in;
  std::map<Site, Quantity> w;
  for (std::int64_t n = -kHalf; n <= kHalf; ++n) {
    for (std::int64_t m = -kHalf; m <= kHalf; ++m) {
      w.emplace(Site{n, m}, Quantity::exact(Rational(weight(rng))));
      in.values.emplace(Site{n, m}, Quantity::exact(Rational(value(rng))));
    }
  }
  in.mu = Measure::lattice_table(2, std::move(w));
  in.x = lattice_point(coord(rng), coord(rng));
  in.metric = euclid(rng) ? MetricKind::Euclidean : MetricKind::Supremum;
  return in;
}

inline FunctionDescriptor tabulated(const std::map<Site, Quantity>& values, const Quantity& scale = Quantity::one()) {
  TabulatedF t;
  for (const auto& [s, v] : values) t.table.emplace(s, v * scale);
  return FunctionDescriptor(std::move(t));
}

inline DiscreteFamily family(const Instance& in) {
  return DiscreteFamily{IntBox::square(-kHalf, kHalf), kHalf, in.metric};
}

inline Quantity noncentered(const Instance& in, const FunctionDescriptor& f, const QuadratureSpec& q = kQ) {
  return noncentered_max_truncated(in.mu, f, in.x, family(in), q).sup;
}

inline std::string where(int t) { return "instance " + std::to_string(t); }

inline std::string truncation_monotone(int instances, std::uint64_t seed = 101) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const RadiusProfile p = noncentered_profile(in.mu, tabulated(in.values), in.x, family(in), kQ);
    Quantity prev = Quantity::zero();
    for (double cut : canonical_lattice_radii(in.metric, 2, kHalf)) {
      const Quantity v = profile_max(p, cut).sup;
      if (v < prev) return where(t);
      prev = v;
    }
  }
  return {};
}

inline std::string centered_dominated(int instances, std::uint64_t seed = 102) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const FunctionDescriptor f = tabulated(in.values);
    const CenteredResult c =
        centered_max_truncated(in.mu, f, in.x, canonical_lattice_radii(in.metric, 2, kHalf), in.metric, kQ);
    if (c.sup > noncentered(in, f)) return where(t);
  }
  return {};
}

inline std::string homogeneous(int instances, std::uint64_t seed = 103) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 50);
  std::uniform_int_distribution<int> den(1, 7);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const Quantity c = Quantity::exact(Rational(num(rng), den(rng)));
    const Quantity base = noncentered(in, tabulated(in.values));
    const Quantity scaled = noncentered(in, tabulated(in.values, c));
    if (!scaled.is_exact() || *scaled.exact() != *(c * base).exact()) return where(t) + " (exact)";
    if (base.is_zero()) continue;
    const Quantity logged = noncentered(in, tabulated(in.values, c), kQ.with_log_domain());
    if (std::abs(logged.log() - c.log() - base.log()) > 1e-12 * std::max(1.0, std::abs(logged.log()))) {
      return where(t) + " (log domain)";
    }
  }
  return {};
}

inline std::string subadditive(int instances, std::uint64_t seed = 104) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const Instance other = random_instance(rng);
    std::map<Site, Quantity> sum;
    for (const auto& [s, v] : in.values) sum.emplace(s, v + other.values.at(s));
    const Quantity lhs = noncentered(in, tabulated(sum));
    const Quantity rhs = noncentered(in, tabulated(in.values)) + noncentered(in, tabulated(other.values));
    if (lhs > rhs) return where(t);
  }
  return {};
}

inline std::string constant_fixed(int instances, std::uint64_t seed = 105) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> value(0, 100);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const Quantity c = Quantity::exact(Rational(value(rng)));
    const FunctionDescriptor f = FunctionDescriptor::constant(c);
    if (*noncentered(in, f).exact() != *c.exact()) return where(t) + " (noncentered)";
    const CenteredResult cr =
        centered_max_truncated(in.mu, f, in.x, canonical_lattice_radii(in.metric, 2, kHalf), in.metric, kQ);
    if (*cr.sup.exact() != *c.exact()) return where(t) + " (centered)";
  }
  return {};
}

inline std::string singleton_bound(int instances, std::uint64_t seed = 106) {
  std::mt19937_64 rng(seed);
  for (int t = 0; t < instances; ++t) {
    const Instance in = random_instance(rng);
    const Site s{static_cast<std::int64_t>(in.x[0]), static_cast<std::int64_t>(in.x[1])};
    const Quantity& fx = in.values.at(s);
    const FunctionDescriptor f = tabulated(in.values);
    if (noncentered(in, f) < fx) return where(t) + " (noncentered)";
    const CenteredResult c = centered_max_truncated(in.mu, f, in.x, {0.5}, in.metric, kQ);
    if (*c.sup.exact() != *fx.exact()) return where(t) + " (singleton ball)";
  }
  return {};
}

}  // namespace hlmax::props
