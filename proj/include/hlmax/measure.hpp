#pragma once

// The three measure families: lattice weights on Z^d, weighted Lebesgue
// measure on R^d, and mixtures of full-dimensional and segment components.

#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hlmax/error.hpp"
#include "hlmax/geometry.hpp"
#include "hlmax/numeric.hpp"

namespace hlmax {

enum class LatticeWeightPreset { Unit, Ex3, Ex4 };

/// Point masses on Z^d. Table entries override the preset; sites outside the
/// table fall back to the preset, whose Unit form is the constant 1.
struct DiscreteWeights {
  int dim = 2;
  LatticeWeightPreset preset = LatticeWeightPreset::Unit;
  std::map<Site, Quantity> table;

  Quantity weight(const Site& s) const {
    if (auto it = table.find(s); it != table.end()) return it->second;
    return Quantity::exact(preset_weight(s));
  }

  Rational preset_weight(const Site& s) const {
    switch (preset) {
      case LatticeWeightPreset::Unit:
        return Rational(1);
      case LatticeWeightPreset::Ex3:
        return s.n == 0 ? pow2(2 * std::abs(s.m)) : Rational(1);
      case LatticeWeightPreset::Ex4:
        if (s.n == 0) return pow2(2 * std::abs(s.m));
        if (s.n < 0 && s.m == 0) return pow2(s.n * s.n);
        return Rational(1);
    }
    return Rational(1);
  }

  bool exact() const {
    for (const auto& [site, w] : table) {
      if (!w.is_exact()) return false;
    }
    return true;
  }
};

enum class DensityPreset { Unit, GaussPlus, GaussMinus };

/// A caller-supplied density given through its logarithm.
struct UserDensity {
  std::string name;
  std::function<double(double x, double y)> log_density;
};

using Density = std::variant<DensityPreset, UserDensity>;

template <class Real>
double log_density(const Density& density, const BasicPoint<Real>& p) {
  if (const auto* preset = std::get_if<DensityPreset>(&density)) {
    if (*preset == DensityPreset::Unit) return 0.0;
    Real r2 = p[0] * p[0];
    if (p.dim == 2) r2 += p[1] * p[1];
    const double v = static_cast<double>(r2);
    return *preset == DensityPreset::GaussPlus ? v : -v;
  }
  const auto& user = std::get<UserDensity>(density);
  return user.log_density(static_cast<double>(p[0]), p.dim == 2 ? static_cast<double>(p[1]) : 0.0);
}

inline std::string density_name(const Density& density) {
  if (const auto* preset = std::get_if<DensityPreset>(&density)) {
    switch (*preset) {
      case DensityPreset::Unit: return "unit";
      case DensityPreset::GaussPlus: return "exp(+|x|^2)";
      case DensityPreset::GaussMinus: return "exp(-|x|^2)";
    }
  }
  return std::get<UserDensity>(density).name;
}

struct WeightedLebesgue {
  int dim = 1;
  Density density = DensityPreset::Unit;
  bool log_domain = false;
};

struct FullSpace {
  bool operator==(const FullSpace&) const = default;
};

/// Closed segment [a, b] carrying 1-dimensional Lebesgue measure.
struct Segment {
  Point a;
  Point b;
  bool operator==(const Segment& o) const { return a == o.a && b == o.b; }
};

using Support = std::variant<FullSpace, Segment>;

struct MixedComponent {
  Support support = FullSpace{};
  Density density = DensityPreset::Unit;
};

struct Mixed {
  int dim = 2;
  std::vector<MixedComponent> components;
};

class Measure {
 public:
  using Variant = std::variant<DiscreteWeights, WeightedLebesgue, Mixed>;

  explicit Measure(Variant v) : v_(std::move(v)) { validate(); }

  static Measure lattice(int dim, LatticeWeightPreset preset = LatticeWeightPreset::Unit) {
    return Measure(DiscreteWeights{dim, preset, {}});
  }
  static Measure lattice_table(int dim, std::map<Site, Quantity> table) {
    return Measure(DiscreteWeights{dim, LatticeWeightPreset::Unit, std::move(table)});
  }
  static Measure ex3() { return lattice(2, LatticeWeightPreset::Ex3); }
  static Measure ex4() { return lattice(2, LatticeWeightPreset::Ex4); }
  static Measure weighted(int dim, Density density, bool log_domain = false) {
    return Measure(WeightedLebesgue{dim, std::move(density), log_domain});
  }
  static Measure gauss_plus(int dim = 1) { return weighted(dim, DensityPreset::GaussPlus, true); }
  static Measure gauss_minus(int dim = 1) { return weighted(dim, DensityPreset::GaussMinus, false); }
  /// lambda_1 on [0,1] x {0} plus lambda_2 on the plane.
  static Measure segment_plus_plane() {
    return Measure(Mixed{2,
                         {MixedComponent{FullSpace{}, DensityPreset::Unit},
                          MixedComponent{Segment{make_point(0.0, 0.0), make_point(1.0, 0.0)}, DensityPreset::Unit}}});
  }

  const Variant& variant() const { return v_; }
  bool is_discrete() const { return std::holds_alternative<DiscreteWeights>(v_); }
  const DiscreteWeights& discrete() const { return std::get<DiscreteWeights>(v_); }

  int dim() const {
    return std::visit([](const auto& m) { return m.dim; }, v_);
  }

  bool log_domain() const {
    if (const auto* w = std::get_if<WeightedLebesgue>(&v_)) return w->log_domain;
    return false;
  }

 private:
  void validate() const {
    const int d = dim();
    if (d != 1 && d != 2) throw Error(ErrorCode::InvalidArgument, "only dimensions 1 and 2 are supported");
    if (const auto* dw = std::get_if<DiscreteWeights>(&v_)) {
      if (d == 1 && dw->preset != LatticeWeightPreset::Unit) {
        throw Error(ErrorCode::InvalidArgument, "EX3/EX4 weights live on Z^2");
      }
      for (const auto& [site, w] : dw->table) {
        if (w.is_zero()) throw Error(ErrorCode::NonpositiveMass, "lattice weight must be strictly positive");
        if (d == 1 && site.m != 0) throw Error(ErrorCode::DimensionMismatch, "1-D table entry with m != 0");
      }
    }
    if (const auto* mx = std::get_if<Mixed>(&v_)) {
      if (mx->components.empty()) throw Error(ErrorCode::NonpositiveMass, "mixed measure without components");
      for (std::size_t i = 0; i < mx->components.size(); ++i) {
        if (const auto* seg = std::get_if<Segment>(&mx->components[i].support)) {
          require_same_dim(seg->a.dim, d);
          require_same_dim(seg->b.dim, d);
          if (seg->a == seg->b) throw Error(ErrorCode::InvalidArgument, "degenerate segment");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (mx->components[i].support == mx->components[j].support) {
            throw Error(ErrorCode::InvalidArgument, "mixed components must have distinct supports");
          }
        }
      }
    }
  }

  Variant v_;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  return out;
}

inline std::int64_t parse_site_coord(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad integer '" + text + "'");
  }
  return v;
}

}  // namespace detail

/// Reads `n,m,weight` (or `n,weight`) CSV. Weights are exact decimals or
/// `log:<v>` log-domain literals.
inline DiscreteWeights read_lattice_weights_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    header = detail::split_csv_line(line);
  }
  DiscreteWeights out;
  if (header == std::vector<std::string>{"n", "m", "weight"}) {
    out.dim = 2;
  } else if (header == std::vector<std::string>{"n", "weight"}) {
    out.dim = 1;
  } else {
    throw Error(ErrorCode::ParseError, "weight CSV header must be 'n,m,weight' or 'n,weight'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(header.size()) + " fields");
    }
    Site s{detail::parse_site_coord(fields[0], line_no), 0};
    if (out.dim == 2) s.m = detail::parse_site_coord(fields[1], line_no);
    Quantity w;
    try {
      w = parse_quantity(fields.back());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidArgument) {
        throw Error(ErrorCode::NonpositiveMass, "line " + std::to_string(line_no) + ": negative weight");
      }
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (w.is_zero()) throw Error(ErrorCode::NonpositiveMass, "line " + std::to_string(line_no) + ": zero weight");
    if (!out.table.emplace(s, std::move(w)).second) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate site");
    }
  }
  return out;
}

}  // namespace hlmax
