#pragma once

// Command-line surface. Lives in a header so tests can drive `cli::run`
// in-process; tools/hlmax.cpp is a thin main().

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hlmax/dichotomy.hpp"
#include "hlmax/error.hpp"
#include "hlmax/function.hpp"
#include "hlmax/gallery.hpp"
#include "hlmax/maximal.hpp"
#include "hlmax/measure.hpp"
#include "hlmax/report.hpp"

namespace hlmax::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kEvaluation = 2, kClaimFailure = 3, kNotFound = 4 };

inline constexpr const char* kOutputDirEnv = "HLMAX_OUTPUT_DIR";

enum class Format { Json, Csv, Table };

struct CliConfig {
  std::string subcommand;
  std::string preset;        // measure preset id
  std::string weights_path;  // lattice weight CSV
  std::string function;      // preset id, constant:<v> or CSV path
  std::vector<std::string> points;
  std::string radii;
  std::string metric;
  bool centered = false;
  bool noncentered = false;
  std::string window;
  std::string max_radius;
  std::string span = "16";
  int levels = 4;
  std::string spacing = "0.25";
  std::string y0;
  std::string rmin = "1";
  std::string rmax = "12";
  std::string tail_fraction = "0.25";
  std::string example;
  bool table1 = false;
  std::optional<int> nmin;
  std::optional<int> nmax;
  int depth = 8;
  std::vector<std::string> claims;
  std::uint64_t seed = 1;
  int count = 100;
  int oracle_window = 4;
  int oracle_points = 5;
  bool corrupt_fast_path = false;
  int thm2_depth = 4;
  std::string horizon = "64";
  std::string rel_tol;
  std::string abs_tol;
  int max_depth = 40;
  bool log_domain = false;
  std::string format = "json";
  std::string output;
};

// ---- parsing helpers ------------------------------------------------------

/// Decimal, or `log:<v>` meaning e^v.
inline double parse_number(const std::string& text) {
  const bool log_form = text.rfind("log:", 0) == 0;
  const std::string body = log_form ? text.substr(4) : text;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != body.size()) throw Error(ErrorCode::ParseError, "bad number '" + text + "'");
  return log_form ? std::exp(v) : v;
}

inline std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& part : detail::split_csv_line(text)) out.push_back(parse_number(part));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty list");
  return out;
}

/// `a:b[:step]` (inclusive, default step 1) or a comma list.
inline std::vector<double> parse_radii(const std::string& text) {
  if (text.find(':') == std::string::npos || text.rfind("log:", 0) == 0) return parse_list(text);
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() < 2 || parts.size() > 3) throw Error(ErrorCode::ParseError, "radii must be a:b[:step]");
  const double a = parse_number(parts[0]);
  const double b = parse_number(parts[1]);
  const double step = parts.size() == 3 ? parse_number(parts[2]) : 1.0;
  if (!(step > 0) || b < a) throw Error(ErrorCode::ParseError, "radii range must satisfy a <= b and step > 0");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
  return out;
}

inline Point parse_point(const std::string& text, const Measure& mu) {
  const std::vector<double> c = parse_list(text);
  if (static_cast<int>(c.size()) != mu.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point '" + text + "' does not match the measure dimension");
  }
  const bool integral = std::all_of(c.begin(), c.end(), [](double v) { return v == std::floor(v); });
  if (mu.is_discrete() && integral) {
    return c.size() == 1 ? lattice_point(std::llround(c[0])) : lattice_point(std::llround(c[0]), std::llround(c[1]));
  }
  return c.size() == 1 ? make_point(c[0]) : make_point(c[0], c[1]);
}

inline MetricKind parse_metric(const std::string& text, MetricKind fallback) {
  if (text.empty()) return fallback;
  if (text == "euclidean") return MetricKind::Euclidean;
  if (text == "supremum" || text == "sup") return MetricKind::Supremum;
  throw Error(ErrorCode::ParseError, "unknown metric '" + text + "'");
}

/// Reads `n,m,value` (or `n,value`) into a tabulated lattice function.
inline FunctionDescriptor read_lattice_function_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) header = detail::split_csv_line(line);
  }
  const bool two = header == std::vector<std::string>{"n", "m", "value"};
  if (!two && header != std::vector<std::string>{"n", "value"}) {
    throw Error(ErrorCode::ParseError, "function CSV header must be 'n,m,value' or 'n,value'");
  }
  TabulatedF t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != header.size()) throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": arity");
    const Site s{detail::parse_site_coord(f[0], line_no), two ? detail::parse_site_coord(f[1], line_no) : 0};
    if (!t.table.emplace(s, parse_quantity(f.back())).second) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": duplicate site");
    }
  }
  return FunctionDescriptor(std::move(t));
}

struct Inputs {
  Measure mu = Measure::lattice(1);
  FunctionDescriptor f = RampF{};
  MetricKind metric = MetricKind::Euclidean;
};

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return in;
}

inline Inputs load_inputs(const CliConfig& c) {
  if (c.preset.empty() == c.weights_path.empty()) {
    throw Error(ErrorCode::ParseError, "exactly one of --preset or --weights is required");
  }
  Inputs in;
  bool have_function = false;
  if (!c.preset.empty()) {
    in.mu = load_measure_preset(c.preset);
    if (c.preset.rfind("ex", 0) == 0 && c.preset.size() == 3) {
      const ExamplePreset p = load_preset(c.preset);
      in.f = p.function;
      in.metric = p.metric;
      have_function = true;
    } else {
      in.metric = MetricKind::Euclidean;
    }
  } else {
    auto file = open_input(c.weights_path);
    in.mu = Measure(read_lattice_weights_csv(file));
  }
  if (!c.function.empty()) {
    if (c.function.rfind("constant:", 0) == 0) {
      in.f = FunctionDescriptor::constant(parse_quantity(c.function.substr(9)));
    } else if (c.function.size() == 3 && c.function.rfind("ex", 0) == 0) {
      in.f = load_preset(c.function).function;
    } else {
      auto file = open_input(c.function);
      in.f = read_lattice_function_csv(file);
    }
    have_function = true;
  }
  if (!have_function) in.f = FunctionDescriptor::constant(Quantity::one());
  in.metric = parse_metric(c.metric, in.metric);
  return in;
}

inline QuadratureSpec quadrature(const CliConfig& c) {
  QuadratureSpec q;
  if (!c.rel_tol.empty()) q.rel_tol = parse_number(c.rel_tol);
  if (!c.abs_tol.empty()) q.abs_tol = parse_number(c.abs_tol);
  q.max_depth = c.max_depth;
  q.log_domain = c.log_domain;
  q.validate();
  return q;
}

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "table") return Format::Table;
  throw Error(ErrorCode::ParseError, "unknown format '" + s + "'");
}

/// Relative --output paths resolve against $HLMAX_OUTPUT_DIR when it is set.
inline std::string resolve_output(const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

class Emitter {
 public:
  Emitter(const CliConfig& c, std::ostream& out) : format_(parse_format(c.format)), path_(resolve_output(c.output)), out_(out) {}

  Format format() const { return format_; }

  template <class Writer>
  void emit(const Writer& write) {
    if (path_.empty()) {
      write(out_);
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorCode::ParseError, "cannot write '" + path_ + "'");
    write(file);
  }

  void json(const std::string& kind, Json data) {
    const Json doc = report::document(kind, std::move(data));
    emit([&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }

 private:
  Format format_;
  std::string path_;
  std::ostream& out_;
};

// ---- commands ---------------------------------------------------------------

inline int cmd_ratio(const CliConfig& c, std::ostream& out) {
  const Inputs in = load_inputs(c);
  const QuadratureSpec q = quadrature(c);
  Emitter em(c, out);
  const Point y0 = c.y0.empty() ? (in.mu.dim() == 2 ? (in.mu.is_discrete() ? lattice_point(0, 0) : make_point(0.0, 0.0))
                                                     : (in.mu.is_discrete() ? lattice_point(0) : make_point(0.0)))
                                : parse_point(c.y0, in.mu);
  const double lo = parse_number(c.rmin);
  const double hi = parse_number(c.rmax);
  if (!(lo > 0) || hi < lo) throw Error(ErrorCode::ParseError, "need 0 < rmin <= rmax");
  std::vector<double> rs;
  for (long i = 0; lo + static_cast<double>(i) <= hi + 1e-9; ++i) rs.push_back(lo + static_cast<double>(i));
  const RatioSeries s = condition_c_ratio_series(in.mu, y0, rs, in.metric, q, parse_number(c.tail_fraction));
  switch (em.format()) {
    case Format::Json: em.json("ratio", report::to_json(s)); break;
    case Format::Csv: em.emit([&](std::ostream& os) { report::write_csv(os, s); }); break;
    case Format::Table: em.emit([&](std::ostream& os) { report::write_table(os, s); }); break;
  }
  return kOk;
}

inline BallFamily default_family(const CliConfig& c, const Inputs& in, const Point& x) {
  if (in.mu.is_discrete()) {
    const auto w = static_cast<std::int64_t>(parse_number(c.window.empty() ? "10" : c.window));
    const auto r = c.max_radius.empty() ? w : static_cast<std::int64_t>(parse_number(c.max_radius));
    return in.mu.dim() == 1 ? BallFamily{DiscreteFamily{IntBox::line(-w, w), r, in.metric}}
                            : BallFamily{DiscreteFamily{IntBox::square(-w, w), r, in.metric}};
  }
  if (in.mu.dim() == 1) return EndpointFamily{refined_endpoint_grid(x[0], parse_number(c.span), c.levels)};
  const double half = parse_number(c.span);
  const std::vector<double> radii = c.radii.empty() ? std::vector<double>{0.125, 0.25, 0.5, 1, 2} : parse_radii(c.radii);
  return GridFamily{parse_number(c.spacing), RealBox{x[0] - half, x[0] + half, x[1] - half, x[1] + half}, radii,
                    in.metric};
}

inline int cmd_maximal(const CliConfig& c, std::ostream& out) {
  if (c.centered == c.noncentered) throw Error(ErrorCode::ParseError, "choose exactly one of --centered/--noncentered");
  if (c.points.empty()) throw Error(ErrorCode::ParseError, "--point is required");
  const Inputs in = load_inputs(c);
  const QuadratureSpec q = quadrature(c);
  Emitter em(c, out);
  Json results = Json::array();
  std::vector<AverageRecord> rows;
  for (const std::string& text : c.points) {
    const Point x = parse_point(text, in.mu);
    if (c.centered) {
      if (c.radii.empty()) throw Error(ErrorCode::ParseError, "--radii is required with --centered");
      const CenteredResult r = centered_max_truncated(in.mu, in.f, x, parse_radii(c.radii), in.metric, q);
      Json j = report::to_json(r);
      j["point"] = report::to_json(x);
      results.push_back(j);
      rows.insert(rows.end(), r.series.begin(), r.series.end());
    } else {
      NoncenteredOptions opt;
      opt.corrupt_fast_path = c.corrupt_fast_path;
      const NoncenteredResult r =
          profile_max(noncentered_profile(in.mu, in.f, x, default_family(c, in, x), q, opt));
      Json j = report::to_json(r);
      j["point"] = report::to_json(x);
      results.push_back(j);
      rows.push_back(r.best);
    }
  }
  switch (em.format()) {
    case Format::Json: em.json("maximal", results); break;
    case Format::Csv: em.emit([&](std::ostream& os) { report::write_csv(os, rows); }); break;
    case Format::Table: em.emit([&](std::ostream& os) { report::write_table(os, rows); }); break;
  }
  return kOk;
}

inline int cmd_reproduce(const CliConfig& c, std::ostream& out, std::ostream& err) {
  if (c.table1 == !c.example.empty()) throw Error(ErrorCode::ParseError, "choose exactly one of --example/--table1");
  const QuadratureSpec q = quadrature(c);
  Emitter em(c, out);
  if (c.table1) {
    const int w = c.window.empty() ? 40 : static_cast<int>(parse_number(c.window));
    const Table1 t = table1_summary(q, w, parse_number(c.span == "16" ? "64" : c.span));
    switch (em.format()) {
      case Format::Json: em.json("table1", report::to_json(t)); break;
      case Format::Csv: em.emit([&](std::ostream& os) { report::write_csv(os, t); }); break;
      case Format::Table: em.emit([&](std::ostream& os) { report::write_table(os, t); }); break;
    }
    if (!t.matches()) {
      err << "table 1 pattern mismatch\n";
      return kClaimFailure;
    }
    return kOk;
  }
  const ExamplePreset p = load_preset(c.example);
  ClaimParams par;
  par.lo = c.nmin;
  par.hi = c.nmax;
  par.ex5_depth = c.depth;
  const std::vector<ClaimReport> claims = run_claims(p, par, q, c.claims);
  if (claims.empty()) throw Error(ErrorCode::ParseError, "no claim matched the filter");
  switch (em.format()) {
    case Format::Json: em.json("claims", report::to_json(claims)); break;
    case Format::Csv: em.emit([&](std::ostream& os) { report::write_csv(os, claims); }); break;
    case Format::Table: em.emit([&](std::ostream& os) { report::write_table(os, claims); }); break;
  }
  int code = kOk;
  for (const ClaimReport& r : claims) {
    if (r.pass) continue;
    err << "failed: " << r.example << ' ' << r.claim << " [" << report::params_text(r) << "]"
        << (r.error ? " " + *r.error : std::string()) << '\n';
    code = kClaimFailure;
  }
  return code;
}

/// Random positive weights and values on the window, for the oracle check.
struct OracleInstance {
  DiscreteWeights weights;
  TabulatedF values;
};

inline OracleInstance random_instance(std::mt19937_64& rng, int window) {
  std::uniform_int_distribution<int> weight(1, 1000);
  std::uniform_int_distribution<int> value(0, 100);
  OracleInstance inst;
  inst.weights.dim = 2;
  for (int n = -window; n <= window; ++n) {
    for (int m = -window; m <= window; ++m) {
      inst.weights.table.emplace(Site{n, m}, Quantity::exact(Rational(weight(rng))));
      inst.values.table.emplace(Site{n, m}, Quantity::exact(Rational(value(rng))));
    }
  }
  return inst;
}

inline void dump_weights(std::ostream& os, const OracleInstance& inst) {
  os << "n,m,weight,value\n";
  for (const auto& [s, w] : inst.weights.table) {
    os << s.n << ',' << s.m << ',' << rational_to_string(*w.exact()) << ','
       << rational_to_string(*inst.values.table.at(s).exact()) << '\n';
  }
}

inline int cmd_oracle_check(const CliConfig& c, std::ostream& out, std::ostream& err) {
  if (c.count < 0 || c.oracle_window < 1 || c.oracle_points < 1) {
    throw Error(ErrorCode::ParseError, "count must be >= 0, window and points >= 1");
  }
  const QuadratureSpec q = quadrature(c);
  std::mt19937_64 rng(c.seed);
  const int w = c.oracle_window;
  const std::int64_t r_max = 2L * w;
  const IntBox box = IntBox::square(-w, w);
  std::uniform_int_distribution<int> coord(-w, w);
  NoncenteredOptions opt;
  opt.corrupt_fast_path = c.corrupt_fast_path;
  std::size_t compared = 0;
  for (int i = 0; i < c.count; ++i) {
    const OracleInstance inst = random_instance(rng, w);
    const Measure mu(inst.weights);
    const FunctionDescriptor f(inst.values);
    for (int k = 0; k < c.oracle_points; ++k) {
      const Point x = lattice_point(coord(rng), coord(rng));
      const NoncenteredResult fast =
          profile_max(noncentered_profile(mu, f, x, DiscreteFamily{box, r_max, MetricKind::Supremum}, q, opt));
      const BruteForceResult slow = brute_force_discrete_max(mu, f, x, box, r_max, MetricKind::Supremum);
      ++compared;
      const bool same_value = fast.sup.is_exact() && slow.sup.is_exact() && *fast.sup.exact() == *slow.sup.exact();
      const bool same_ball = fast.best.ball.center == slow.argmax.center && fast.best.ball.radius == slow.argmax.radius;
      if (!same_value || !same_ball) {
        err << "oracle mismatch: instance " << i << " point (" << x[0] << ',' << x[1] << ") fast "
            << fast.sup.to_double() << " brute " << slow.sup.to_double() << '\n';
        dump_weights(err, inst);
        return kClaimFailure;
      }
    }
  }
  Emitter em(c, out);
  const Json data{{"seed", c.seed}, {"count", c.count}, {"window", w}, {"compared", compared}, {"agree", true}};
  switch (em.format()) {
    case Format::Json: em.json("oracle-check", data); break;
    default:
      em.emit([&](std::ostream& os) { os << "compared " << compared << " queries: all agree\n"; });
  }
  return kOk;
}

inline int cmd_thm2(const CliConfig& c, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(c);
  if (in.mu.dim() != 2) throw Error(ErrorCode::ParseError, "thm2 needs a 2-D measure");
  if (c.thm2_depth < 1) throw Error(ErrorCode::ParseError, "--depth must be at least 1");
  const QuadratureSpec q = quadrature(c);
  Emitter em(c, out);
  const WitnessSequence ws =
      theorem2_witness_sequence(in.mu, c.thm2_depth + 2, parse_number(c.horizon), q);
  Json data{{"witness", report::to_json(ws)}};
  int code = kOk;
  if (static_cast<int>(ws.a.size()) < c.thm2_depth) {
    data["status"] = "NOT_FOUND";
    code = kNotFound;
  } else {
    const Theorem2Witness w = theorem2_sector_select(in.mu, ws.a, c.thm2_depth, q);
    data["selection"] = report::to_json(w);
    try {
      const Theorem2Report rep = theorem2_test_function(in.mu, w, c.thm2_depth, q);
      data["verification"] = report::to_json(rep);
      data["status"] = rep.pass ? "VERIFIED" : "VERIFICATION_FAILED";
      if (!rep.pass) code = kClaimFailure;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VerificationFailed) throw;
      data["status"] = "VERIFICATION_FAILED";
      data["error"] = e.what();
      code = kClaimFailure;
    }
  }
  switch (em.format()) {
    case Format::Json: em.json("thm2", data); break;
    default: em.emit([&](std::ostream& os) { os << data["status"].get<std::string>() << '\n'; });
  }
  if (code == kNotFound) err << "no witness sequence found: the measure appears to satisfy condition (C)\n";
  return code;
}

// ---- entry point --------------------------------------------------------------

inline void add_common(CLI::App* sub, CliConfig& c) {
  sub->add_option("--rel-tol", c.rel_tol, "quadrature relative tolerance");
  sub->add_option("--abs-tol", c.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--max-depth", c.max_depth, "quadrature subdivision depth")->check(CLI::PositiveNumber);
  sub->add_flag("--log-domain", c.log_domain, "force log-domain accumulation");
  sub->add_option("--format", c.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  sub->add_option("-o,--output", c.output, "output path (default stdout)");
}

inline void add_sources(CLI::App* sub, CliConfig& c) {
  auto* p = sub->add_option("--preset", c.preset, "measure preset: ex1..ex5, ex2d-unit, thm2-demo");
  auto* w = sub->add_option("--weights", c.weights_path, "lattice weight CSV (n,m,weight)");
  p->excludes(w);
  w->excludes(p);
  sub->add_option("--function", c.function, "function: preset id, constant:<v> or CSV (n,m,value)");
  sub->add_option("--metric", c.metric, "euclidean or supremum");
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"Hardy-Littlewood maximal operators and the dichotomy property"};
  app.require_subcommand(1);

  auto* ratio = app.add_subcommand("ratio", "ratio series mu(B_{r+1}(y0)) / mu(B_r(y0))");
  add_sources(ratio, c);
  add_common(ratio, c);
  ratio->add_option("--y0", c.y0, "centre, comma separated");
  ratio->add_option("--rmin", c.rmin, "first radius");
  ratio->add_option("--rmax", c.rmax, "last radius");
  ratio->add_option("--tail-fraction", c.tail_fraction, "tail share used for the limsup");

  auto* maximal = app.add_subcommand("maximal", "truncated centred or non-centred maximal function");
  add_sources(maximal, c);
  add_common(maximal, c);
  maximal->add_option("--point", c.points, "query point(s), comma separated coordinates")->allow_extra_args(false);
  maximal->add_option("--radii", c.radii, "a:b[:step] or a comma list");
  auto* cen = maximal->add_flag("--centered", c.centered, "centred operator");
  auto* non = maximal->add_flag("--noncentered", c.noncentered, "non-centred operator");
  cen->excludes(non);
  maximal->add_option("--window", c.window, "lattice centre window half-width");
  maximal->add_option("--max-radius", c.max_radius, "largest lattice radius");
  maximal->add_option("--span", c.span, "endpoint span (1-D) or grid half-width (2-D)");
  maximal->add_option("--levels", c.levels, "geometric refinement levels toward the point");
  maximal->add_option("--spacing", c.spacing, "centre grid spacing (2-D continuous)");
  maximal->add_flag("--corrupt-fast-path", c.corrupt_fast_path)->group("");

  auto* reproduce = app.add_subcommand("reproduce", "check the worked examples or Table 1");
  add_common(reproduce, c);
  reproduce->add_option("--example", c.example, "ex1..ex5");
  reproduce->add_flag("--table1", c.table1, "dichotomy verdict matrix");
  reproduce->add_option("--nmin", c.nmin, "first swept parameter value");
  reproduce->add_option("--nmax", c.nmax, "last swept parameter value");
  reproduce->add_option("--depth", c.depth, "strip depth for ex5")->check(CLI::Range(1, 30));
  reproduce->add_option("--claim", c.claims, "only these claims");
  reproduce->add_option("--window", c.window, "lattice window for --table1");
  reproduce->add_option("--span", c.span, "1-D endpoint span for --table1");

  auto* oracle = app.add_subcommand("oracle-check", "fast non-centred discrete max against brute force");
  add_common(oracle, c);
  oracle->add_option("--seed", c.seed, "RNG seed");
  oracle->add_option("--count", c.count, "random instances");
  oracle->add_option("--window", c.oracle_window, "half-width: tables are (2w+1)^2");
  oracle->add_option("--points", c.oracle_points, "query points per instance");
  oracle->add_flag("--corrupt-fast-path", c.corrupt_fast_path)->group("");

  auto* thm2 = app.add_subcommand("thm2", "witness search and test-function construction");
  add_sources(thm2, c);
  add_common(thm2, c);
  thm2->add_option("--depth", c.thm2_depth, "levels n = 1..N");
  thm2->add_option("--horizon", c.horizon, "largest witness radius searched");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (ratio->parsed()) return cmd_ratio(c, out);
    if (maximal->parsed()) return cmd_maximal(c, out);
    if (reproduce->parsed()) return cmd_reproduce(c, out, err);
    if (oracle->parsed()) return cmd_oracle_check(c, out, err);
    if (thm2->parsed()) return cmd_thm2(c, out, err);
  } catch (const Error& e) {
    err << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::UnknownPreset:
      case ErrorCode::DimensionMismatch: return kUsage;
      case ErrorCode::SelectionFailed:
      case ErrorCode::VerificationFailed: return kClaimFailure;
      default: return kEvaluation;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kEvaluation;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"hlmax"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hlmax::cli
