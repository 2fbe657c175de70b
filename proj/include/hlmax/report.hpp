#pragma once

// JSON, CSV and plain-table renderings of the library's result types.

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hlmax/dichotomy.hpp"
#include "hlmax/gallery.hpp"
#include "hlmax/maximal.hpp"
#include "hlmax/numeric.hpp"

namespace hlmax {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace report {

/// Non-finite doubles become strings so the output stays valid JSON.
inline Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline std::string num_text(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline Json to_json(const Quantity& q) {
  Json j;
  j["value"] = number(q.to_double());
  j["log"] = number(q.log());
  if (q.is_exact()) {
    j["exact"] = rational_to_string(*q.exact());
  } else {
    j["exact"] = nullptr;
  }
  return j;
}

inline Json to_json(const Point& p) {
  Json j = Json::array();
  for (int i = 0; i < p.dim; ++i) j.push_back(number(p[i]));
  return j;
}

inline Json to_json(const Ball& b) {
  return Json{{"center", to_json(b.center)}, {"radius", number(b.radius)}, {"metric", to_string(b.metric)}};
}

inline Json to_json(const AverageRecord& r) {
  return Json{{"ball", to_json(r.ball)},
              {"mass", to_json(r.mass)},
              {"integral", to_json(r.integral)},
              {"average", to_json(r.average)},
              {"log_domain", r.log_domain}};
}

inline Json to_json(const CenteredResult& r) {
  Json series = Json::array();
  for (const auto& rec : r.series) series.push_back(to_json(rec));
  return Json{{"mode", "CENTERED"}, {"sup", to_json(r.sup)}, {"argmax_radius", number(r.argmax_radius)},
              {"series", series}};
}

inline Json to_json(const NoncenteredResult& r) {
  return Json{{"mode", "NONCENTERED"},
              {"sup", to_json(r.sup)},
              {"best", to_json(r.best)},
              {"balls", r.balls},
              {"lower_bound_only", r.lower_bound_only}};
}

inline Json to_json(const RatioSeries& s) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    rows.push_back(Json{{"r", number(s.r[i])}, {"ratio", to_json(s.ratios[i])}});
  }
  return Json{{"y0", to_json(s.y0)},
              {"series", rows},
              {"tail_limsup", to_json(s.tail_limsup)},
              {"tail_fraction", s.tail_fraction},
              {"tail_count", s.tail_count}};
}

inline Json to_json(const GrowthReport& g) {
  Json vals = Json::array();
  for (std::size_t i = 0; i < g.schedule.size(); ++i) {
    vals.push_back(Json{{"r", number(g.schedule[i])}, {"value", to_json(g.values[i])}});
  }
  return Json{{"point", to_json(g.point)},
              {"mode", to_string(g.mode)},
              {"classification", to_string(g.classification)},
              {"growth_slope", number(g.growth_slope)},
              {"sup_observed", to_json(g.sup_observed)},
              {"threshold", number(g.threshold)},
              {"lower_bound_only", g.lower_bound_only},
              {"values", vals}};
}

inline Json to_json(const ScanResult& s) {
  Json reps = Json::array();
  for (const auto& g : s.reports) reps.push_back(to_json(g));
  return Json{{"bounded", s.summary.bounded},
              {"divergent", s.summary.divergent},
              {"bounded_sampled_mass", to_json(s.summary.bounded_sampled_mass)},
              {"violation", s.summary.violation},
              {"reports", reps}};
}

inline Json to_json(const ClaimReport& c) {
  Json params = Json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  Json j{{"example", c.example},      {"claim", c.claim},       {"params", params},
         {"computed", to_json(c.computed)}, {"bound", to_json(c.bound)}, {"relation", c.relation},
         {"margin_log", number(c.margin_log)}, {"pass", c.pass}, {"log_domain", c.log_domain}};
  if (c.error) j["error"] = *c.error;
  return j;
}

inline Json to_json(const std::vector<ClaimReport>& claims) {
  Json arr = Json::array();
  for (const auto& c : claims) arr.push_back(to_json(c));
  return arr;
}

inline Json to_json(const Table1& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    rows.push_back(Json{{"example", to_string(r.id)},
                        {"dp_noncentered", r.dp_m},
                        {"dp_centered", r.dp_mc},
                        {"expected_noncentered", r.expected_m},
                        {"expected_centered", r.expected_mc},
                        {"match", r.matches()},
                        {"noncentered_scan", to_json(r.m_scan)},
                        {"centered_scan", to_json(r.mc_scan)}});
  }
  return Json{{"threshold_line", t.threshold_line},
              {"threshold_lattice", t.threshold_lattice},
              {"matches", t.matches()},
              {"rows", rows}};
}

inline Json to_json(const WitnessSequence& w) {
  Json rows = Json::array();
  for (std::size_t k = 0; k < w.a.size(); ++k) {
    rows.push_back(
        Json{{"a", number(w.a[k])}, {"inner_mass", to_json(w.inner_mass[k])}, {"outer_mass", to_json(w.outer_mass[k])}});
  }
  return Json{{"found", w.found()}, {"sequence", rows}};
}

inline Json to_json(const Theorem2Witness& w) {
  Json levels = Json::array();
  for (std::size_t i = 0; i < w.j.size(); ++i) {
    levels.push_back(Json{{"n", i + 1},
                          {"j", w.j[i]},
                          {"k", w.k[i]},
                          {"a_k", number(w.a[static_cast<std::size_t>(w.k[i] - 1)])},
                          {"sector_mass", to_json(w.sector[i])},
                          {"ball_mass", to_json(w.ball[i])}});
  }
  return Json{{"phi0", number(w.phi0)}, {"phi0_width", number(w.phi0_width)}, {"levels", levels}};
}

inline Json to_json(const Theorem2Check& c) {
  return Json{{"n", c.n},
              {"radius", number(c.radius)},
              {"value", to_json(c.value)},
              {"bound", to_json(c.bound)},
              {"relation", c.lower ? ">=" : "<="},
              {"pass", c.pass}};
}

inline Json to_json(const Theorem2Report& r) {
  Json centers = Json::array();
  for (const auto& p : r.bump_centers) centers.push_back(to_json(p));
  Json near = Json::array();
  for (const auto& c : r.near) near.push_back(to_json(c));
  Json far = Json::array();
  for (const auto& c : r.far) far.push_back(to_json(c));
  return Json{{"function", r.f.name()},
              {"bump_centers", centers},
              {"c_constant", to_json(r.c_constant)},
              {"n_tilde", number(r.n_tilde)},
              {"n0", r.n0},
              {"near", near},
              {"far", far},
              {"pass", r.pass}};
}

/// Top-level envelope shared by every command.
inline Json document(const std::string& kind, Json data) {
  return Json{{"schema", kSchemaVersion}, {"kind", kind}, {"data", std::move(data)}};
}

// ---- CSV --------------------------------------------------------------------

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string exact_text(const Quantity& q) { return q.is_exact() ? rational_to_string(*q.exact()) : ""; }

inline void write_csv(std::ostream& os, const RatioSeries& s) {
  os << "r,ratio,log_ratio,exact\n";
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    os << num_text(s.r[i]) << ',' << num_text(s.ratios[i].to_double()) << ',' << num_text(s.ratios[i].log()) << ','
       << exact_text(s.ratios[i]) << '\n';
  }
}

inline void write_csv(std::ostream& os, const std::vector<AverageRecord>& recs) {
  os << "center_x,center_y,radius,metric,mass,integral,average,log_average,log_domain\n";
  for (const auto& r : recs) {
    os << num_text(r.ball.center[0]) << ',' << (r.ball.dim() == 2 ? num_text(r.ball.center[1]) : "") << ','
       << num_text(r.ball.radius) << ',' << to_string(r.ball.metric) << ',' << num_text(r.mass.to_double()) << ','
       << num_text(r.integral.to_double()) << ',' << num_text(r.average.to_double()) << ','
       << num_text(r.average.log()) << ',' << (r.log_domain ? "true" : "false") << '\n';
  }
}

inline void write_csv(std::ostream& os, const GrowthReport& g) {
  os << "r,value,log_value,classification\n";
  for (std::size_t i = 0; i < g.schedule.size(); ++i) {
    os << num_text(g.schedule[i]) << ',' << num_text(g.values[i].to_double()) << ',' << num_text(g.values[i].log())
       << ',' << to_string(g.classification) << '\n';
  }
}

inline std::string params_text(const ClaimReport& c) {
  std::string out;
  for (const auto& [k, v] : c.params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<ClaimReport>& claims) {
  os << "example,claim,params,computed,bound,relation,margin_log,pass,log_domain,error\n";
  for (const auto& c : claims) {
    os << c.example << ',' << c.claim << ',' << csv_field(params_text(c)) << ',' << num_text(c.computed.to_double())
       << ',' << num_text(c.bound.to_double()) << ',' << c.relation << ',' << num_text(c.margin_log) << ','
       << (c.pass ? "true" : "false") << ',' << (c.log_domain ? "true" : "false") << ','
       << csv_field(c.error.value_or("")) << '\n';
  }
}

inline void write_csv(std::ostream& os, const Table1& t) {
  os << "example,dp_noncentered,dp_centered,expected_noncentered,expected_centered,match\n";
  for (const auto& r : t.rows) {
    os << to_string(r.id) << ',' << r.dp_m << ',' << r.dp_mc << ',' << r.expected_m << ',' << r.expected_mc << ','
       << r.matches() << '\n';
  }
}

// ---- tables -----------------------------------------------------------------

inline std::string mark(bool b) { return b ? "yes" : "no"; }

inline void write_table(std::ostream& os, const Table1& t) {
  os << std::left << std::setw(8) << "example" << std::setw(8) << "DP(M)" << std::setw(10) << "DP(M^c)"
     << "expected\n";
  for (const auto& r : t.rows) {
    os << std::setw(8) << to_string(r.id) << std::setw(8) << mark(r.dp_m) << std::setw(10) << mark(r.dp_mc) << '('
       << mark(r.expected_m) << ',' << mark(r.expected_mc) << ")" << (r.matches() ? "" : "  MISMATCH") << '\n';
  }
}

inline void write_table(std::ostream& os, const std::vector<ClaimReport>& claims) {
  for (const auto& c : claims) {
    os << (c.pass ? "PASS " : "FAIL ") << c.example << ' ' << c.claim;
    if (!c.params.empty()) os << " [" << params_text(c) << ']';
    if (c.error) {
      os << " error: " << *c.error << '\n';
      continue;
    }
    os << "  " << std::setprecision(10) << c.computed.to_double() << ' ' << c.relation << ' '
       << c.bound.to_double() << "  margin_log=" << std::setprecision(6) << c.margin_log << '\n';
  }
}

inline void write_table(std::ostream& os, const RatioSeries& s) {
  for (std::size_t i = 0; i < s.r.size(); ++i) {
    os << std::setw(8) << num_text(s.r[i]) << "  " << std::setprecision(12) << s.ratios[i].to_double() << '\n';
  }
  os << "tail limsup " << std::setprecision(12) << s.tail_limsup.to_double() << '\n';
}

inline void write_table(std::ostream& os, const std::vector<AverageRecord>& recs) {
  for (const auto& r : recs) {
    os << "r=" << std::setw(8) << std::left << num_text(r.ball.radius) << std::right << "  avg "
       << std::setprecision(12) << r.average.to_double() << "  mass " << r.mass.to_double() << '\n';
  }
}

}  // namespace report
}  // namespace hlmax
