#include "yamabe/serialization.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace yamabe {

std::string format_number(double x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

Json number(double x, int digits) {
  if (!std::isfinite(x)) return format_number(x, digits);
  return std::strtod(format_number(x, digits).c_str(), nullptr);
}

namespace {

Json numbers(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number(x));
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Json to_json(const DimData& d) { return {{"k", d.k}, {"a", number(d.a)}, {"p", number(d.p)}}; }

Json to_json(const SphereData& s) {
  return {{"d", s.d}, {"volume", number(s.volume)}, {"scalar", number(s.scalar)}, {"yamabe", number(s.yamabe)}};
}

Json to_json(const ProductConstants& c) {
  Json j{{"m", c.m}, {"n", c.n}, {"A", number(c.A)}};
  j["B"] = c.B ? number(*c.B) : Json(nullptr);
  return j;
}

Json to_json(const BoundReport& b) {
  Json params = Json::object();
  for (const auto& [k, v] : b.parameters) params[k] = number(v);
  return {{"name", b.name}, {"lower", number(b.lower)}, {"upper", number(b.upper)}, {"formula", b.formula}, {"parameters", params}};
}

Json to_json(const SpectrumEntry& e) {
  return {{"value", number(e.value)}, {"multiplicity", e.multiplicity}, {"i", e.i}, {"j", e.j}};
}

Json to_json(const RadialIntegrals& r) {
  return {{"dirichlet", number(r.dirichlet)}, {"mass", number(r.mass)}, {"pnorm", number(r.pnorm)}};
}

Json to_json(const GroundState& g, bool with_profile) {
  Json j{{"m", g.m},
         {"n", g.n},
         {"p", number(g.p)},
         {"u0", number(g.u0)},
         {"alpha", number(g.alpha)},
         {"integrals", to_json(g.integrals)},
         {"tail", to_json(g.tail)},
         {"matching_radius", number(g.matching_radius)},
         {"max_residual", number(g.max_residual)},
         {"bisection_steps", g.bisection_steps}};
  if (with_profile) j["profile"] = {{"r", numbers(g.r)}, {"u", numbers(g.u)}, {"du", numbers(g.du)}};
  return j;
}

Json to_json(const PeriodicSolution& s, bool with_profile) {
  const OdeProblem& pr = s.problem;
  Json j{{"kind", to_string(s.kind)},
         {"length", number(pr.length)},
         {"scalar", number(pr.scalar)},
         {"a", number(pr.a)},
         {"p", number(pr.p)},
         {"lambda", number(pr.lambda)},
         {"volume_M", number(pr.volume_M)},
         {"energy", number(s.energy)},
         {"repetitions", s.repetitions},
         {"nodal_count", s.nodal_count},
         {"period", number(s.period)},
         {"u_min", number(s.u_min)},
         {"u_max", number(s.u_max)},
         {"p_mass", number(s.p_mass)},
         {"value", number(s.value)},
         {"period_monotone", s.period_monotone}};
  if (s.kind == SolutionKind::Nodal) j["lobe_value"] = number(s.lobe_value);
  if (s.has_profile()) {
    j["max_residual"] = number(s.max_residual);
    j["energy_drift"] = number(s.energy_drift);
    j["periodicity_error"] = number(s.periodicity_error);
    if (with_profile) j["profile"] = {{"x", numbers(s.x)}, {"w", numbers(s.w)}, {"dw", numbers(s.dw)}};
  }
  return j;
}

Json to_json(const NodalSearch& n, bool with_profile) {
  Json sols = Json::array();
  for (const auto& s : n.solutions) sols.push_back(to_json(s, with_profile));
  return {{"solutions", sols}, {"skipped", n.skipped}, {"monotone", n.monotone}};
}

Json to_json(const NYamabe& y, bool with_profile) {
  return {{"value", number(y.value)},
          {"candidate", y.candidate},
          {"argmin_j", y.argmin_j},
          {"witness", to_json(y.witness, with_profile)}};
}

Json to_json(const SweepResult& r) {
  Json recs = Json::array();
  for (const auto& x : r.records) {
    recs.push_back({{"t", number(x.t)},
                    {"length", number(x.length)},
                    {"first_N", number(x.first_N)},
                    {"second_N", number(x.second_N)},
                    {"lower", number(x.lower)},
                    {"upper", number(x.upper)},
                    {"lower_gap", number(x.lower_gap)},
                    {"upper_gap", number(x.upper_gap)},
                    {"first_candidate", x.first_candidate},
                    {"first_j", x.first_j},
                    {"second_j", x.second_j},
                    {"nodal_monotone", x.nodal_monotone},
                    {"skipped", x.skipped}});
  }
  Json lines = Json::array();
  for (const auto& l : r.reference_lines) lines.push_back({{"l", l.l}, {"value", number(l.value)}});
  return {{"label", r.label},
          {"m", r.m},
          {"k", r.k},
          {"target", number(r.target)},
          {"target_formula", r.target_formula},
          {"tolerance", number(r.tolerance)},
          {"final_gap", number(r.final_gap)},
          {"converged", r.converged},
          {"envelopes_ordered", r.envelopes_ordered},
          {"reference_lines", lines},
          {"warnings", r.warnings},
          {"records", recs}};
}

Json to_json(const StrictCheckReport& r) {
  Json recs = Json::array();
  for (const auto& x : r.records) {
    recs.push_back({{"t", number(x.t)},
                    {"first_N", number(x.first_N)},
                    {"second_N", number(x.second_N)},
                    {"bound", number(x.bound)},
                    {"margin", number(x.margin)},
                    {"holds", x.holds}});
  }
  return {{"m", r.m},
          {"k", r.k},
          {"threshold_t", r.threshold_t ? number(*r.threshold_t) : Json(nullptr)},
          {"holds_at_largest", r.holds_at_largest},
          {"records", recs}};
}

Json to_json(const CheckResult& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"measured", number(c.measured)}, {"tolerance", number(c.tolerance)}};
}

void write_csv(std::ostream& out, const CsvTable& table, unsigned long long seed) {
  out << "# schema=1\n# seed=" << seed << '\n';
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << csv_escape(table.header[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << '\n';
  }
}

CsvTable sweep_table(const SweepResult& r) {
  CsvTable t;
  t.comments = {"case=" + r.label, "target=" + format_number(r.target), "tolerance=" + format_number(r.tolerance),
                "converged=" + std::string(r.converged ? "true" : "false")};
  for (const auto& l : r.reference_lines)
    t.comments.push_back("reference_l" + std::to_string(l.l) + "=" + format_number(l.value));
  t.header = {"t", "length", "first_N", "second_N", "lower", "upper", "lower_gap", "upper_gap", "ratio_to_limit",
              "first_candidate", "first_j", "second_j"};
  for (const auto& x : r.records) {
    t.rows.push_back({format_number(x.t), format_number(x.length), format_number(x.first_N),
                      format_number(x.second_N), format_number(x.lower), format_number(x.upper),
                      format_number(x.lower_gap), format_number(x.upper_gap), format_number(x.upper / r.target),
                      x.first_candidate, std::to_string(x.first_j), std::to_string(x.second_j)});
  }
  return t;
}

CsvTable strict_check_table(const StrictCheckReport& r) {
  CsvTable t;
  t.comments = {"k=" + std::to_string(r.k),
                "threshold_t=" + (r.threshold_t ? format_number(*r.threshold_t) : std::string("none"))};
  t.header = {"t", "first_N", "second_N", "bound", "margin", "holds"};
  for (const auto& x : r.records) {
    t.rows.push_back({format_number(x.t), format_number(x.first_N), format_number(x.second_N),
                      format_number(x.bound), format_number(x.margin), x.holds ? "true" : "false"});
  }
  return t;
}

CsvTable bounds_table(const std::vector<BoundReport>& reports) {
  CsvTable t;
  t.header = {"name", "lower", "upper", "formula"};
  for (const auto& b : reports) t.rows.push_back({b.name, format_number(b.lower), format_number(b.upper), b.formula});
  return t;
}

CsvTable spectrum_table(const std::vector<SpectrumEntry>& entries) {
  CsvTable t;
  t.header = {"value", "multiplicity", "i", "j"};
  for (const auto& e : entries)
    t.rows.push_back({format_number(e.value), std::to_string(e.multiplicity), std::to_string(e.i), std::to_string(e.j)});
  return t;
}

CsvTable solutions_table(const std::vector<PeriodicSolution>& solutions) {
  CsvTable t;
  t.header = {"kind", "repetitions", "nodal_count", "energy", "period", "u_min", "u_max", "p_mass", "value", "lobe_value"};
  for (const auto& s : solutions) {
    t.rows.push_back({to_string(s.kind), std::to_string(s.repetitions), std::to_string(s.nodal_count),
                      format_number(s.energy), format_number(s.period), format_number(s.u_min),
                      format_number(s.u_max), format_number(s.p_mass), format_number(s.value),
                      format_number(s.lobe_value)});
  }
  return t;
}

CsvTable checks_table(const std::vector<CheckResult>& checks) {
  CsvTable t;
  t.header = {"name", "passed", "measured", "tolerance"};
  for (const auto& c : checks)
    t.rows.push_back({c.name, c.passed ? "true" : "false", format_number(c.measured), format_number(c.tolerance)});
  return t;
}

CsvTable key_value_table(const Json& object) {
  CsvTable t;
  t.header = {"key", "value"};
  for (auto it = object.begin(); it != object.end(); ++it) {
    const Json& v = it.value();
    if (v.is_structured() || v.is_null()) continue;
    std::string s;
    if (v.is_number_float()) {
      s = format_number(v.get<double>());
    } else if (v.is_string()) {
      s = v.get<std::string>();
    } else {
      s = v.dump();
    }
    t.rows.push_back({it.key(), s});
  }
  return t;
}

}  // namespace yamabe
