#pragma once

// JSON and CSV emitters. Numbers carry 12 significant digits; CSV tables
// start with `# schema=1` and `# seed=` comment rows.

#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "yamabe/constants.hpp"
#include "yamabe/experiments.hpp"
#include "yamabe/ground_state.hpp"
#include "yamabe/periodic.hpp"
#include "yamabe/spectra.hpp"

namespace yamabe {

using Json = nlohmann::ordered_json;

/// x rounded to `digits` significant digits; non-finite values become the
/// strings "inf", "-inf" and "nan".
Json number(double x, int digits = 12);
std::string format_number(double x, int digits = 12);

Json to_json(const DimData& d);
Json to_json(const SphereData& s);
Json to_json(const ProductConstants& c);
Json to_json(const BoundReport& b);
Json to_json(const SpectrumEntry& e);
Json to_json(const GroundState& g, bool with_profile = false);
Json to_json(const RadialIntegrals& r);
Json to_json(const PeriodicSolution& s, bool with_profile = false);
Json to_json(const NodalSearch& n, bool with_profile = false);
Json to_json(const NYamabe& y, bool with_profile = false);
Json to_json(const SweepResult& r);
Json to_json(const StrictCheckReport& r);
Json to_json(const CheckResult& c);

struct CsvTable {
  std::vector<std::string> comments;  ///< emitted as `# key=value` rows after schema and seed
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& out, const CsvTable& table, unsigned long long seed);

CsvTable sweep_table(const SweepResult& r);
CsvTable strict_check_table(const StrictCheckReport& r);
CsvTable bounds_table(const std::vector<BoundReport>& reports);
CsvTable spectrum_table(const std::vector<SpectrumEntry>& entries);
CsvTable solutions_table(const std::vector<PeriodicSolution>& solutions);
CsvTable checks_table(const std::vector<CheckResult>& checks);
/// Flattens scalar members of a JSON object into `key,value` rows.
CsvTable key_value_table(const Json& object);

}  // namespace yamabe
