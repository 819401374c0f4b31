#pragma once

// JSON serialization of analysis results and CSV ingestion.
//
// Empty intervals and infinite quantities serialize as null; finite doubles
// use shortest round-trip formatting, so to_json/from_json pairs are lossless.

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "neocalc/fuzzy_derivatives.hpp"
#include "neocalc/interval.hpp"
#include "neocalc/reference_oracles.hpp"
#include "neocalc/sequence_limits.hpp"

namespace neocalc::report {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "neocalc/1";

/// null for NaN or infinite values.
Json number(double v);
/// null reads back as +inf.
double number_from(const Json& j);

Json to_json(const Interval& v);
Interval interval_from_json(const Json& j);
Json to_json(const std::vector<Interval>& v);

Json to_json(const TailBounds& v);
TailBounds tail_bounds_from_json(const Json& j);

Json to_json(const LimitReport& v);
LimitReport limit_report_from_json(const Json& j);

Json to_json(const QuotientBounds& v);
QuotientBounds quotient_bounds_from_json(const Json& j);

Json to_json(const DerivativeReport& v);
Json to_json(const ProfilePoint& v);
Json to_json(const oracle::OracleVerdict& v);

struct Warning {
  std::string code;
  std::string paper_note;
};
Json to_json(const Warning& w);

/// One value per line, optional header line "value"; blank lines are skipped.
/// Throws ParseError with the offending line number.
std::vector<double> read_sequence_csv(std::istream& in);
/// "x,y" rows, optional header "x,y". Throws ParseError.
std::pair<std::vector<double>, std::vector<double>> read_samples_csv(std::istream& in);

}  // namespace neocalc::report
