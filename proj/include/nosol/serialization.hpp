#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nosol/certificate.hpp"
#include "nosol/constructions.hpp"
#include "nosol/rate_toolkit.hpp"

namespace nosol {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

/// Exact integers travel as decimal strings.
Json int_array(std::span<const Int> values);
std::vector<Int> parse_int_array(const Json& j);
Int parse_int(const Json& j);

Json equation_json(const Equation& eq);
Equation equation_from_json(const Json& j);

Json rate_json(const Rate& r);
Json certificate_json(const Certificate& cert);
/// Throws PreconditionError on malformed or inconsistent input.
Certificate certificate_from_json(const Json& j);

Json dependency_json(const Dependency& d);
Json outcome_json(const ThreeCoefficientOutcome& o);
Json alpha_json(const AlphaParams& p);
Json epsilon_json(const EpsilonThresholds& t);
Json sweep_json(const SweepReport& r);
Json rate_report_json(const RateReport& r);

/// Write via a temporary file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);
/// One decimal integer per line; blank lines and '#' comments are skipped.
std::vector<Int> parse_integer_lines(const std::string& text);

}  // namespace nosol
