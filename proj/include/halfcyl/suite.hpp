#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "halfcyl/check_report.hpp"

namespace halfcyl {

/// Schema violation in a suite configuration (maps to exit status 2).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Profile { physical, full };

inline constexpr const char* kReportVersion = "1.0";

struct SuiteConfig
{
  std::vector<double> k_values{0.25, 0.5, 1.0, 1.5, 3.0};
  std::vector<double> theta_values{0.25, 0.5, 1.0};
  /// Used by the full profile; physical always projects with m_min = 0.
  std::vector<int> m_min_values{0, 1, 2};
  std::vector<int> l_values{1, 2, 3};
  int N = 64;
  int M = 16;
  double hbar = 1.0;
  /// Overrides by check name, by family, or "default".
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  int samples = 100;
  Profile profile = Profile::physical;

  /// k values that survive the profile filter.
  std::vector<double> effective_k() const;
  std::vector<int> effective_m_min() const;
};

/// Validates against the schema; throws ConfigError with a diagnostic.
SuiteConfig parse_suite_config(const nlohmann::json& j);
SuiteConfig parse_suite_config_text(const std::string& text);
nlohmann::json config_echo(const SuiteConfig& c);

/// Tolerance for a record: override by base name (after the last '/'), then by family,
/// then "default"; otherwise the record's own tolerance.
double tolerance_for(const SuiteConfig& config, const CheckRecord& record);

/// Runs every module suite over the config grid.  Cells run concurrently; the report
/// is assembled in a fixed order, so equal configs give equal reports.
CheckReport run_suite(const SuiteConfig& config);

nlohmann::json report_to_json(const CheckReport& report, const SuiteConfig& config);
/// Inverse of report_to_json for the checks and metrics.
CheckReport report_from_json(const nlohmann::json& j);

enum class SpectrumFormat { table, json };
/// hbar (k + n), n = 0..N, one value per line or as a JSON document.
std::string emit_spectrum(double k, int N, double hbar, SpectrumFormat format);
/// Values from the JSON form of emit_spectrum.
std::vector<double> parse_spectrum(const std::string& json_text);

} // namespace halfcyl
