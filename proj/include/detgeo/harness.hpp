#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "detgeo/cocycles.hpp"

namespace detgeo {

inline constexpr const char* kVersion = "0.1.0";

/// Verification suites. Each one draws its own per-trial random streams, so
/// selecting a subset never shifts another suite's instances.
enum class SuiteId {
  schatten,    // Hoelder inequality and norm identities
  regdet,      // det_2 closed form, det_1 degeneration, multiplicative anomaly
  preline,     // fiber cocycle rule and twist compatibility under products
  connection,  // internal consistency of the connection form
  descent,     // connection values match across the bundle action
  curvature,   // d(connection) vs curvature, structure equation
  closedness,  // d(curvature) = 0 on three-parameter families
  cocycle,     // two-cocycle condition, equivalence of the cocycle forms
  coboundary,  // cocycle difference is the coboundary of b; b via connection
  identities,  // involution block identities, frame coordinate identities
  dlogf,       // derivative formula for the fiber cocycle
};

struct SuiteConfig {
  Index dim_plus = 6;
  Index dim_minus = 6;
  int trials = 100;
  std::uint64_t seed = 42;
  double tol_exact = 1e-9;
  double tol_fd = 1e-5;
  double fd_step = 1e-3;
  std::vector<SuiteId> suites;
};

struct WorstCase {
  int trial = -1;
  double residual = 0.0;
  nlohmann::json inputs;
};

struct SuiteResult {
  SuiteId id{};
  std::string name;
  int trials = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  WorstCase worst;
  std::string note;  // set when a suite died on a numerical-instability error
};

struct SuiteReport {
  std::string version;
  SuiteConfig config;
  std::vector<SuiteResult> suites;
  bool pass = false;
};

const char* suite_name(SuiteId id);

/// Parses a suite token; accepts the legacy aliases appendixA (identities)
/// and appendixB (dlogf). Returns nullopt for unknown tokens.
std::optional<SuiteId> suite_from_name(std::string_view name);

std::vector<SuiteId> all_suites();

/// Suites whose residuals come from finite differencing use tol_fd; the
/// algebraically exact ones use tol_exact.
bool suite_uses_fd_tolerance(SuiteId id);

/// One trial of one suite. Random streams are keyed by (suite, trial) from
/// the config seed, so a single trial can be replayed in isolation. When
/// `capture` is non-null the sampled inputs are stored into it as JSON.
double run_suite_trial(SuiteId id, int trial, const SuiteConfig& cfg,
                       nlohmann::json* capture);

SuiteReport run_suites(const SuiteConfig& cfg);

nlohmann::json report_to_json(const SuiteReport& report);

/// Writes the report as JSON; "-" (or empty) writes to stdout.
void emit_report(const SuiteReport& report, const std::string& path);

}  // namespace detgeo
