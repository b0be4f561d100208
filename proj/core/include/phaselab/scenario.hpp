#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "phaselab/errors.hpp"

namespace phaselab {

/// Every tolerance knob used by the scenario runner, with the module
/// defaults. The PHASE_LAB_DEFAULT_TOL environment variable, when set to a
/// positive number, replaces every default; explicit config entries win over
/// both.
struct Tolerances {
  double norm_tol = 1e-12;
  double orth_tol = 1e-8;
  double decomposition_tol = 1e-6;
  double phase_tol = 1e-8;
  double transport_tol = 1e-10;
  double cyclic_tol = 1e-6;
  double hermitian_tol = 1e-10;
  double identity_tol = 1e-12;

  /// Built-in defaults combined with the environment override.
  static Tolerances defaults();

  /// Set one named tolerance; throws ConfigError for unknown names or
  /// non-positive values.
  void set(const std::string& name, double value);
};

enum class Scenario {
  PhaseDecompose,
  CyclicAudit,
  ExcessPhase,
  Transport,
  CloningAudit,
  Histories,
  Convergence,
};

enum class OutputFormat { Json, Csv };

Scenario scenario_from_name(const std::string& name);
const char* to_string(Scenario s);

/// Parsed scenario configuration. Parsing is strict: unknown keys anywhere in
/// the document are rejected with ConfigError, as are non-positive
/// tolerances.
class ScenarioConfig {
 public:
  static ScenarioConfig parse(std::string_view json_text);

  Scenario scenario;
  std::string inputs_json;  ///< scenario-specific payload, canonical JSON
  Tolerances tolerances;
  std::uint64_t seed = 0;
  OutputFormat output_format = OutputFormat::Json;

  /// Canonical (sorted-key) serialization of the config as parsed.
  std::string canonical_json() const;
  /// FNV-1a hash of canonical_json(), as fixed-width hex.
  std::string hash() const;

 private:
  std::string canonical_;
};

/// A finished report in both output encodings. Building is deterministic:
/// identical (config, seed) reproduce both strings byte for byte.
struct RunReport {
  std::string json;
  std::string csv;

  const std::string& text(OutputFormat f) const {
    return f == OutputFormat::Json ? json : csv;
  }
};

/// Evaluate one scenario instance described by the config.
RunReport run(const ScenarioConfig& config);

/// Evaluate `count` seeded random instances of the scenario's invariant and
/// report max/mean residuals and violations. Not every scenario supports
/// randomized instances; unsupported ones throw ConfigError.
RunReport sweep(const ScenarioConfig& config, int count);

}  // namespace phaselab
