#pragma once

#include <optional>

#include "l1x/morphisms.hpp"

namespace l1x {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- configuration ---------------------------------------------------------

struct GroupSpec {
  std::string kind;  // cyclic | dihedral | symmetric | heisenberg_mod | product | integer
  int n = 0;
  std::vector<GroupSpec> factors;  // product only (exactly two)
};

struct ContextSpec {
  std::string type;  // full | diagonal
  int dim = 1;       // matrix dimension or point count
  std::vector<std::string> labels;
};

struct ActionSpec {
  std::string type;  // trivial | inner | permutation | dynamics
  std::vector<Matrix> unitaries;
  std::vector<std::vector<int>> perms;
  std::vector<int> sigma;
};

struct ElementEntry {
  std::int64_t g = 0;
  Matrix value;  // full matrix, or diagonal stored as d x 1
};
using ElementLiteral = std::vector<ElementEntry>;

struct CheckSpec {
  std::string name;  // hermitian | symmetric | morphisms | spectrum-of | dynamics-evidence
  ElementLiteral element;  // spectrum-of only
};

struct OutputSpec {
  std::string report_path;
  std::string spectra_csv;
};

struct ScenarioConfig {
  GroupSpec group;
  ContextSpec context;
  ActionSpec action;
  std::vector<CheckSpec> checks;
  int samples = 100;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  OutputSpec output;
};

bool operator==(const ScenarioConfig& a, const ScenarioConfig& b);

// Strict parser: JSON syntax, unknown keys rejected with the path of the
// offending key, invariants (samples >= 1, tol > 0) enforced. Throws
// ConfigError.
ScenarioConfig parse_config(const std::string& text);

// Canonical serialization of a config (alphabetical keys, shortest
// round-trip floats). parse_config(config_to_json(c)) == c.
std::string config_to_json(const ScenarioConfig& cfg);

// Realizes the configured system; ConfigError on invalid data.
SystemPtr build_system(const ScenarioConfig& cfg);

// Realizes an element literal over a system.
L1Element element_from_literal(const SystemPtr& sys, const ElementLiteral& lit);

// --- results ----------------------------------------------------------------

struct SpectraRow {
  std::int64_t sample = 0;
  cplx value;
  SpectrumMethod method = SpectrumMethod::left_mult;
};

struct CheckOutcome {
  std::string check;
  std::string status;  // pass | fail | evidence
  std::map<std::string, double> witnesses;
  std::map<std::string, std::int64_t> meta;
  std::vector<SpectraRow> spectra;
};

struct VerificationReport {
  std::string version;
  ScenarioConfig config;
  std::vector<CheckOutcome> results;
  bool all_passed = true;  // evidence checks do not count
  double timing_ms = 0;    // console only; serialized as null for reproducibility
};

// Runs every configured check; check failures are recorded, never thrown.
// Throws ConfigError for checks inapplicable to the system and ResourceError
// for dimension/memory caps.
VerificationReport run_scenario(const ScenarioConfig& cfg);

// Canonical JSON bytes; identical configs and seeds give identical output.
std::string report_to_json(const VerificationReport& rep);

// CSV dump: header sample_index,eigenvalue_re,eigenvalue_im,method
std::string spectra_to_csv(const VerificationReport& rep);

// Writes JSON (and CSV when csv_path nonempty). Paths override the ones in
// the config when nonempty.
void emit_report(const VerificationReport& rep, const std::string& json_path,
                 const std::string& csv_path);

}  // namespace l1x
