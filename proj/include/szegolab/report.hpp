#pragma once

// Run configuration shared by the CLI subcommands, the canned identity-check
// set, the full pipeline runner, and report emission in JSON, CSV and
// markdown.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "szegolab/cache.hpp"
#include "szegolab/irregularity.hpp"
#include "szegolab/projection.hpp"
#include "szegolab/symbolic.hpp"

namespace szegolab {

struct RunConfig {
  WeightParams params;
  PrecCtx precision;
  std::string cache_dir;
  std::string format = "json";  // json | csv | markdown
  std::string out;              // empty writes to stdout
  std::string weight_kind = "paper";  // paper | poly2 (contrast hook)
  int j = 0;
  std::vector<double> p_list = {4.0 / 3.0, 2.0, 4.0};
  std::vector<int> n_list = {16, 64, 256, 1024, 4096};
  int max_order = 8;
  unsigned grid_size = 10000;
  int table_n_max = 16;
  ScanOptions scan;

  void validate() const;
  std::unique_ptr<RadialWeightModel> make_weight() const;
};

struct LiftNormCase {
  std::string name;
  double p = 0;
  LiftNormResult result;
  bool pass = false;
};

struct LiftProjectionCase {
  std::string name;
  LiftProjectionResult result;
  bool pass = false;
};

struct IdentityCheckResults {
  ConsistencyReport inflation;
  std::vector<LiftNormCase> lift_norms;
  std::vector<LiftProjectionCase> lift_projections;
  double norm_tolerance = 1e-12;
  double projection_tolerance = 1e-10;
  bool all_pass = true;
};

// The canned identity set: inflation consistency on {0..8}x{0..4}, the lift
// norm identity at p = 2 and p = 4, and the lift projection identity on
// holomorphic, mixed and antiholomorphic inputs.
IdentityCheckResults run_identity_checks(const RunConfig& config);

struct Provenance {
  std::string version;
  unsigned significand_bits = 0;
  double target_rel_err = 0;
  std::string timestamp;
  std::vector<std::pair<std::string, double>> runtimes_sec;
};

struct FullReport {
  WeightParams params;
  PseudoconvexityResult pseudoconvexity;
  std::optional<DzCertificate> certificate;
  std::string certificate_note;  // set when params fall outside the symbolic ring
  IdentityCheckResults identities;
  std::vector<IrregularityReport> scans;
  Provenance provenance;
  bool overall_pass = false;
};

FullReport run_full_report(const RunConfig& config);

std::string irregularity_to_json(const IrregularityReport& rep);
std::string irregularity_to_csv(const IrregularityReport& rep);
std::string consistency_to_json(const ConsistencyReport& rep);
std::string identity_checks_to_json(const IdentityCheckResults& res);
std::string moment_table_to_csv(const MomentTable& table);
std::string moment_table_to_json(const MomentTable& table);

std::string report_to_json(const FullReport& rep);
std::string report_to_csv(const FullReport& rep);
std::string report_to_markdown(const FullReport& rep);

// Writes to config.out or stdout.
void emit_output(const RunConfig& config, const std::string& payload);

}  // namespace szegolab
