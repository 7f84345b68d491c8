#pragma once

// Configuration, presets and the field -> OT datum -> tables -> checks run.

#include "otcalc/cohomology.hpp"
#include "otcalc/error.hpp"

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace otcalc {

enum class OutputFormat { table, json };

struct RunConfig {
  std::optional<std::string> preset;
  std::vector<Integer> field;
  std::vector<std::vector<Integer>> units;
  std::optional<RationalMatrix> integral_basis;
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned precision_cap = kDefaultPrecisionCap;
  int rank_threshold_log2 = -40;
  std::set<std::string> compute = {"betti", "hodge", "bottchern", "checks"};
  OutputFormat format = OutputFormat::table;
};

/// Errors: ConfigError (including malformed JSON), UnknownPreset.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

struct Preset {
  std::string name;
  std::string description;
  std::vector<long> coefficients;
  std::vector<std::vector<long>> units;
  int s = 0;
  int t = 0;
  std::vector<std::size_t> expected_betti;
  Table expected_hodge;     // [p][q]
  Table expected_bc;        // [p][q], closed form
  std::vector<long> expected_at_deficiency;
};

const std::vector<Preset>& presets();
/// Errors: UnknownPreset (message lists the available names).
const Preset& find_preset(const std::string& name);
RunConfig preset_config(const std::string& name);

/// Field, embeddings and OT datum for a config (preset resolved).
OTStructure prepare(const RunConfig& config);

struct ComputeResult {
  OTStructure ot;
  AdmissibleSet characters;
  CohomologyReport report;
};

ComputeResult run_compute(const RunConfig& config);
std::string render_report(const ComputeResult& result, const RunConfig& config);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string field;
  int s = 0;
  int t = 0;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

VerifyReport run_verify(const RunConfig& config);
std::string render_verify(const VerifyReport& report, OutputFormat format);

std::string list_presets(OutputFormat format);

/// One-line JSON error record with kind, module, operation, message and exit code.
std::string error_record(const Error& error);

}  // namespace otcalc
