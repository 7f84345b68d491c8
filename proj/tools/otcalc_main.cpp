#include "otcalc/pipeline.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

struct Selectors {
  std::string config;
  std::string preset;
  std::string format;
  unsigned precision = 0;
  unsigned precision_cap = 0;
};

void add_selectors(CLI::App* cmd, Selectors& sel) {
  auto* config = cmd->add_option("--config", sel.config, "JSON config file")->check(CLI::ExistingFile);
  auto* preset = cmd->add_option("--preset", sel.preset, "preset name (see `otcalc presets`)");
  config->excludes(preset);
  cmd->add_option("--format", sel.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  cmd->add_option("--precision", sel.precision, "initial working precision in bits")->check(CLI::PositiveNumber);
  cmd->add_option("--precision-cap", sel.precision_cap, "refinement cap in bits")->check(CLI::PositiveNumber);
}

otcalc::RunConfig resolve(const Selectors& sel) {
  otcalc::RunConfig config;
  if (!sel.config.empty()) config = otcalc::load_config(sel.config);
  else if (!sel.preset.empty()) config = otcalc::preset_config(sel.preset);
  else throw otcalc::Error(otcalc::ErrorKind::ConfigError, "cli", "resolve", "one of --config or --preset is required");
  if (!sel.format.empty()) config.format = sel.format == "json" ? otcalc::OutputFormat::json : otcalc::OutputFormat::table;
  if (sel.precision) config.precision_bits = sel.precision;
  if (sel.precision_cap) config.precision_cap = sel.precision_cap;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"otcalc: cohomology of Oeljeklaus-Toma manifolds in exact arithmetic"};
  app.require_subcommand(1);

  Selectors compute_sel, verify_sel;
  std::string presets_format = "table";
  auto* compute = app.add_subcommand("compute", "Betti, Hodge and Bott-Chern tables with checks");
  add_selectors(compute, compute_sel);
  auto* verify = app.add_subcommand("verify", "run the invariant suites and print pass/fail per check");
  add_selectors(verify, verify_sel);
  auto* list = app.add_subcommand("presets", "list shipped presets");
  list->add_option("--format", presets_format, "table or json")->check(CLI::IsMember({"table", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << otcalc::list_presets(presets_format == "json" ? otcalc::OutputFormat::json
                                                                  : otcalc::OutputFormat::table);
      return 0;
    }
    if (compute->parsed()) {
      const auto config = resolve(compute_sel);
      const auto result = otcalc::run_compute(config);
      std::cout << otcalc::render_report(result, config);
      return 0;
    }
    const auto config = resolve(verify_sel);
    const auto report = otcalc::run_verify(config);
    std::cout << otcalc::render_verify(report, config.format);
    return report.all_passed() ? 0 : 1;
  } catch (const otcalc::Error& e) {
    std::cerr << otcalc::error_record(e) << "\n";
    return otcalc::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << otcalc::error_record(otcalc::Error(otcalc::ErrorKind::InternalInconsistency, "cli", "main", e.what()))
              << "\n";
    return 1;
  }
}
