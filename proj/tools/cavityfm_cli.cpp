#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavityfm/heatmap.hpp"
#include "cavityfm/runner.hpp"

namespace {

// CAVITYFM_THREADS caps the worker threads; results do not depend on it.
int apply_thread_setting() {
  const char* env = std::getenv("CAVITYFM_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1) {
    std::cerr << "cavityfm: CAVITYFM_THREADS must be a positive integer, got '" << env << "'\n";
    return cavityfm::exit_config;
  }
#ifdef _OPENMP
  omp_set_num_threads(static_cast<int>(n));
#endif
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& preset, const std::string& output_dir, bool quiet) {
  using namespace cavityfm;
  ScenarioConfig config;
  try {
    if (!preset.empty()) {
      config = parse_config(find_preset(preset).text, "preset " + preset);
    } else {
      config = load_config(config_path);
    }
    if (!output_dir.empty()) config.output_directory = output_dir;
  } catch (const ConfigError& e) {
    std::cerr << "cavityfm: config error: " << e.what() << '\n';
    return exit_config;
  }
  const RunResult r = run_scenario(config, quiet ? nullptr : &std::cerr);
  for (const auto& w : r.warnings) std::cerr << "cavityfm: warning: " << w << '\n';
  if (r.exit_code != exit_ok) {
    const char* kind = r.exit_code == exit_config ? "config error" : r.exit_code == exit_io ? "I/O error" : "numerical failure";
    std::cerr << "cavityfm: " << kind << ": " << r.message << '\n';
    return r.exit_code;
  }
  std::cout << r.csv_path << '\n';
  if (!r.dataset_path.empty()) std::cout << r.dataset_path << '\n';
  if (!r.heatmap_path.empty()) std::cout << r.heatmap_path << '\n';
  std::cout << r.manifest_path << '\n';
  return exit_ok;
}

int cmd_render(const std::string& csv, const std::string& pgm) {
  try {
    cavityfm::render_heatmap(csv, pgm);
  } catch (const std::exception& e) {
    std::cerr << "cavityfm: " << e.what() << '\n';
    return cavityfm::exit_io;
  }
  return cavityfm::exit_ok;
}

int cmd_presets(const std::string& show) {
  using namespace cavityfm;
  if (!show.empty()) {
    try {
      std::cout << find_preset(show).text;
    } catch (const ConfigError& e) {
      std::cerr << "cavityfm: " << e.what() << '\n';
      return exit_config;
    }
    return exit_ok;
  }
  std::cout << std::left << std::setw(20) << "name" << std::setw(6) << "case" << std::setw(10) << "omega"
            << std::setw(16) << "aperture" << "description\n";
  for (const auto& p : presets()) {
    const ScenarioConfig c = parse_config(p.text, p.name);
    std::cout << std::setw(20) << p.name << std::setw(6) << case_name(c.data_case) << std::setw(10) << p.omega
              << std::setw(16) << p.aperture << p.summary << '\n';
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic cavity scattering and factorization-method imaging"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cavityfm::kVersionString);

  std::string config_path, preset, output_dir;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run a scenario and write dataset, indicator CSV, heatmap and manifest");
  run->add_option("config", config_path, "Scenario config file");
  run->add_option("--preset", preset, "Run a built-in preset instead of a file");
  run->add_option("-o,--output-dir", output_dir, "Override [output] directory");
  run->add_flag("-q,--quiet", quiet, "No progress lines");

  std::string csv, pgm;
  auto* render = app.add_subcommand("render", "Render an indicator CSV as a grayscale PGM");
  render->add_option("csv", csv, "Indicator CSV")->required();
  render->add_option("pgm", pgm, "Output PGM path")->required();

  std::string show;
  auto* list = app.add_subcommand("presets", "List built-in scenarios");
  list->add_option("--show", show, "Print the config text of one preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cavityfm::exit_config;
  }

  if (const int rc = apply_thread_setting()) return rc;

  if (*run) {
    if (config_path.empty() == preset.empty()) {
      std::cerr << "cavityfm: run takes either a config path or --preset NAME\n";
      return cavityfm::exit_config;
    }
    return cmd_run(config_path, preset, output_dir, quiet);
  }
  if (*render) return cmd_render(csv, pgm);
  return cmd_presets(show);
}
