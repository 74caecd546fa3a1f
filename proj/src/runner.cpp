#include "cavityfm/runner.hpp"

#include <chrono>
#include <filesystem>
#include <ostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cavityfm/heatmap.hpp"

namespace cavityfm {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void say(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

std::string describe_geometry(const ScenarioConfig& c) {
  std::string s;
  for (std::size_t i = 0; i < c.scatterers.size(); ++i) {
    const auto& sc = c.scatterers[i];
    if (i) s += ';';
    s += sc.shape + "@" + format_double(sc.center.x()) + "," + format_double(sc.center.y()) + "x" +
         format_double(sc.scale);
  }
  return s;
}

void write_artifact(const std::string& path, const std::string& content) {
  try {
    write_file_atomic(path, content);
  } catch (const std::exception& e) {
    throw IoError(e.what());
  }
}

std::string manifest_text(const ScenarioConfig& c, const RunResult& r, double seconds) {
  std::ostringstream os;
  os << format_config(c) << "\n[run]\n";
  os << "version = " << kVersionString << '\n';
  os << "wall_time_seconds = " << format_double(seconds) << '\n';
  os << "threads = " << thread_count() << '\n';
  os << "spectral_mode = " << mode_name(c.spectral_mode()) << '\n';
  os << "spectral_floor = " << format_double(kSpectralFloor) << '\n';
  os << "condition_estimate = " << format_double(r.condition) << '\n';
  os << "exit_code = " << r.exit_code << '\n';
  std::string w;
  for (const auto& s : r.warnings) w += (w.empty() ? "" : "; ") + s;
  os << "warnings = " << (w.empty() ? "none" : w) << '\n';
  return os.str();
}

}  // namespace

void check_disjoint(const std::vector<BoundaryCurve>& curves) {
  const NodeSet probe(128);
  const NodeSet fine(1024);
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = 0; b < curves.size(); ++b) {
      if (a == b) continue;
      for (const auto& s : sample(curves[b], probe)) {
        bool inside = false;
        try {
          inside = point_in_cavity(s.x, curves[a], fine);
        } catch (const GeometryError&) {
          inside = true;
        }
        if (inside)
          throw GeometryError("scatterers " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " overlap");
      }
    }
  }
}

RunResult run_scenario(const ScenarioConfig& config, std::ostream* log) {
  namespace fs = std::filesystem;
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  try {
    validate(config);
    const auto curves = config.curves();
    try {
      check_disjoint(curves);
    } catch (const GeometryError& e) {
      throw ConfigError("scatterer", e.what());
    }
    if (!(config.lambda + config.mu > 0.0))
      result.warnings.push_back("lambda + mu <= 0: outside the admissible range of the theory");

    const fs::path dir(config.output_directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    result.manifest_path = (dir / "manifest.ini").string();
    result.csv_path = (dir / "indicator.csv").string();

    const ElasticMedium medium(config.lambda, config.mu, config.omega);
    say(log, "assembling boundary system (" + std::to_string(curves.size() * config.nodes * 2) + " unknowns)");
    const ScatteringSolver solver(medium, curves, NodeSet(config.nodes));
    result.condition = solver.condition_estimate();
    if (solver.ill_conditioned()) {
      result.warnings.push_back("boundary system is ill-conditioned (condition estimate " +
                                format_double(result.condition) + "); omega^2 may be near a Neumann eigenvalue");
      say(log, "warning: " + result.warnings.back());
      if (config.strict) throw NumericalError("ill-conditioned boundary system in strict mode");
    }

    say(log, "synthesizing " + case_name(config.data_case) + " far-field data");
    FarFieldMatrix data =
        synthesize(solver, config.direction_set(), config.data_case, config.scaling, describe_geometry(config));
    data = add_noise(data, config.delta, config.seed);
    if (config.write_dataset) {
      result.dataset_path = (dir / "dataset.txt").string();
      write_artifact(result.dataset_path, format_dataset(data));
    }

    say(log, "decomposing (" + mode_name(config.spectral_mode()) + ")");
    const SpectralSystem sys = decompose(data.entries, config.spectral_mode());
    say(log, "evaluating indicator on " + std::to_string(config.grid.size()) + " points");
    const IndicatorGrid grid = indicator_grid(data, sys, config.grid, config.polarizations, config.combine);

    std::vector<std::string> comments = {
        "scenario=" + config.name,
        "lambda=" + format_double(config.lambda),
        "mu=" + format_double(config.mu),
        "omega=" + format_double(config.omega),
        "directions=" + std::to_string(config.directions),
        "nodes=" + std::to_string(config.nodes),
        "delta=" + format_double(config.delta),
        "seed=" + std::to_string(config.seed),
        "mode=" + mode_name(config.spectral_mode()),
        "spectral_floor=" + format_double(kSpectralFloor),
    };
    const std::string csv = format_indicator_csv(grid, comments);
    write_artifact(result.csv_path, csv);
    if (config.write_heatmap) {
      result.heatmap_path = (dir / "heatmap.pgm").string();
      write_artifact(result.heatmap_path, render_pgm(parse_indicator_csv(csv, result.csv_path)));
    }
  } catch (const ConfigError& e) {
    result.exit_code = exit_config;
    result.message = e.what();
  } catch (const GeometryError& e) {
    result.exit_code = exit_config;
    result.message = e.what();
  } catch (const IoError& e) {
    result.exit_code = exit_io;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = exit_numerical;
    result.message = e.what();
  }

  if (!result.manifest_path.empty()) {
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
      write_file_atomic(result.manifest_path, manifest_text(config, result, seconds));
    } catch (const std::exception& e) {
      if (result.exit_code == exit_ok) {
        result.exit_code = exit_io;
        result.message = e.what();
      }
    }
  }
  return result;
}

RunResult run_config_file(const std::string& path, std::ostream* log) {
  ScenarioConfig config;
  try {
    config = load_config(path);
  } catch (const ConfigError& e) {
    RunResult r;
    r.exit_code = exit_config;
    r.message = e.what();
    return r;
  }
  return run_scenario(config, log);
}

}  // namespace cavityfm
