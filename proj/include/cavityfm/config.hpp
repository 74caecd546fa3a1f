#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavityfm/factorization.hpp"
#include "cavityfm/geometry.hpp"

namespace cavityfm {

// Invalid scenario; `field()` names the offending key as section.key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Arithmetic on numbers and pi: + - * / parentheses, unary minus.
double evaluate_expression(const std::string& text);

struct ScattererSpec {
  std::string shape = "circle";
  std::vector<double> params;  // empty: shape defaults
  Vec2 center = Vec2::Zero();
  double scale = 1.0;

  BoundaryCurve curve() const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  DataCase data_case = DataCase::FF;
  bool strict = false;

  double lambda = 1.0;
  double mu = 1.0;
  double omega = 1.0;

  std::vector<ScattererSpec> scatterers;

  int directions = 64;
  int nodes = 128;
  double aperture_a = 0.0;
  double aperture_b = 2.0 * 3.14159265358979323846;
  double delta = 0.1;
  std::uint64_t seed = 1;
  Scaling scaling = Scaling::weighted;

  std::optional<SpectralMode> mode;  // unset: per-case default
  Combine combine = Combine::sum_normalized;
  std::vector<double> polarizations;

  SamplingGrid grid;

  std::string output_directory = "out";
  bool write_dataset = true;
  bool write_heatmap = true;

  SpectralMode spectral_mode() const { return mode.value_or(default_mode(data_case)); }
  DirectionSet direction_set() const { return DirectionSet(directions, aperture_a, aperture_b); }
  std::vector<BoundaryCurve> curves() const;
};

ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");
ScenarioConfig load_config(const std::string& path);
// Canonical text; parse_config(format_config(c)) reproduces c exactly.
std::string format_config(const ScenarioConfig& config);
// Throws ConfigError on the first invalid field.
void validate(const ScenarioConfig& config);

struct Preset {
  std::string name;
  std::string summary;
  std::string omega;     // as written in the config
  std::string aperture;  // "full" or "(a, b)"
  std::string text;      // config source
};

const std::vector<Preset>& presets();
const Preset& find_preset(const std::string& name);

}  // namespace cavityfm
