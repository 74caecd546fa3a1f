#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cavityfm/forward.hpp"

namespace cavityfm {

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// theta_j = a + (b - a) j / N for j = 1..N; the full aperture is [0, 2pi].
struct DirectionSet {
  DirectionSet(int count, double a = 0.0, double b = 2.0 * 3.14159265358979323846);
  int count;
  double a;
  double b;
  double angle(int j) const;  // j = 0..count-1 is direction number j + 1
  Vec2 direction(int j) const;
  std::vector<Vec2> directions() const;
  bool full() const;
};

enum class DataCase { FF, PP, SS, LA };
std::string case_name(DataCase c);
DataCase parse_case(const std::string& name);

enum class Scaling { weighted, raw };
std::string scaling_name(Scaling s);
Scaling parse_scaling(const std::string& name);

// Scene and acquisition description stored with each matrix.
struct DatasetInfo {
  DataCase data_case = DataCase::FF;
  int count = 64;
  double aperture_a = 0.0;
  double aperture_b = 2.0 * 3.14159265358979323846;
  double lambda = 1.0;
  double mu = 1.0;
  double omega = 1.0;
  int nodes = 128;
  std::string geometry;
  Scaling scaling = Scaling::weighted;
  double delta = 0.0;
  std::uint64_t seed = 0;

  DirectionSet directions() const { return DirectionSet(count, aperture_a, aperture_b); }
};

// FF and LA are 2N x 2N with blocks [[pp, ps], [sp, ss]]: row block is the
// observed wave, column block the incident wave. PP and SS are N x N. FF needs
// the full aperture, LA is the same layout on an arc, PP and SS accept either.
struct FarFieldMatrix {
  DatasetInfo info;
  Eigen::MatrixXcd entries;
};

// Plane-wave far-field matrix. With weighted scaling column block m' carries
// (2 pi e^{-i pi/4} / N) sqrt(k_m' / omega).
FarFieldMatrix synthesize(const ScatteringSolver& solver, const DirectionSet& directions, DataCase data_case,
                          Scaling scaling = Scaling::weighted, const std::string& geometry = "");

// Scene-level convenience that builds the solver.
FarFieldMatrix synthesize(const ElasticMedium& medium, const std::vector<BoundaryCurve>& curves,
                          const NodeSet& nodes, const DirectionSet& directions, DataCase data_case,
                          Scaling scaling = Scaling::weighted, const std::string& geometry = "");

// Reproducible standard normals: SplitMix64 on a counter, Box-Muller on
// consecutive pairs.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : seed_(seed) {}
  double uniform(std::uint64_t counter) const;  // in (0, 1)
  double normal(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
};

// F + delta ||F||_F (R1 + i R2) / ||R1 + i R2||_F. R1 takes normals 0..rc-1,
// R2 takes rc..2rc-1, both row-major. delta = 0 returns F untouched.
FarFieldMatrix add_noise(const FarFieldMatrix& matrix, double delta, std::uint64_t seed);

void save_dataset(const std::string& path, const FarFieldMatrix& matrix);
FarFieldMatrix load_dataset(const std::string& path);

// Text round trip used by save/load; `source` names the origin in errors.
std::string format_dataset(const FarFieldMatrix& matrix);
FarFieldMatrix parse_dataset(const std::string& text, const std::string& source = "<memory>");

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);
double parse_double(const std::string& text);

// Write to a sibling temporary file, then rename over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace cavityfm
