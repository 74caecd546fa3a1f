#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "cavityfm/farfield_data.hpp"

namespace cavityfm {

// svd:       singular values, right singular vectors
// fsharp:    Hermitian eigensystem of |Re F| + |Im F|
// svd_reim:  singular vectors with values |Re s| + |Im s|
enum class SpectralMode { svd, fsharp, svd_reim };
std::string mode_name(SpectralMode m);
SpectralMode parse_mode(const std::string& name);
SpectralMode default_mode(DataCase c);

struct SpectralSystem {
  SpectralMode mode = SpectralMode::svd;
  Eigen::VectorXd values;   // descending, nonnegative
  Eigen::MatrixXcd basis;   // columns psi_j; rho = basis^* h
};

// Components with value at or below floor_ratio * max are dropped from the Picard sum.
constexpr double kSpectralFloor = 1e-12;

// |A| = U |D| U^* for Hermitian A.
Eigen::MatrixXcd hermitian_abs(const Eigen::MatrixXcd& a);
// |Re F| + |Im F| with Re F = (F + F^*)/2, Im F = (F - F^*)/(2i).
Eigen::MatrixXcd fsharp(const Eigen::MatrixXcd& f);

SpectralSystem decompose(const Eigen::MatrixXcd& f, SpectralMode mode);

// Far-field pattern of Gamma(., z) p sampled on the data directions.
Eigen::VectorXcd build_test_vector(const ElasticMedium& medium, const DirectionSet& directions, DataCase data_case,
                                   const Vec2& z, const Vec2& p);

// [sum_j |rho_j|^2 / lambda_j]^{-1} over the retained components.
double indicator(const SpectralSystem& sys, const Eigen::VectorXcd& h, double floor_ratio = kSpectralFloor);

// Sample points x0 + (x1 - x0) i / (nx - 1); values are stored with x varying
// fastest, rows of increasing y.
struct SamplingGrid {
  double x0 = -3, x1 = 3, y0 = -3, y1 = 3;
  int nx = 101, ny = 101;
  double x(int i) const;
  double y(int j) const;
  Vec2 point(int i, int j) const { return Vec2(x(i), y(j)); }
  int size() const { return nx * ny; }
};

enum class Combine { single, sum_normalized };
std::string combine_name(Combine c);
Combine parse_combine(const std::string& name);

struct IndicatorGrid {
  SamplingGrid grid;
  DataCase data_case = DataCase::FF;
  std::vector<double> polarizations;        // angles
  Combine combine = Combine::single;
  std::vector<Eigen::VectorXd> per_polarization;
  Eigen::VectorXd values;                    // combined
  double value(int i, int j) const { return values(j * grid.nx + i); }
};

// single needs exactly one polarization; sum_normalized adds W_a / max W_a.
IndicatorGrid indicator_grid(const FarFieldMatrix& data, const SpectralSystem& sys, const SamplingGrid& grid,
                             const std::vector<double>& polarizations, Combine combine);

// CSV: "# key=value" comment lines, header "x,y,W", one row per sample point.
std::string format_indicator_csv(const IndicatorGrid& g, const std::vector<std::string>& comments = {});

}  // namespace cavityfm
