#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cavityfm/geometry.hpp"

namespace cavityfm {

using cplx = std::complex<double>;
using Tensor2 = Eigen::Matrix2cd;
using CVec2 = Eigen::Vector2cd;

class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MediumCheck { permissive, strict };

namespace detail {
struct RadialTable;
}

// Lame constants and frequency. kp = omega/sqrt(lambda + 2 mu), ks = omega/sqrt(mu).
class ElasticMedium {
 public:
  // Throws KernelError unless mu > 0, lambda + 2 mu > 0, omega > 0; in strict
  // mode lambda + mu > 0 is also required.
  ElasticMedium(double lambda, double mu, double omega, MediumCheck check = MediumCheck::permissive);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double omega() const { return omega_; }
  double kp() const { return kp_; }
  double ks() const { return ks_; }
  bool satisfies_strict() const { return lambda_ + mu_ > 0.0; }

  const detail::RadialTable& table() const { return *table_; }

 private:
  double lambda_, mu_, omega_, kp_, ks_;
  std::shared_ptr<const detail::RadialTable> table_;
};

// gamma_j(v) = (1/pi) ln(v) xi + chi + strong / v^2
struct KernelSplit {
  double v = 0.0;
  int j = 1;
  int k = 0;  // -1 for the undifferentiated gamma_j
  double xi = 0.0;
  cplx chi;
  cplx strong;
};

// Radial coefficient functions:
//   k = -1: gamma_j,  k = 0: gamma_j / v^2,  k = 1: gamma_j' / v,  k = 2: gamma_j''.
cplx gamma_coeff(const ElasticMedium& medium, int j, int k, double v);
cplx gamma_base(const ElasticMedium& medium, int j, double v);
// Elastostatic counterparts; the log in the j = 1, k <= 0 entries is kept.
double gamma_static(const ElasticMedium& medium, int j, int k, double v);

KernelSplit split_coeff(const ElasticMedium& medium, int j, int k, double v);
KernelSplit split_base(const ElasticMedium& medium, int j, double v);

// All eight radial functions at one separation, sharing one Bessel evaluation.
// Slot of (j, k) is 2 (k + 1) + (j - 1).
struct RadialBundle {
  std::array<cplx, 8> gamma;
  std::array<KernelSplit, 8> split;
  static constexpr int slot(int j, int k) { return 2 * (k + 1) + (j - 1); }
};
RadialBundle radial_bundle(const ElasticMedium& medium, double v);

// Below this separation the smooth parts come from truncated series.
double series_threshold(const ElasticMedium& medium);

Eigen::Matrix2d unit_projector(const Vec2& r);

Tensor2 fundamental(const ElasticMedium& medium, const Vec2& x, const Vec2& y);
Eigen::Matrix2d fundamental_static(const ElasticMedium& medium, const Vec2& x, const Vec2& y);

enum class Branch { p, s };
Tensor2 farfield_tensor(const ElasticMedium& medium, const Vec2& xhat, const Vec2& y, Branch branch);

// jacobian(a, b) = d v_a / d x_b
CVec2 traction_of_field(const ElasticMedium& medium, const Eigen::Matrix2cd& jacobian, const Vec2& nu);

// Geometric factors of the traction kernels. M uses the normal at its first
// argument; N uses both normals.
Eigen::Matrix2d kernel_matrix_M(const ElasticMedium& medium, int j, int k, const Vec2& x, const Vec2& y,
                                const Vec2& nu_x);
Eigen::Matrix2d kernel_matrix_N(const ElasticMedium& medium, int j, int k, const Vec2& x, const Vec2& y,
                                const Vec2& nu_x, const Vec2& nu_y);

// Kprime: T_nu(x) Gamma(x,y);  K: [T_nu(y) Gamma(x,y)]^T;  N: T_nu(x) of the K kernel.
enum class KernelOperator { Kprime, K, N };

Tensor2 traction_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                        const Vec2& nu_x, const Vec2& nu_y);
Eigen::Matrix2d static_traction_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x,
                                       const Vec2& y, const Vec2& nu_x, const Vec2& nu_y);
Tensor2 difference_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                          const Vec2& nu_x, const Vec2& nu_y);

// difference_kernel = (1/pi) ln(v) log_factor + smooth.
struct DifferenceSplit {
  Tensor2 log_factor;
  Tensor2 smooth;
};
DifferenceSplit difference_split(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                                 const Vec2& nu_x, const Vec2& nu_y);
DifferenceSplit difference_split(KernelOperator op, const ElasticMedium& medium, const RadialBundle& radial,
                                 const Vec2& x, const Vec2& y, const Vec2& nu_x, const Vec2& nu_y);

}  // namespace cavityfm
