#pragma once

#include <complex>
#include <stdexcept>

namespace cavityfm::specfun {

// Raised for arguments outside the domain of a cylinder function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// J0, J1, Y0, Y1 evaluated together at one argument; the kernels almost
// always need all four.
struct CylinderSet {
  double j0 = 0.0;
  double j1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  std::complex<double> h0() const { return {j0, y0}; }
  std::complex<double> h1() const { return {j1, y1}; }
};

// Requires x > 0 and finite.
CylinderSet cylinder_set(double x);

// Orders 0 and 1 only. bessel_j accepts x = 0; the others need x > 0.
double bessel_j(int order, double x);
double bessel_y(int order, double x);
std::complex<double> hankel1(int order, double x);

}  // namespace cavityfm::specfun
