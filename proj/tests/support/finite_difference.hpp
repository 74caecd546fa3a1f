#pragma once

#include <Eigen/Dense>
#include <complex>

namespace oracle {

// Fourth-order central differences of a vector field; result(a, b) = d f_a / d x_b.
template <class Field>
Eigen::Matrix2cd jacobian(const Field& f, const Eigen::Vector2d& x, double h) {
  Eigen::Matrix2cd out;
  for (int b = 0; b < 2; ++b) {
    const Eigen::Vector2d e = h * Eigen::Vector2d::Unit(b);
    const Eigen::Vector2cd d = (-f(x + 2 * e) + 8.0 * f(x + e) - 8.0 * f(x - e) + f(x - 2 * e)) / (12.0 * h);
    out.col(b) = d;
  }
  return out;
}

}  // namespace oracle
