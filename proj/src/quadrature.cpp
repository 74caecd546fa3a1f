#include "cavityfm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cavityfm {

namespace {

void check_nodes(int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("quadrature needs an even positive node count");
}

// Both weight families depend only on (i - j) mod n.
template <class F>
Eigen::MatrixXd circulant(int n, F entry) {
  Eigen::VectorXd row(n);
  for (int d = 0; d < n; ++d) row(d) = entry(d);
  Eigen::MatrixXd w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w(i, j) = row((i - j + n) % n);
  }
  return w;
}

}  // namespace

Eigen::MatrixXd log_weights(int n) {
  check_nodes(n);
  const int half = n / 2;
  const double pi = std::numbers::pi;
  return circulant(n, [&](int d) {
    const double theta = 2.0 * pi * d / n;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::cos(m * theta) / m;
    return -(4.0 * pi / n) * sum - (4.0 * pi / (static_cast<double>(n) * n)) * std::cos(half * theta);
  });
}

Eigen::MatrixXd cotangent_weights(int n) {
  check_nodes(n);
  const int half = n / 2;
  const double pi = std::numbers::pi;
  return circulant(n, [&](int d) {
    const double theta = 2.0 * pi * d / n;
    double sum = 0.0;
    for (int m = 1; m < half; ++m) sum += std::sin(m * theta);
    return -(2.0 / n) * sum;
  });
}

}  // namespace cavityfm
