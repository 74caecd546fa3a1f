#pragma once

#include <Eigen/Dense>

namespace cavityfm {

// Weights on the nodes t_j = 2 pi j / n (n even).

// int_0^{2pi} ln(4 sin^2((t_i - tau)/2)) f(tau) dtau  ~  sum_j R(i, j) f(t_j)
Eigen::MatrixXd log_weights(int n);

// PV (1/2pi) int_0^{2pi} cot((tau - t_i)/2) f(tau) dtau  ~  sum_j T(i, j) f(t_j)
Eigen::MatrixXd cotangent_weights(int n);

}  // namespace cavityfm
