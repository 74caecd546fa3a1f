#include "cavityfm/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace cavityfm::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = std::numbers::egamma;
constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 25.0;

void check_order(int order) {
  if (order != 0 && order != 1) {
    throw DomainError("cylinder function order must be 0 or 1, got " + std::to_string(order));
  }
}

void check_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError(std::string(what) + " needs a positive finite argument");
  }
}

// Ascending series; harmonic numbers enter the Y coefficients.
CylinderSet series(double x) {
  const double q = -0.25 * x * x;
  double term0 = 1.0;        // (-x^2/4)^k / (k!)^2
  double term1 = 1.0;        // (-x^2/4)^k / (k!(k+1)!)
  double harmonic = 0.0;     // H_k
  double j0 = 0.0, j1 = 0.0, s0 = 0.0, s1 = 0.0;
  for (int k = 0; k < 40; ++k) {
    const double next_harmonic = harmonic + 1.0 / (k + 1);
    j0 += term0;
    j1 += term1;
    s0 += harmonic * term0;
    s1 += (harmonic + next_harmonic) * term1;
    if (std::abs(term0) < 1e-18 * std::abs(j0) && std::abs(term1) < 1e-18 * std::abs(j1)) break;
    term0 *= q / ((k + 1.0) * (k + 1.0));
    term1 *= q / ((k + 1.0) * (k + 2.0));
    harmonic = next_harmonic;
  }
  const double half = 0.5 * x;
  const double log_part = std::log(half) + kEuler;
  CylinderSet out;
  out.j0 = j0;
  out.j1 = half * j1;
  out.y0 = (2.0 / kPi) * (log_part * out.j0 - s0);
  out.y1 = -2.0 / (kPi * x) + (2.0 / kPi) * log_part * out.j1 - half * s1 / kPi;
  return out;
}

// Miller backward recurrence normalized by J0 + 2*sum J_2k = 1.
CylinderSet backward_recurrence(double x) {
  int top = static_cast<int>(x) + 40;
  if (top % 2 != 0) ++top;
  double above = 0.0;      // J_{m+1}, unnormalized
  double current = 1e-30;  // J_m
  double norm = 0.0;       // J0 + 2 sum J_2k
  double y0_sum = 0.0;     // sum (-1)^k J_2k / k
  double y1_sum = 0.0;     // sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
  double j1 = 0.0;
  for (int m = top; m >= 1; --m) {
    const double below = (2.0 * m / x) * current - above;
    if (m % 2 == 0) {
      const int k = m / 2;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      norm += 2.0 * current;
      y0_sum += sign * current / k;
      y1_sum += sign * (below - above) / k;
    }
    if (m == 1) j1 = current;
    above = current;
    current = below;
    if (std::abs(current) > 1e250) {
      for (double* v : {&above, &current, &norm, &y0_sum, &y1_sum, &j1}) *v *= 1e-250;
    }
  }
  norm += current;
  const double j0 = current / norm;
  j1 /= norm;
  y0_sum /= norm;
  y1_sum /= norm;
  const double log_part = std::log(0.5 * x) + kEuler;
  CylinderSet out;
  out.j0 = j0;
  out.j1 = j1;
  out.y0 = (2.0 / kPi) * (log_part * j0 - 2.0 * y0_sum);
  out.y1 = -(2.0 / kPi) * (j0 / x - log_part * j1 - y1_sum);
  return out;
}

// Hankel's expansion; the phase is formed from sin x and cos x so the
// reduction of large arguments stays exact.
CylinderSet asymptotic(double x) {
  CylinderSet out;
  const double c = std::cos(x);
  const double s = std::sin(x);
  const double root_half = std::numbers::sqrt2 * 0.5;
  const double amplitude = std::sqrt(2.0 / (kPi * x));
  for (int order = 0; order <= 1; ++order) {
    const double mu = 4.0 * order * order;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double previous = 1e300;
    for (int k = 1; k < 200; ++k) {
      term *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
      const double size = std::abs(term);
      if (size > previous) break;
      previous = size;
      if (k % 2 == 1) {
        q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
      } else {
        p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
      }
      if (size < 1e-17) break;
    }
    // chi = x - pi/4 for order 0, x - 3pi/4 for order 1
    const double cos_chi = order == 0 ? root_half * (c + s) : root_half * (s - c);
    const double sin_chi = order == 0 ? root_half * (s - c) : -root_half * (s + c);
    const double jv = amplitude * (p * cos_chi - q * sin_chi);
    const double yv = amplitude * (p * sin_chi + q * cos_chi);
    if (order == 0) {
      out.j0 = jv;
      out.y0 = yv;
    } else {
      out.j1 = jv;
      out.y1 = yv;
    }
  }
  return out;
}

}  // namespace

CylinderSet cylinder_set(double x) {
  check_positive(x, "cylinder_set");
  if (x <= kSeriesLimit) return series(x);
  if (x <= kAsymptoticLimit) return backward_recurrence(x);
  return asymptotic(x);
}

double bessel_j(int order, double x) {
  check_order(order);
  if (!std::isfinite(x) || x < 0.0) throw DomainError("bessel_j needs a finite nonnegative argument");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const CylinderSet v = cylinder_set(x);
  return order == 0 ? v.j0 : v.j1;
}

double bessel_y(int order, double x) {
  check_order(order);
  check_positive(x, "bessel_y");
  const CylinderSet v = cylinder_set(x);
  return order == 0 ? v.y0 : v.y1;
}

std::complex<double> hankel1(int order, double x) {
  check_order(order);
  check_positive(x, "hankel1");
  const CylinderSet v = cylinder_set(x);
  return order == 0 ? v.h0() : v.h1();
}

}  // namespace cavityfm::specfun
