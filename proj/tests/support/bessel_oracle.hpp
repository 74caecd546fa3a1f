#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/math/constants/constants.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_bin_float_100;

struct BesselReference {
  double j0, j1, y0, y1;
};

// Ascending series in 100-digit arithmetic; exact enough for x <= 100.
inline BesselReference bessel_series(double xd) {
  const Big x = xd;
  const Big q = -x * x / 4;
  const Big half = x / 2;
  Big term0 = 1, term1 = 1, harmonic = 0;
  Big j0 = 0, j1 = 0, s0 = 0, s1 = 0;
  const Big tiny("1e-70");
  for (int k = 0; k < 2000; ++k) {
    const Big next = harmonic + Big(1) / (k + 1);
    j0 += term0;
    j1 += term1;
    s0 += harmonic * term0;
    s1 += (harmonic + next) * term1;
    if (k > 2 * xd && abs(term0) < tiny && abs(term1) < tiny) break;
    term0 *= q / ((k + 1) * (k + 1));
    term1 *= q / ((k + 1) * (k + 2));
    harmonic = next;
  }
  const Big pi = boost::math::constants::pi<Big>();
  const Big euler = boost::math::constants::euler<Big>();
  const Big lg = log(half) + euler;
  const Big J1 = half * j1;
  const Big Y0 = 2 / pi * (lg * j0 - s0);
  const Big Y1 = -2 / (pi * x) + 2 / pi * lg * J1 - half * s1 / pi;
  return {static_cast<double>(j0), static_cast<double>(J1), static_cast<double>(Y0), static_cast<double>(Y1)};
}

}  // namespace oracle
