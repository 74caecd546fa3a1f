#include "cavityfm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "cavityfm/specfun.hpp"

namespace cavityfm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI(0.0, 1.0);
constexpr int kLowestPower = -6;
constexpr int kHighestPower = 8;
constexpr int kPowers = kHighestPower - kLowestPower + 1;

}  // namespace

namespace detail {

// c * H_n(k_wave v) / v^power, wave 0 = shear, 1 = compressional
struct HankelTerm {
  cplx c;
  int wave;
  int order;
  int power;
};

struct RadialEntry {
  std::vector<HankelTerm> terms;
  std::array<double, kPowers> xi_series{};
  std::array<cplx, kPowers> chi_series{};
  cplx strong;
};

struct RadialTable {
  std::array<double, 2> k{};
  std::array<RadialEntry, 8> entries;
  double threshold = 0.0;
};

}  // namespace detail

namespace {

using detail::HankelTerm;
using detail::RadialEntry;
using detail::RadialTable;
using Terms = std::vector<HankelTerm>;

Terms merged(const Terms& in) {
  std::map<std::tuple<int, int, int>, cplx> acc;
  for (const auto& t : in) acc[{t.wave, t.order, t.power}] += t.c;
  Terms out;
  for (const auto& [key, c] : acc) {
    if (c != cplx(0.0)) out.push_back({c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
  }
  return out;
}

// H0' = -H1 and H1'(t) = H0(t) - H1(t)/t.
Terms derivative(const Terms& in, const std::array<double, 2>& k) {
  Terms out;
  for (const auto& t : in) {
    const double kw = k[t.wave];
    if (t.order == 0) {
      out.push_back({-t.c * kw, t.wave, 1, t.power});
      if (t.power != 0) out.push_back({-static_cast<double>(t.power) * t.c, t.wave, 0, t.power + 1});
    } else {
      out.push_back({t.c * kw, t.wave, 0, t.power});
      out.push_back({-static_cast<double>(1 + t.power) * t.c, t.wave, 1, t.power + 1});
    }
  }
  return merged(out);
}

Terms divided(Terms in, int times) {
  for (auto& t : in) t.power += times;
  return in;
}

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

double harmonic(int m) {
  double h = 0.0;
  for (int i = 1; i <= m; ++i) h += 1.0 / i;
  return h;
}

// Laurent coefficients of xi and chi, with contributions that cancel
// analytically cleaned to exact zeros.
void build_series(RadialEntry& entry, const std::array<double, 2>& k) {
  std::array<double, kPowers> xi{}, xi_scale{};
  std::array<cplx, kPowers> chi{};
  std::array<double, kPowers> chi_scale{};
  auto add_xi = [&](int e, double value) {
    if (e < kLowestPower || e > kHighestPower) return;
    xi[e - kLowestPower] += value;
    xi_scale[e - kLowestPower] += std::abs(value);
  };
  auto add_chi = [&](int e, cplx value) {
    if (e < kLowestPower || e > kHighestPower) return;
    chi[e - kLowestPower] += value;
    chi_scale[e - kLowestPower] += std::abs(value);
  };
  for (const auto& t : entry.terms) {
    const double kw = k[t.wave];
    const cplx log_factor = 1.0 + (2.0 * kI / kPi) * (std::log(0.5 * kw) + std::numbers::egamma);
    for (int m = 0; 2 * m + t.order - t.power <= kHighestPower; ++m) {
      const int e = 2 * m + t.order - t.power;
      const double sign = (m % 2 == 0) ? 1.0 : -1.0;
      const double alpha = t.order == 0 ? sign / (std::pow(4.0, m) * factorial(m) * factorial(m))
                                        : sign / (std::pow(2.0, 2 * m + 1) * factorial(m) * factorial(m + 1));
      const double kpow = std::pow(kw, 2 * m + t.order);
      add_xi(e, std::real(2.0 * kI * t.c) * alpha * kpow);
      add_chi(e, t.c * log_factor * alpha * kpow);
      if (t.order == 0) {
        if (m >= 1) {
          const double beta = (2.0 / kPi) * (-sign) * harmonic(m) / (std::pow(4.0, m) * factorial(m) * factorial(m));
          add_chi(e, kI * t.c * beta * kpow);
        }
      } else {
        const double delta = -(1.0 / kPi) * sign * (harmonic(m) + harmonic(m + 1)) /
                             (std::pow(2.0, 2 * m + 1) * factorial(m) * factorial(m + 1));
        add_chi(e, kI * t.c * delta * kpow);
      }
    }
    if (t.order == 1) add_chi(-1 - t.power, kI * t.c * (-2.0 / (kPi * kw)));
  }
  for (int i = 0; i < kPowers; ++i) {
    if (std::abs(xi[i]) <= 1e-11 * xi_scale[i]) xi[i] = 0.0;
    if (std::abs(chi[i]) <= 1e-11 * chi_scale[i]) chi[i] = 0.0;
  }
  for (int e = kLowestPower; e < -2; ++e) {
    if (xi[e - kLowestPower] != 0.0 || chi[e - kLowestPower] != cplx(0.0)) {
      throw KernelError("internal: radial expansion left a singularity stronger than 1/v^2");
    }
  }
  entry.strong = chi[-2 - kLowestPower];
  chi[-2 - kLowestPower] = 0.0;
  if (chi[-1 - kLowestPower] != cplx(0.0) || xi[-1 - kLowestPower] != 0.0) {
    throw KernelError("internal: radial expansion has an odd singular power");
  }
  entry.xi_series = xi;
  entry.chi_series = chi;
}

std::shared_ptr<const RadialTable> build_table(double lambda, double mu, double omega, double kp, double ks) {
  auto table = std::make_shared<RadialTable>();
  table->k = {ks, kp};
  const double w2 = omega * omega;
  const Terms g1 = merged({{kI / (4.0 * mu), 0, 0, 0}, {-kI * ks / (4.0 * w2), 0, 1, 1}, {kI * kp / (4.0 * w2), 1, 1, 1}});
  const Terms g2 = merged({{2.0 * kI * ks / (4.0 * w2), 0, 1, 1},
                           {-kI * ks * ks / (4.0 * w2), 0, 0, 0},
                           {-2.0 * kI * kp / (4.0 * w2), 1, 1, 1},
                           {kI * kp * kp / (4.0 * w2), 1, 0, 0}});
  const std::array<Terms, 2> base{g1, g2};
  for (int j = 1; j <= 2; ++j) {
    const Terms& b = base[j - 1];
    const Terms d1 = derivative(b, table->k);
    table->entries[RadialBundle::slot(j, -1)].terms = b;
    table->entries[RadialBundle::slot(j, 0)].terms = divided(b, 2);
    table->entries[RadialBundle::slot(j, 1)].terms = divided(d1, 1);
    table->entries[RadialBundle::slot(j, 2)].terms = derivative(d1, table->k);
  }
  for (auto& e : table->entries) build_series(e, table->k);
  table->threshold = 0.05 * std::min(1.0, 1.0 / std::max(ks, kp));
  (void)lambda;
  return table;
}

void check_index(int j, int k) {
  if (j < 1 || j > 2 || k < -1 || k > 2) throw KernelError("radial index out of range");
}

double ipow(double v, int e) {
  double r = 1.0;
  for (int i = 0; i < std::abs(e); ++i) r *= v;
  return e < 0 ? 1.0 / r : r;
}

struct Cylinders {
  std::array<specfun::CylinderSet, 2> at;
};

Cylinders cylinders(const RadialTable& table, double v) {
  Cylinders c;
  c.at[0] = specfun::cylinder_set(table.k[0] * v);
  c.at[1] = table.k[1] == table.k[0] ? c.at[0] : specfun::cylinder_set(table.k[1] * v);
  return c;
}

cplx direct_value(const RadialEntry& entry, const Cylinders& cyl, double v) {
  cplx sum = 0.0;
  for (const auto& t : entry.terms) {
    const auto& cs = cyl.at[t.wave];
    sum += t.c * (t.order == 0 ? cs.h0() : cs.h1()) * ipow(v, -t.power);
  }
  return sum;
}

double direct_xi(const RadialEntry& entry, const Cylinders& cyl, double v) {
  double sum = 0.0;
  for (const auto& t : entry.terms) {
    const auto& cs = cyl.at[t.wave];
    sum += std::real(2.0 * kI * t.c) * (t.order == 0 ? cs.j0 : cs.j1) * ipow(v, -t.power);
  }
  return sum;
}

KernelSplit series_split(const RadialEntry& entry, double v) {
  KernelSplit s;
  s.v = v;
  s.strong = entry.strong;
  double xi = 0.0;
  cplx chi = 0.0;
  for (int e = kHighestPower; e >= 0; --e) {
    xi = xi * v + entry.xi_series[e - kLowestPower];
    chi = chi * v + entry.chi_series[e - kLowestPower];
  }
  if (v > 0.0) xi += entry.xi_series[-2 - kLowestPower] / (v * v);
  s.xi = xi;
  s.chi = chi;
  return s;
}

cplx assemble(const KernelSplit& s) {
  return (1.0 / kPi) * std::log(s.v) * s.xi + s.chi + s.strong / (s.v * s.v);
}

KernelSplit split_at(const RadialTable& table, int j, int k, double v, const Cylinders* cyl) {
  const RadialEntry& entry = table.entries[RadialBundle::slot(j, k)];
  KernelSplit s;
  if (v < table.threshold) {
    s = series_split(entry, v);
  } else {
    s.v = v;
    s.strong = entry.strong;
    s.xi = direct_xi(entry, *cyl, v);
    s.chi = direct_value(entry, *cyl, v) - (1.0 / kPi) * std::log(v) * s.xi - s.strong / (v * v);
  }
  s.j = j;
  s.k = k;
  return s;
}

void check_separation(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) throw KernelError("kernel evaluated at coincident points");
}

}  // namespace

ElasticMedium::ElasticMedium(double lambda, double mu, double omega, MediumCheck check)
    : lambda_(lambda), mu_(mu), omega_(omega) {
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(omega)) {
    throw KernelError("medium parameters must be finite");
  }
  if (!(mu > 0.0)) throw KernelError("mu must be positive");
  if (!(lambda + 2.0 * mu > 0.0)) throw KernelError("lambda + 2 mu must be positive");
  if (!(omega > 0.0)) throw KernelError("omega must be positive");
  if (check == MediumCheck::strict && !(lambda + mu > 0.0)) {
    throw KernelError("strict medium check: lambda + mu must be positive");
  }
  kp_ = omega / std::sqrt(lambda + 2.0 * mu);
  ks_ = omega / std::sqrt(mu);
  table_ = build_table(lambda, mu, omega, kp_, ks_);
}

double series_threshold(const ElasticMedium& medium) { return medium.table().threshold; }

cplx gamma_coeff(const ElasticMedium& medium, int j, int k, double v) {
  check_index(j, k);
  check_separation(v);
  const Cylinders cyl = cylinders(medium.table(), v);
  return direct_value(medium.table().entries[RadialBundle::slot(j, k)], cyl, v);
}

cplx gamma_base(const ElasticMedium& medium, int j, double v) { return gamma_coeff(medium, j, -1, v); }

double gamma_static(const ElasticMedium& medium, int j, int k, double v) {
  check_index(j, k);
  check_separation(v);
  const double lam = medium.lambda(), mu = medium.mu();
  const double a = (lam + 3.0 * mu) / (4.0 * kPi * mu * (lam + 2.0 * mu));
  const double b = (lam + mu) / (4.0 * kPi * mu * (lam + 2.0 * mu));
  const double v2 = v * v;
  if (j == 1) {
    switch (k) {
      case -1: return -a * std::log(v);
      case 0: return -a * std::log(v) / v2;
      case 1: return -a / v2;
      default: return a / v2;
    }
  }
  switch (k) {
    case -1: return b;
    case 0: return b / v2;
    default: return 0.0;
  }
}

KernelSplit split_coeff(const ElasticMedium& medium, int j, int k, double v) {
  check_index(j, k);
  if (!(v >= 0.0) || !std::isfinite(v)) throw KernelError("separation must be nonnegative");
  const RadialTable& table = medium.table();
  if (v == 0.0) {
    const RadialEntry& entry = table.entries[RadialBundle::slot(j, k)];
    KernelSplit s;
    s.j = j;
    s.k = k;
    s.xi = entry.xi_series[-kLowestPower];
    s.chi = entry.chi_series[-kLowestPower];
    s.strong = entry.strong;
    return s;
  }
  Cylinders cyl;
  if (v >= table.threshold) cyl = cylinders(table, v);
  return split_at(table, j, k, v, &cyl);
}

KernelSplit split_base(const ElasticMedium& medium, int j, double v) { return split_coeff(medium, j, -1, v); }

RadialBundle radial_bundle(const ElasticMedium& medium, double v) {
  check_separation(v);
  const RadialTable& table = medium.table();
  RadialBundle out;
  const bool small = v < table.threshold;
  Cylinders cyl;
  if (!small) cyl = cylinders(table, v);
  for (int k = -1; k <= 2; ++k) {
    for (int j = 1; j <= 2; ++j) {
      const int slot = RadialBundle::slot(j, k);
      out.split[slot] = split_at(table, j, k, v, &cyl);
      out.gamma[slot] = small ? assemble(out.split[slot]) : direct_value(table.entries[slot], cyl, v);
    }
  }
  return out;
}

Eigen::Matrix2d unit_projector(const Vec2& r) { return r * r.transpose() / r.squaredNorm(); }

Tensor2 fundamental(const ElasticMedium& medium, const Vec2& x, const Vec2& y) {
  const Vec2 r = x - y;
  const double v = r.norm();
  check_separation(v);
  const RadialBundle rb = radial_bundle(medium, v);
  const Eigen::Matrix2d jr = unit_projector(r);
  return rb.gamma[RadialBundle::slot(1, -1)] * Tensor2::Identity() +
         rb.gamma[RadialBundle::slot(2, -1)] * jr.cast<cplx>();
}

Eigen::Matrix2d fundamental_static(const ElasticMedium& medium, const Vec2& x, const Vec2& y) {
  const Vec2 r = x - y;
  const double v = r.norm();
  check_separation(v);
  return gamma_static(medium, 1, -1, v) * Eigen::Matrix2d::Identity() + gamma_static(medium, 2, -1, v) * unit_projector(r);
}

Tensor2 farfield_tensor(const ElasticMedium& medium, const Vec2& xhat, const Vec2& y, Branch branch) {
  if (std::abs(xhat.norm() - 1.0) > 1e-10) throw KernelError("far-field direction must be a unit vector");
  const cplx front = std::exp(kI * (kPi / 4.0));
  if (branch == Branch::p) {
    const double kp = medium.kp();
    const cplx scale = front / ((medium.lambda() + 2.0 * medium.mu()) * std::sqrt(8.0 * kPi * kp)) *
                       std::exp(-kI * kp * xhat.dot(y));
    return scale * (xhat * xhat.transpose()).cast<cplx>();
  }
  const double ks = medium.ks();
  const Vec2 perp(-xhat.y(), xhat.x());
  const cplx scale = front / (medium.mu() * std::sqrt(8.0 * kPi * ks)) * std::exp(-kI * ks * xhat.dot(y));
  return scale * (perp * perp.transpose()).cast<cplx>();
}

CVec2 traction_of_field(const ElasticMedium& medium, const Eigen::Matrix2cd& jacobian, const Vec2& nu) {
  if (std::abs(nu.norm() - 1.0) > 1e-10) throw KernelError("normal must be a unit vector");
  const Vec2 nu_perp(-nu.y(), nu.x());
  const cplx div = jacobian.trace();
  const cplx div_perp = jacobian(1, 0) - jacobian(0, 1);
  const CVec2 nuc = nu.cast<cplx>();
  return 2.0 * medium.mu() * (jacobian * nuc) + medium.lambda() * div * nuc - medium.mu() * div_perp * nu_perp.cast<cplx>();
}

namespace {

using Mat2 = Eigen::Matrix2d;

Mat2 matrix_M(double lam, double mu, int j, int k, const Vec2& x, const Vec2& y, const Vec2& n) {
  const Vec2 r = x - y;
  const double s = n.dot(r);
  if (j == 1 && k == 0) return Mat2::Zero();
  if (j == 2 && k == 0) {
    return (lam + 2.0 * mu) * n * r.transpose() + mu * r * n.transpose() +
           mu * s * (Mat2::Identity() - 4.0 * unit_projector(r));
  }
  const Mat2 m11 = lam * n * r.transpose() + mu * r * n.transpose() + mu * s * Mat2::Identity();
  if (j == 1) return m11;
  return m11 * unit_projector(r);
}

// A(x) = M(y, x)^T as a field in x, with its partial derivatives.
struct MatrixField {
  Mat2 value;
  std::array<Mat2, 2> d;
};

MatrixField transposed_field(double lam, double mu, int j, int k, const Vec2& x, const Vec2& y, const Vec2& n_y) {
  const Vec2 w = y - x;
  const double rho2 = w.squaredNorm();
  const double s = n_y.dot(w);
  const Mat2 jw = w * w.transpose() / rho2;
  const Mat2 id = Mat2::Identity();
  std::array<Mat2, 2> djw;
  for (int c = 0; c < 2; ++c) {
    const Vec2 e = Vec2::Unit(c);
    djw[c] = -(e * w.transpose() + w * e.transpose()) / rho2 + 2.0 * w(c) * w * w.transpose() / (rho2 * rho2);
  }
  MatrixField f;
  const Mat2 a11 = lam * w * n_y.transpose() + mu * n_y * w.transpose() + mu * s * id;
  std::array<Mat2, 2> da11;
  for (int c = 0; c < 2; ++c) {
    const Vec2 e = Vec2::Unit(c);
    da11[c] = -lam * e * n_y.transpose() - mu * n_y * e.transpose() - mu * n_y(c) * id;
  }
  if (j == 1 && k == 1) {
    f.value = a11;
    f.d = da11;
  } else if (j == 2 && k == 0) {
    f.value = (lam + 2.0 * mu) * w * n_y.transpose() + mu * n_y * w.transpose() + mu * s * (id - 4.0 * jw);
    for (int c = 0; c < 2; ++c) {
      const Vec2 e = Vec2::Unit(c);
      f.d[c] = -(lam + 2.0 * mu) * e * n_y.transpose() - mu * n_y * e.transpose() - mu * n_y(c) * (id - 4.0 * jw) -
               4.0 * mu * s * djw[c];
    }
  } else if (j == 2 && k == 1) {
    f.value = jw * a11;
    for (int c = 0; c < 2; ++c) f.d[c] = djw[c] * a11 + jw * da11[c];
  } else {
    f.value = Mat2::Zero();
    f.d = {Mat2::Zero(), Mat2::Zero()};
  }
  return f;
}

// Traction in x applied column by column to a matrix field.
Mat2 traction_of_matrix(double lam, double mu, const MatrixField& f, const Vec2& n) {
  Mat2 out;
  for (int b = 0; b < 2; ++b) {
    Mat2 grad;  // grad(a, c) = d A_ab / d x_c
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) grad(a, c) = f.d[c](a, b);
    }
    out.col(b) = lam * grad.trace() * n + mu * (grad + grad.transpose()) * n;
  }
  return out;
}

Mat2 matrix_N(double lam, double mu, int j, int k, const Vec2& x, const Vec2& y, const Vec2& nu_x, const Vec2& nu_y) {
  const double v2 = (x - y).squaredNorm();
  const Mat2 m11_xy = matrix_M(lam, mu, 1, 1, x, y, nu_x);
  auto transposed = [&](int jj, int kk) { return matrix_M(lam, mu, jj, kk, y, x, nu_y).transpose().eval(); };
  auto traction = [&](int jj, int kk) {
    return traction_of_matrix(lam, mu, transposed_field(lam, mu, jj, kk, x, y, nu_y), nu_x);
  };
  if (j == 1) {
    switch (k) {
      case 0: return Mat2::Zero();
      case 1: return traction(1, 1) - m11_xy * transposed(1, 1) / v2;
      default: return m11_xy * transposed(1, 1) / v2;
    }
  }
  switch (k) {
    case 0: return traction(2, 0) - 2.0 * m11_xy * transposed(2, 0) / v2;
    case 1: return traction(2, 1) - m11_xy * transposed(2, 1) / v2 + m11_xy * transposed(2, 0) / v2;
    default: return m11_xy * transposed(2, 1) / v2;
  }
}

struct Term {
  int j, k;
};

const std::vector<Term>& terms_of(KernelOperator op) {
  static const std::vector<Term> single = {{2, 0}, {1, 1}, {2, 1}};
  static const std::vector<Term> hyper = {{2, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
  return op == KernelOperator::N ? hyper : single;
}

Mat2 geometric_factor(KernelOperator op, double lam, double mu, int j, int k, const Vec2& x, const Vec2& y,
                      const Vec2& nu_x, const Vec2& nu_y) {
  switch (op) {
    case KernelOperator::Kprime: return matrix_M(lam, mu, j, k, x, y, nu_x);
    case KernelOperator::K: return matrix_M(lam, mu, j, k, y, x, nu_y).transpose();
    case KernelOperator::N: return matrix_N(lam, mu, j, k, x, y, nu_x, nu_y);
  }
  return Mat2::Zero();
}

}  // namespace

Eigen::Matrix2d kernel_matrix_M(const ElasticMedium& medium, int j, int k, const Vec2& x, const Vec2& y,
                                const Vec2& nu_x) {
  if (j < 1 || j > 2 || k < 0 || k > 1) throw KernelError("M is defined for j in {1,2}, k in {0,1}");
  if (j == 2 && (x - y).squaredNorm() == 0.0) throw KernelError("M_2 needs distinct points");
  return matrix_M(medium.lambda(), medium.mu(), j, k, x, y, nu_x);
}

Eigen::Matrix2d kernel_matrix_N(const ElasticMedium& medium, int j, int k, const Vec2& x, const Vec2& y,
                                const Vec2& nu_x, const Vec2& nu_y) {
  if (j < 1 || j > 2 || k < 0 || k > 2) throw KernelError("N is defined for j in {1,2}, k in {0,1,2}");
  if (j == 1 && k == 0) return Mat2::Zero();
  if ((x - y).squaredNorm() == 0.0) throw KernelError("N needs distinct points");
  return matrix_N(medium.lambda(), medium.mu(), j, k, x, y, nu_x, nu_y);
}

Tensor2 traction_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                        const Vec2& nu_x, const Vec2& nu_y) {
  const double v = (x - y).norm();
  check_separation(v);
  const RadialBundle rb = radial_bundle(medium, v);
  Tensor2 out = Tensor2::Zero();
  for (const auto& t : terms_of(op)) {
    out += rb.gamma[RadialBundle::slot(t.j, t.k)] *
           geometric_factor(op, medium.lambda(), medium.mu(), t.j, t.k, x, y, nu_x, nu_y).cast<cplx>();
  }
  return out;
}

Eigen::Matrix2d static_traction_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                                       const Vec2& nu_x, const Vec2& nu_y) {
  const double v = (x - y).norm();
  check_separation(v);
  Mat2 out = Mat2::Zero();
  for (const auto& t : terms_of(op)) {
    const double g = gamma_static(medium, t.j, t.k, v);
    if (g != 0.0) out += g * geometric_factor(op, medium.lambda(), medium.mu(), t.j, t.k, x, y, nu_x, nu_y);
  }
  return out;
}

DifferenceSplit difference_split(KernelOperator op, const ElasticMedium& medium, const RadialBundle& radial,
                                 const Vec2& x, const Vec2& y, const Vec2& nu_x, const Vec2& nu_y) {
  DifferenceSplit out{Tensor2::Zero(), Tensor2::Zero()};
  for (const auto& t : terms_of(op)) {
    const KernelSplit& s = radial.split[RadialBundle::slot(t.j, t.k)];
    const Mat2 g = geometric_factor(op, medium.lambda(), medium.mu(), t.j, t.k, x, y, nu_x, nu_y);
    out.log_factor += s.xi * g.cast<cplx>();
    out.smooth += s.chi * g.cast<cplx>();
  }
  return out;
}

DifferenceSplit difference_split(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                                 const Vec2& nu_x, const Vec2& nu_y) {
  const double v = (x - y).norm();
  check_separation(v);
  return difference_split(op, medium, radial_bundle(medium, v), x, y, nu_x, nu_y);
}

Tensor2 difference_kernel(KernelOperator op, const ElasticMedium& medium, const Vec2& x, const Vec2& y,
                          const Vec2& nu_x, const Vec2& nu_y) {
  const double v = (x - y).norm();
  const DifferenceSplit s = difference_split(op, medium, x, y, nu_x, nu_y);
  return (1.0 / kPi) * std::log(v) * s.log_factor + s.smooth;
}

}  // namespace cavityfm
