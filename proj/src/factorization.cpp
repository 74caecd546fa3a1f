#include "cavityfm/factorization.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cavityfm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI(0.0, 1.0);

}  // namespace

std::string mode_name(SpectralMode m) {
  switch (m) {
    case SpectralMode::svd: return "svd";
    case SpectralMode::fsharp: return "fsharp";
    case SpectralMode::svd_reim: return "svd_reim";
  }
  return "svd";
}

SpectralMode parse_mode(const std::string& name) {
  for (SpectralMode m : {SpectralMode::svd, SpectralMode::fsharp, SpectralMode::svd_reim})
    if (mode_name(m) == name) return m;
  throw std::invalid_argument("unknown spectral mode '" + name + "' (expected svd, fsharp or svd_reim)");
}

SpectralMode default_mode(DataCase c) { return c == DataCase::FF ? SpectralMode::svd : SpectralMode::fsharp; }

Eigen::MatrixXcd hermitian_abs(const Eigen::MatrixXcd& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
  if (es.info() != Eigen::Success) throw NumericalError("Hermitian eigendecomposition did not converge");
  return es.eigenvectors() * es.eigenvalues().cwiseAbs().asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd fsharp(const Eigen::MatrixXcd& f) {
  const Eigen::MatrixXcd re = 0.5 * (f + f.adjoint());
  const Eigen::MatrixXcd im = (f - f.adjoint()) / (2.0 * kI);
  return hermitian_abs(re) + hermitian_abs(im);
}

SpectralSystem decompose(const Eigen::MatrixXcd& f, SpectralMode mode) {
  if (f.rows() != f.cols() || f.rows() == 0) throw std::invalid_argument("spectral decomposition needs a square matrix");
  if (!f.allFinite()) throw NumericalError("far-field matrix has non-finite entries");
  SpectralSystem out;
  out.mode = mode;
  if (mode == SpectralMode::fsharp) {
    Eigen::MatrixXcd fs = fsharp(f);
    fs = 0.5 * (fs + fs.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(fs);
    if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of |Re F| + |Im F| did not converge");
    const Eigen::Index n = f.rows();
    out.values.resize(n);
    out.basis.resize(n, n);
    // eigenvalues come ascending
    for (Eigen::Index j = 0; j < n; ++j) {
      out.values(j) = std::max(0.0, es.eigenvalues()(n - 1 - j));
      out.basis.col(j) = es.eigenvectors().col(n - 1 - j);
    }
    return out;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(f, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.basis = svd.matrixV();
  out.values = svd.singularValues();
  if (mode == SpectralMode::svd_reim) {
    // |Re s| + |Im s| of the real singular values
    for (Eigen::Index j = 0; j < out.values.size(); ++j)
      out.values(j) = std::abs(cplx(out.values(j)).real()) + std::abs(cplx(out.values(j)).imag());
  }
  return out;
}

Eigen::VectorXcd build_test_vector(const ElasticMedium& medium, const DirectionSet& directions, DataCase data_case,
                                   const Vec2& z, const Vec2& p) {
  if (std::abs(p.norm() - 1.0) > 1e-12) throw std::invalid_argument("polarization must be a unit vector");
  const int n = directions.count;
  const double kp = medium.kp();
  const double ks = medium.ks();
  const cplx front = std::polar(1.0, kPi / 4.0);
  const cplx ap = front / ((medium.lambda() + 2.0 * medium.mu()) * std::sqrt(8.0 * kPi * kp));
  const cplx as = front / (medium.mu() * std::sqrt(8.0 * kPi * ks));
  Eigen::VectorXcd hp(n), hs(n);
  for (int k = 0; k < n; ++k) {
    const Vec2 d = directions.direction(k);
    hp(k) = ap * std::exp(-kI * kp * d.dot(z)) * d.dot(p);
    hs(k) = as * std::exp(-kI * ks * d.dot(z)) * perp(d).dot(p);
  }
  switch (data_case) {
    case DataCase::PP: return hp;
    case DataCase::SS: return hs;
    case DataCase::FF:
    case DataCase::LA: break;
  }
  Eigen::VectorXcd h(2 * n);
  h << hp, hs;
  return h;
}

double indicator(const SpectralSystem& sys, const Eigen::VectorXcd& h, double floor_ratio) {
  if (h.size() != sys.basis.rows()) throw std::invalid_argument("test vector length does not match the data");
  const double top = sys.values.size() ? sys.values.maxCoeff() : 0.0;
  const double floor = floor_ratio * top;
  const Eigen::VectorXcd rho = sys.basis.adjoint() * h;
  double sum = 0.0;
  int kept = 0;
  for (Eigen::Index j = 0; j < sys.values.size(); ++j) {
    if (!(sys.values(j) > floor)) continue;
    sum += std::norm(rho(j)) / sys.values(j);
    ++kept;
  }
  if (kept == 0 || !(top > 0.0)) throw NumericalError("degenerate spectrum: no component above the spectral floor");
  return 1.0 / sum;
}

double SamplingGrid::x(int i) const { return nx == 1 ? x0 : x0 + (x1 - x0) * i / (nx - 1); }
double SamplingGrid::y(int j) const { return ny == 1 ? y0 : y0 + (y1 - y0) * j / (ny - 1); }

std::string combine_name(Combine c) { return c == Combine::single ? "single" : "sum_normalized"; }

Combine parse_combine(const std::string& name) {
  if (name == "single") return Combine::single;
  if (name == "sum_normalized") return Combine::sum_normalized;
  throw std::invalid_argument("unknown combine rule '" + name + "' (expected single or sum_normalized)");
}

IndicatorGrid indicator_grid(const FarFieldMatrix& data, const SpectralSystem& sys, const SamplingGrid& grid,
                             const std::vector<double>& polarizations, Combine combine) {
  if (polarizations.empty()) throw std::invalid_argument("at least one polarization is required");
  if (combine == Combine::single && polarizations.size() != 1)
    throw std::invalid_argument("combine rule 'single' takes exactly one polarization");
  if (grid.nx < 1 || grid.ny < 1) throw std::invalid_argument("grid needs at least one point per axis");
  const DatasetInfo& info = data.info;
  const ElasticMedium medium(info.lambda, info.mu, info.omega);
  const DirectionSet dirs = info.directions();

  IndicatorGrid out;
  out.grid = grid;
  out.data_case = info.data_case;
  out.polarizations = polarizations;
  out.combine = combine;
  const int total = grid.size();
  std::string failure;
  for (double alpha : polarizations) {
    const Vec2 p = direction_vector(alpha);
    Eigen::VectorXd w(total);
#pragma omp parallel for schedule(static)
    for (int idx = 0; idx < total; ++idx) {
      try {
        const Vec2 z = grid.point(idx % grid.nx, idx / grid.nx);
        w(idx) = indicator(sys, build_test_vector(medium, dirs, info.data_case, z, p));
      } catch (const std::exception& e) {
#pragma omp critical
        failure = e.what();
      }
    }
    if (!failure.empty()) throw NumericalError(failure);
    out.per_polarization.push_back(std::move(w));
  }
  if (combine == Combine::single) {
    out.values = out.per_polarization.front();
  } else {
    out.values = Eigen::VectorXd::Zero(total);
    for (const auto& w : out.per_polarization) {
      const double top = w.maxCoeff();
      if (top > 0.0) out.values += w / top;
    }
  }
  return out;
}

std::string format_indicator_csv(const IndicatorGrid& g, const std::vector<std::string>& comments) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "# case=" << case_name(g.data_case) << '\n';
  os << "# combine=" << combine_name(g.combine) << '\n';
  os << "# nx=" << g.grid.nx << '\n';
  os << "# ny=" << g.grid.ny << '\n';
  os << "x,y,W\n";
  for (int j = 0; j < g.grid.ny; ++j) {
    for (int i = 0; i < g.grid.nx; ++i) {
      os << format_double(g.grid.x(i)) << ',' << format_double(g.grid.y(j)) << ',' << format_double(g.value(i, j))
         << '\n';
    }
  }
  return os.str();
}

}  // namespace cavityfm
