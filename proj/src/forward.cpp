#include "cavityfm/forward.hpp"

#include <cmath>
#include <memory>

#include "cavityfm/quadrature.hpp"

namespace cavityfm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr cplx kI(0.0, 1.0);

using Mat2 = Eigen::Matrix2d;

// Rotation appearing in the tangential Cauchy part of the static kernel.
const Mat2& rotation() {
  static const Mat2 e = (Mat2() << 0.0, 1.0, -1.0, 0.0).finished();
  return e;
}

void put_block(Eigen::MatrixXcd& m, int i, int j, const Tensor2& b) { m.block<2, 2>(2 * i, 2 * j) += b; }

CVec2 node_value(const Eigen::VectorXcd& v, int i) { return v.segment<2>(2 * i); }

}  // namespace

BoundaryMesh::BoundaryMesh(std::vector<BoundaryCurve> curves, const NodeSet& nodes)
    : curves_(std::move(curves)), nodes_(nodes) {
  if (curves_.empty()) throw GeometryError("at least one boundary curve is required");
  for (const auto& c : curves_) {
    auto s = sample(c, nodes_);
    samples_.insert(samples_.end(), s.begin(), s.end());
  }
}

Vec2 direction_vector(double angle) { return Vec2(std::cos(angle), std::sin(angle)); }
Vec2 perp(const Vec2& v) { return Vec2(-v.y(), v.x()); }

CVec2 FarFieldPair::vector() const { return up * xhat.cast<cplx>() + us * perp(xhat).cast<cplx>(); }

Eigen::MatrixXcd double_layer_matrix(const ElasticMedium& medium, const BoundaryMesh& mesh) {
  const int n = mesh.nodes().n;
  const int total = mesh.node_count();
  const double h = mesh.nodes().weight();
  const double lam = medium.lambda();
  const double mu = medium.mu();
  const double c0 = 1.0 / (2.0 * kPi * (lam + 2.0 * mu));
  const Eigen::MatrixXd logw = log_weights(n);
  const Eigen::MatrixXd cotw = cotangent_weights(n);
  const auto& sm = mesh.samples();
  const Mat2& E = rotation();

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * total, 2 * total);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < total; ++i) {
    const CurveSample& xi = sm[i];
    const int ci = mesh.curve_of(i);
    for (int j = 0; j < total; ++j) {
      const CurveSample& yj = sm[j];
      if (mesh.curve_of(j) != ci) {
        put_block(A, i, j, h * yj.jac * traction_kernel(KernelOperator::K, medium, xi.x, yj.x, xi.nu, yj.nu));
        continue;
      }
      const int li = i - ci * n;
      const int lj = j - ci * n;
      Tensor2 block = Tensor2::Zero();
      // static Cauchy part, principal value on the periodic grid
      block += (-c0 * mu * kPi * cotw(li, lj)) * E.cast<cplx>();
      if (i == j) {
        const double curv = yj.ddx.dot(yj.nu) / (2.0 * yj.jac);
        const double rem = -yj.dx.dot(yj.ddx) / (2.0 * yj.jac * yj.jac);
        const Mat2 stat = c0 * (mu * Mat2::Identity() + 2.0 * (lam + mu) * yj.tau * yj.tau.transpose()) * curv +
                          c0 * mu * rem * E;
        block += h * stat.cast<cplx>();
      } else {
        const Vec2 r = xi.x - yj.x;
        const double v = r.norm();
        const double ang = 0.5 * (xi.t - yj.t);
        const Mat2 stat = static_traction_kernel(KernelOperator::K, medium, xi.x, yj.x, xi.nu, yj.nu) * yj.jac -
                          c0 * mu * 0.5 / std::tan(ang) * E;
        block += h * stat.cast<cplx>();

        const DifferenceSplit ds = difference_split(KernelOperator::K, medium, radial_bundle(medium, v), xi.x, yj.x,
                                                    xi.nu, yj.nu);
        const double s2 = 4.0 * std::sin(ang) * std::sin(ang);
        const Tensor2 l1 = (yj.jac / (2.0 * kPi)) * ds.log_factor;
        const Tensor2 l2 = yj.jac * ((std::log(v * v / s2) / (2.0 * kPi)) * ds.log_factor + ds.smooth);
        block += logw(li, lj) * l1 + h * l2;
      }
      put_block(A, i, j, block);
    }
  }
  return A;
}

Eigen::MatrixXcd single_layer_matrix(const ElasticMedium& medium, const BoundaryMesh& mesh) {
  const int n = mesh.nodes().n;
  const int total = mesh.node_count();
  const double h = mesh.nodes().weight();
  const Eigen::MatrixXd logw = log_weights(n);
  const auto& sm = mesh.samples();

  // constant terms of the radial expansions at zero separation
  const double tiny = 1e-9;
  const KernelSplit s1 = split_base(medium, 1, tiny);
  const KernelSplit s2 = split_base(medium, 2, tiny);

  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(2 * total, 2 * total);

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < total; ++i) {
    const CurveSample& xi = sm[i];
    const int ci = mesh.curve_of(i);
    for (int j = 0; j < total; ++j) {
      const CurveSample& yj = sm[j];
      if (mesh.curve_of(j) != ci) {
        put_block(A, i, j, h * yj.jac * fundamental(medium, xi.x, yj.x));
        continue;
      }
      const int li = i - ci * n;
      const int lj = j - ci * n;
      Tensor2 block;
      if (i == j) {
        const Mat2 tt = yj.tau * yj.tau.transpose();
        const Tensor2 l1 = (yj.jac / (2.0 * kPi)) * s1.xi * Tensor2::Identity();
        const Tensor2 l2 = yj.jac * ((std::log(yj.jac * yj.jac) / (2.0 * kPi)) * s1.xi * Tensor2::Identity() +
                                     s1.chi * Tensor2::Identity() + s2.chi * tt.cast<cplx>());
        block = logw(li, lj) * l1 + h * l2;
      } else {
        const Vec2 r = xi.x - yj.x;
        const double v = r.norm();
        const double ang = 0.5 * (xi.t - yj.t);
        const RadialBundle rb = radial_bundle(medium, v);
        const KernelSplit& a = rb.split[RadialBundle::slot(1, -1)];
        const KernelSplit& b = rb.split[RadialBundle::slot(2, -1)];
        const Tensor2 jr = unit_projector(r).cast<cplx>();
        const Tensor2 logf = a.xi * Tensor2::Identity() + b.xi * jr;
        const Tensor2 smooth = (a.chi + a.strong / (v * v)) * Tensor2::Identity() + (b.chi + b.strong / (v * v)) * jr;
        const double s2v = 4.0 * std::sin(ang) * std::sin(ang);
        const Tensor2 l1 = (yj.jac / (2.0 * kPi)) * logf;
        const Tensor2 l2 = yj.jac * ((std::log(v * v / s2v) / (2.0 * kPi)) * logf + smooth);
        block = logw(li, lj) * l1 + h * l2;
      }
      put_block(A, i, j, block);
    }
  }
  return A;
}

Eigen::MatrixXcd assemble_system(const ElasticMedium& medium, const std::vector<BoundaryCurve>& curves,
                                 const NodeSet& nodes) {
  const BoundaryMesh mesh(curves, nodes);
  Eigen::MatrixXcd A = -double_layer_matrix(medium, mesh);
  A.diagonal().array() += 0.5;
  return A;
}

IncidentField IncidentField::plane_p(const Vec2& d) {
  IncidentField f;
  f.kind = Kind::planeP;
  f.direction = d.normalized();
  return f;
}

IncidentField IncidentField::plane_s(const Vec2& d) {
  IncidentField f;
  f.kind = Kind::planeS;
  f.direction = d.normalized();
  return f;
}

IncidentField IncidentField::point_source(const Vec2& z, const Vec2& p) {
  IncidentField f;
  f.kind = Kind::pointSource;
  f.source = z;
  f.polarization = p.normalized();
  return f;
}

IncidentField IncidentField::herglotz(Eigen::VectorXcd g_p, Eigen::VectorXcd g_s) {
  if (g_p.size() != g_s.size() || g_p.size() == 0)
    throw std::invalid_argument("Herglotz kernels need matching nonzero lengths");
  if (!g_p.allFinite() || !g_s.allFinite()) throw std::invalid_argument("Herglotz kernel is not finite");
  IncidentField f;
  f.kind = Kind::herglotz;
  f.kernel_p = std::move(g_p);
  f.kernel_s = std::move(g_s);
  return f;
}

namespace {

// Value and Jacobian of one plane wave with amplitude vector `pol`.
void plane_wave(double k, const Vec2& d, const Vec2& pol, cplx amp, const Vec2& x, CVec2& value,
                Eigen::Matrix2cd& jac) {
  const cplx e = amp * std::exp(kI * k * x.dot(d));
  value += e * pol.cast<cplx>();
  jac += (kI * k * e) * (pol * d.transpose()).cast<cplx>();
}

void evaluate(const IncidentField& f, const ElasticMedium& m, const Vec2& x, CVec2& value, Eigen::Matrix2cd& jac) {
  value.setZero();
  jac.setZero();
  switch (f.kind) {
    case IncidentField::Kind::planeP:
      plane_wave(m.kp(), f.direction, f.direction, 1.0, x, value, jac);
      break;
    case IncidentField::Kind::planeS:
      plane_wave(m.ks(), f.direction, perp(f.direction), 1.0, x, value, jac);
      break;
    case IncidentField::Kind::herglotz: {
      const int count = static_cast<int>(f.kernel_p.size());
      const cplx front = std::exp(-kI * (kPi / 4.0)) * (2.0 * kPi / count);
      const double wp = std::sqrt(m.kp() / m.omega());
      const double ws = std::sqrt(m.ks() / m.omega());
      for (int j = 0; j < count; ++j) {
        const Vec2 d = direction_vector(2.0 * kPi * (j + 1) / count);
        plane_wave(m.kp(), d, d, front * wp * f.kernel_p(j), x, value, jac);
        plane_wave(m.ks(), d, perp(d), front * ws * f.kernel_s(j), x, value, jac);
      }
      break;
    }
    case IncidentField::Kind::pointSource:
      break;
  }
}

}  // namespace

CVec2 IncidentField::value(const ElasticMedium& medium, const Vec2& x) const {
  if (kind == Kind::pointSource) return fundamental(medium, x, source) * polarization.cast<cplx>();
  CVec2 v;
  Eigen::Matrix2cd j;
  evaluate(*this, medium, x, v, j);
  return v;
}

CVec2 IncidentField::traction(const ElasticMedium& medium, const Vec2& x, const Vec2& nu) const {
  if (kind == Kind::pointSource)
    return traction_kernel(KernelOperator::Kprime, medium, x, source, nu, nu) * polarization.cast<cplx>();
  CVec2 v;
  Eigen::Matrix2cd j;
  evaluate(*this, medium, x, v, j);
  return traction_of_field(medium, j, nu);
}

ScatteringSolver::ScatteringSolver(const ElasticMedium& medium, std::vector<BoundaryCurve> curves,
                                   const NodeSet& nodes, SolverOptions options)
    : medium_(medium), mesh_(std::move(curves), nodes), options_(options) {
  system_ = -double_layer_matrix(medium_, mesh_);
  system_.diagonal().array() += 0.5;
  if (!system_.allFinite()) throw NumericalError("boundary system has non-finite entries");
  lu_.compute(system_);
  const double rc = lu_.rcond();
  condition_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXcd ScatteringSolver::solve_rhs(const Eigen::MatrixXcd& rhs) const {
  if (rhs.rows() != system_.rows()) throw std::invalid_argument("right-hand side has the wrong length");
  Eigen::MatrixXcd x = lu_.solve(rhs);
  for (int c = 0; c < rhs.cols(); ++c) {
    const double bn = rhs.col(c).norm();
    if (bn == 0.0) {
      x.col(c).setZero();
      continue;
    }
    const double res = (system_ * x.col(c) - rhs.col(c)).norm() / bn;
    if (!std::isfinite(res) || res > options_.residual_tolerance) {
      throw NumericalError("linear solve residual " + std::to_string(res) + " exceeds tolerance (condition estimate " +
                           std::to_string(condition_) + "); the frequency may be close to a Neumann eigenvalue");
    }
  }
  return x;
}

Eigen::VectorXcd ScatteringSolver::incident_values(const IncidentField& incident) const {
  Eigen::VectorXcd b(mesh_.unknowns());
  for (int i = 0; i < mesh_.node_count(); ++i) b.segment<2>(2 * i) = incident.value(medium_, mesh_.samples()[i].x);
  return b;
}

Eigen::VectorXcd ScatteringSolver::incident_tractions(const IncidentField& incident) const {
  Eigen::VectorXcd b(mesh_.unknowns());
  for (int i = 0; i < mesh_.node_count(); ++i) {
    const auto& s = mesh_.samples()[i];
    b.segment<2>(2 * i) = incident.traction(medium_, s.x, s.nu);
  }
  return b;
}

BoundaryTrace ScatteringSolver::solve(const IncidentField& incident) const {
  return solve_rhs(incident_values(incident));
}

const Eigen::MatrixXcd& ScatteringSolver::single_layer() const {
  if (single_layer_.size() == 0) single_layer_ = single_layer_matrix(medium_, mesh_);
  return single_layer_;
}

BoundaryTrace ScatteringSolver::solve_neumann(const Eigen::VectorXcd& traction) const {
  return solve_rhs(-(single_layer() * traction));
}

FarFieldPair double_layer_farfield(const ElasticMedium& medium, const BoundaryMesh& mesh, const Eigen::VectorXcd& trace,
                                   const Vec2& xhat) {
  const double lam = medium.lambda();
  const double mu = medium.mu();
  const double kp = medium.kp();
  const double ks = medium.ks();
  const Vec2 xp = perp(xhat);
  cplx sp = 0.0, ss = 0.0;
  for (int j = 0; j < mesh.node_count(); ++j) {
    const auto& y = mesh.samples()[j];
    const CVec2 phi = node_value(trace, j);
    const double w = mesh.weight(j);
    const cplx xphi = xhat(0) * phi(0) + xhat(1) * phi(1);
    const cplx pphi = xp(0) * phi(0) + xp(1) * phi(1);
    const cplx nphi = y.nu(0) * phi(0) + y.nu(1) * phi(1);
    const double nx = y.nu.dot(xhat);
    const double np = y.nu.dot(xp);
    sp += w * (2.0 * mu * nx * xphi + lam * nphi) * std::exp(-kI * kp * xhat.dot(y.x));
    ss += w * (nx * pphi + xphi * np) * std::exp(-kI * ks * xhat.dot(y.x));
  }
  const cplx front = std::exp(-kI * (kPi / 4.0));
  return {xhat, front / (lam + 2.0 * mu) * std::sqrt(kp / (8.0 * kPi)) * sp, front * std::sqrt(ks / (8.0 * kPi)) * ss};
}

Eigen::MatrixXcd double_layer_farfield_rows(const ElasticMedium& medium, const BoundaryMesh& mesh,
                                            const std::vector<Vec2>& directions) {
  const int count = static_cast<int>(directions.size());
  const double lam = medium.lambda();
  const double mu = medium.mu();
  const double kp = medium.kp();
  const double ks = medium.ks();
  const cplx front = std::exp(-kI * (kPi / 4.0));
  const cplx cp = front / (lam + 2.0 * mu) * std::sqrt(kp / (8.0 * kPi));
  const cplx cs = front * std::sqrt(ks / (8.0 * kPi));
  Eigen::MatrixXcd rows(2 * count, mesh.unknowns());
  for (int k = 0; k < count; ++k) {
    const Vec2& xhat = directions[k];
    const Vec2 xp = perp(xhat);
    for (int j = 0; j < mesh.node_count(); ++j) {
      const auto& y = mesh.samples()[j];
      const double w = mesh.weight(j);
      const double nx = y.nu.dot(xhat);
      const double np = y.nu.dot(xp);
      const cplx ep = cp * w * std::exp(-kI * kp * xhat.dot(y.x));
      const cplx es = cs * w * std::exp(-kI * ks * xhat.dot(y.x));
      for (int c = 0; c < 2; ++c) {
        rows(k, 2 * j + c) = ep * (2.0 * mu * nx * xhat(c) + lam * y.nu(c));
        rows(count + k, 2 * j + c) = es * (nx * xp(c) + np * xhat(c));
      }
    }
  }
  return rows;
}

FarFieldPair single_layer_farfield(const ElasticMedium& medium, const BoundaryMesh& mesh,
                                   const Eigen::VectorXcd& density, const Vec2& xhat) {
  const double kp = medium.kp();
  const double ks = medium.ks();
  const Vec2 xp = perp(xhat);
  cplx sp = 0.0, ss = 0.0;
  for (int j = 0; j < mesh.node_count(); ++j) {
    const auto& y = mesh.samples()[j];
    const CVec2 f = node_value(density, j);
    const double w = mesh.weight(j);
    sp += w * std::exp(-kI * kp * xhat.dot(y.x)) * (xhat(0) * f(0) + xhat(1) * f(1));
    ss += w * std::exp(-kI * ks * xhat.dot(y.x)) * (xp(0) * f(0) + xp(1) * f(1));
  }
  const cplx front = std::exp(kI * (kPi / 4.0));
  return {xhat, front / ((medium.lambda() + 2.0 * medium.mu()) * std::sqrt(8.0 * kPi * kp)) * sp,
          front / (medium.mu() * std::sqrt(8.0 * kPi * ks)) * ss};
}

FarFieldFunction farfield_from_trace(const ElasticMedium& medium, const BoundaryMesh& mesh, BoundaryTrace trace) {
  auto m = std::make_shared<const BoundaryMesh>(mesh);
  auto t = std::make_shared<const BoundaryTrace>(std::move(trace));
  return [medium, m, t](const Vec2& xhat) { return double_layer_farfield(medium, *m, *t, xhat); };
}

FarFieldFunction solve_scattering_farfield(const ScatteringSolver& solver, const IncidentField& incident) {
  return farfield_from_trace(solver.medium(), solver.mesh(), solver.solve(incident));
}

FarFieldFunction scatter_plane_wave(const ScatteringSolver& solver, IncidentField::Kind kind, const Vec2& d) {
  if (kind == IncidentField::Kind::planeP) return solve_scattering_farfield(solver, IncidentField::plane_p(d));
  if (kind == IncidentField::Kind::planeS) return solve_scattering_farfield(solver, IncidentField::plane_s(d));
  throw std::invalid_argument("scatter_plane_wave needs a plane-wave kind");
}

FarFieldFunction scatter_herglotz(const ScatteringSolver& solver, const Eigen::VectorXcd& g_p,
                                  const Eigen::VectorXcd& g_s) {
  if (g_p.size() != g_s.size() || g_p.size() == 0)
    throw std::invalid_argument("Herglotz kernels need matching nonzero lengths");
  const ElasticMedium& m = solver.medium();
  const int count = static_cast<int>(g_p.size());
  const int u = solver.mesh().unknowns();
  Eigen::MatrixXcd rhs(u, 2 * count);
  for (int j = 0; j < count; ++j) {
    const Vec2 d = direction_vector(2.0 * kPi * (j + 1) / count);
    rhs.col(j) = solver.incident_values(IncidentField::plane_p(d));
    rhs.col(count + j) = solver.incident_values(IncidentField::plane_s(d));
  }
  const Eigen::MatrixXcd traces = solver.solve_rhs(rhs);
  const cplx front = std::exp(-kI * (kPi / 4.0)) * (2.0 * kPi / count);
  const double wp = std::sqrt(m.kp() / m.omega());
  const double ws = std::sqrt(m.ks() / m.omega());
  BoundaryTrace total = BoundaryTrace::Zero(u);
  for (int j = 0; j < count; ++j) {
    total += front * wp * g_p(j) * traces.col(j);
    total += front * ws * g_s(j) * traces.col(count + j);
  }
  return farfield_from_trace(m, solver.mesh(), std::move(total));
}

CVec2 double_layer_potential(const ElasticMedium& medium, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                             const Vec2& x) {
  const int total = mesh.node_count();
  const auto& sm = mesh.samples();
  int nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < total; ++j) {
    const double d = (sm[j].x - x).squaredNorm();
    if (d < best) {
      best = d;
      nearest = j;
    }
  }
  const int curve = mesh.curve_of(nearest);
  const CVec2 anchor = node_value(density, nearest);
  CVec2 out = CVec2::Zero();
  for (int j = 0; j < total; ++j) {
    const auto& y = sm[j];
    const double w = mesh.weight(j);
    const Tensor2 k = traction_kernel(KernelOperator::K, medium, x, y.x, y.nu, y.nu);
    if (mesh.curve_of(j) != curve) {
      out += w * k * node_value(density, j);
      continue;
    }
    const Mat2 k0 = static_traction_kernel(KernelOperator::K, medium, x, y.x, y.nu, y.nu);
    out += w * (k * (node_value(density, j) - anchor) + (k - k0.cast<cplx>()) * anchor);
  }
  const NodeSet fine(std::max(512, mesh.nodes().n));
  if (point_in_cavity(x, mesh.curves()[curve], fine)) out -= anchor;
  return out;
}

}  // namespace cavityfm
