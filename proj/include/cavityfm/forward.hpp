#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

#include "cavityfm/geometry.hpp"
#include "cavityfm/kernels.hpp"

namespace cavityfm {

// Raised when the discrete boundary system cannot be solved reliably.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Nodes of every curve, curve after curve. Vector unknowns are interleaved:
// entry 2 i + c is component c at node i.
class BoundaryMesh {
 public:
  BoundaryMesh(std::vector<BoundaryCurve> curves, const NodeSet& nodes);

  const std::vector<BoundaryCurve>& curves() const { return curves_; }
  const NodeSet& nodes() const { return nodes_; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  int node_count() const { return static_cast<int>(samples_.size()); }
  int unknowns() const { return 2 * node_count(); }
  int curve_of(int node) const { return node / nodes_.n; }
  // trapezoid weight times |x'|
  double weight(int node) const { return nodes_.weight() * samples_[node].jac; }

 private:
  std::vector<BoundaryCurve> curves_;
  NodeSet nodes_;
  std::vector<CurveSample> samples_;
};

using BoundaryTrace = Eigen::VectorXcd;

// Nystrom matrices of the boundary operators on the mesh.
Eigen::MatrixXcd double_layer_matrix(const ElasticMedium& medium, const BoundaryMesh& mesh);
Eigen::MatrixXcd single_layer_matrix(const ElasticMedium& medium, const BoundaryMesh& mesh);
// 1/2 I - K, the operator of the direct equation for the total trace.
Eigen::MatrixXcd assemble_system(const ElasticMedium& medium, const std::vector<BoundaryCurve>& curves,
                                 const NodeSet& nodes);

struct FarFieldPair {
  Vec2 xhat;
  cplx up;
  cplx us;
  CVec2 vector() const;
};

// Plane waves d e^{i kp x.d} and d_perp e^{i ks x.d}, the point source
// Gamma(x, z) p, and the Herglotz superposition over N equispaced directions
// theta_j = 2 pi j / N (j = 1..N) with quadrature weight 2 pi / N.
struct IncidentField {
  enum class Kind { planeP, planeS, pointSource, herglotz };
  Kind kind = Kind::planeP;
  Vec2 direction = Vec2(1, 0);
  Vec2 source = Vec2::Zero();
  Vec2 polarization = Vec2(1, 0);
  Eigen::VectorXcd kernel_p;
  Eigen::VectorXcd kernel_s;

  static IncidentField plane_p(const Vec2& d);
  static IncidentField plane_s(const Vec2& d);
  static IncidentField point_source(const Vec2& z, const Vec2& p);
  static IncidentField herglotz(Eigen::VectorXcd g_p, Eigen::VectorXcd g_s);

  CVec2 value(const ElasticMedium& medium, const Vec2& x) const;
  CVec2 traction(const ElasticMedium& medium, const Vec2& x, const Vec2& nu) const;
};

Vec2 direction_vector(double angle);
Vec2 perp(const Vec2& v);

struct SolverOptions {
  double residual_tolerance = 1e-10;
  double condition_limit = 1e12;
};

// Factorized direct system for one scene.
class ScatteringSolver {
 public:
  ScatteringSolver(const ElasticMedium& medium, std::vector<BoundaryCurve> curves, const NodeSet& nodes,
                   SolverOptions options = {});

  const ElasticMedium& medium() const { return medium_; }
  const BoundaryMesh& mesh() const { return mesh_; }
  const Eigen::MatrixXcd& system() const { return system_; }
  double condition_estimate() const { return condition_; }
  bool ill_conditioned() const { return condition_ > options_.condition_limit; }

  // Total trace for an incident wave.
  BoundaryTrace solve(const IncidentField& incident) const;
  // Solution of (1/2 I - K) u = rhs, column by column, with residual check.
  Eigen::MatrixXcd solve_rhs(const Eigen::MatrixXcd& rhs) const;

  // Radiating field with prescribed boundary traction: trace from
  // (1/2 I - K) w = -S f.
  BoundaryTrace solve_neumann(const Eigen::VectorXcd& traction) const;

  Eigen::VectorXcd incident_values(const IncidentField& incident) const;
  Eigen::VectorXcd incident_tractions(const IncidentField& incident) const;

  const Eigen::MatrixXcd& single_layer() const;

 private:
  ElasticMedium medium_;
  BoundaryMesh mesh_;
  SolverOptions options_;
  Eigen::MatrixXcd system_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 0.0;
  mutable Eigen::MatrixXcd single_layer_;
};

// Far-field pair of the double-layer potential with density `trace`.
FarFieldPair double_layer_farfield(const ElasticMedium& medium, const BoundaryMesh& mesh,
                                   const Eigen::VectorXcd& trace, const Vec2& xhat);
// Rows of the double-layer far-field functional: row k gives the P coefficient
// at directions[k], row count + k the S coefficient.
Eigen::MatrixXcd double_layer_farfield_rows(const ElasticMedium& medium, const BoundaryMesh& mesh,
                                            const std::vector<Vec2>& directions);
// Far-field pair of the single-layer potential with density `density`.
FarFieldPair single_layer_farfield(const ElasticMedium& medium, const BoundaryMesh& mesh,
                                   const Eigen::VectorXcd& density, const Vec2& xhat);

using FarFieldFunction = std::function<FarFieldPair(const Vec2&)>;

// For a total trace this is the far field of the scattered wave.
FarFieldFunction farfield_from_trace(const ElasticMedium& medium, const BoundaryMesh& mesh, BoundaryTrace trace);

FarFieldFunction solve_scattering_farfield(const ScatteringSolver& solver, const IncidentField& incident);

FarFieldFunction scatter_plane_wave(const ScatteringSolver& solver, IncidentField::Kind kind, const Vec2& d);

// Superposition of plane-wave far fields with the Herglotz weights.
FarFieldFunction scatter_herglotz(const ScatteringSolver& solver, const Eigen::VectorXcd& g_p,
                                  const Eigen::VectorXcd& g_s);

// Double-layer potential off the boundary, accurate close to it.
CVec2 double_layer_potential(const ElasticMedium& medium, const BoundaryMesh& mesh, const Eigen::VectorXcd& density,
                             const Vec2& x);

}  // namespace cavityfm
