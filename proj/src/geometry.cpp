#include "cavityfm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cavityfm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct ShapeInfo {
  Shape shape;
  const char* name;
  std::vector<double> defaults;
};

const std::vector<ShapeInfo>& shape_table() {
  static const std::vector<ShapeInfo> table = {
      {Shape::circle, "circle", {1.0}},
      {Shape::ellipse, "ellipse", {1.5, 1.0}},
      {Shape::rounded_rectangle, "rounded_rectangle", {1.5, 10.0}},
      {Shape::pear, "pear", {0.15}},
      {Shape::kite, "kite", {0.65, 1.5}},
  };
  return table;
}

const ShapeInfo& info(Shape shape) {
  for (const auto& s : shape_table()) {
    if (s.shape == shape) return s;
  }
  throw GeometryError("unknown shape");
}

// Curve given in polar form r(t) (cos t, sin t).
CurvePoint polar(double r, double dr, double ddr, double t) {
  const Vec2 e(std::cos(t), std::sin(t));
  const Vec2 e_perp(-e.y(), e.x());
  return {r * e, dr * e + r * e_perp, (ddr - r) * e + 2.0 * dr * e_perp};
}

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

std::vector<Vec2> polygon(const BoundaryCurve& curve, const NodeSet& nodes) {
  std::vector<Vec2> pts(nodes.n);
  for (int i = 0; i < nodes.n; ++i) pts[i] = curve.eval(nodes.t(i)).x;
  return pts;
}

}  // namespace

BoundaryCurve::BoundaryCurve(Shape shape, std::vector<double> params, Vec2 center, double scale)
    : shape_(shape), params_(std::move(params)), center_(center), scale_(scale) {
  const auto& defaults = info(shape).defaults;
  if (params_.empty()) params_ = defaults;
  if (params_.size() != defaults.size()) {
    throw GeometryError(shape_name(shape) + " takes " + std::to_string(defaults.size()) + " parameter(s)");
  }
  for (double p : params_) {
    if (!std::isfinite(p)) throw GeometryError("non-finite shape parameter");
  }
  if (!(scale_ > 0.0) || !std::isfinite(scale_)) throw GeometryError("scale must be positive");
  if (!center_.allFinite()) throw GeometryError("non-finite center");
  switch (shape_) {
    case Shape::circle:
      if (params_[0] <= 0.0) throw GeometryError("circle radius must be positive");
      break;
    case Shape::ellipse:
      if (params_[0] <= 0.0 || params_[1] <= 0.0) throw GeometryError("ellipse semi-axes must be positive");
      break;
    case Shape::rounded_rectangle:
      if (params_[0] <= 0.0) throw GeometryError("rounded_rectangle size must be positive");
      if (params_[1] < 2.0 || std::fmod(params_[1], 2.0) != 0.0) {
        throw GeometryError("rounded_rectangle exponent must be an even integer >= 2");
      }
      break;
    case Shape::pear:
      if (std::abs(params_[0]) >= 1.0) throw GeometryError("pear amplitude must lie in (-1, 1)");
      break;
    case Shape::kite:
      if (params_[1] <= 0.0) throw GeometryError("kite height must be positive");
      break;
  }
}

CurvePoint BoundaryCurve::base(double t) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  switch (shape_) {
    case Shape::circle: {
      return polar(params_[0], 0.0, 0.0, t);
    }
    case Shape::ellipse: {
      const double a = params_[0], b = params_[1];
      return {Vec2(a * c, b * s), Vec2(-a * s, b * c), Vec2(-a * c, -b * s)};
    }
    case Shape::rounded_rectangle: {
      // r = size * g^(1/m), g = cos^m + sin^m with m even
      const double size = params_[0], m = params_[1];
      const double cm = std::pow(c, m), sm = std::pow(s, m);
      const double cm1 = std::pow(c, m - 1.0), sm1 = std::pow(s, m - 1.0);
      const double cm2 = std::pow(c, m - 2.0), sm2 = std::pow(s, m - 2.0);
      const double g = cm + sm;
      const double dg = m * (sm1 * c - cm1 * s);
      const double ddg = m * ((m - 1.0) * (cm2 * s * s + sm2 * c * c) - cm - sm);
      const double root = std::pow(g, 1.0 / m);
      const double r = size * root;
      const double dr = size * root * dg / (m * g);
      const double ddr = size * root * (ddg / (m * g) + (1.0 - m) / (m * m) * dg * dg / (g * g));
      return polar(r, dr, ddr, t);
    }
    case Shape::pear: {
      const double a = params_[0];
      return polar(1.0 + a * std::cos(3.0 * t), -3.0 * a * std::sin(3.0 * t), -9.0 * a * std::cos(3.0 * t), t);
    }
    case Shape::kite: {
      const double f = params_[0], h = params_[1];
      const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
      return {Vec2(c + f * c2 - f, h * s), Vec2(-s - 2.0 * f * s2, h * c), Vec2(-c - 4.0 * f * c2, -h * s)};
    }
  }
  throw GeometryError("unknown shape");
}

CurvePoint BoundaryCurve::eval(double t) const {
  CurvePoint p = base(t);
  p.x = center_ + scale_ * p.x;
  p.dx *= scale_;
  p.ddx *= scale_;
  return p;
}

std::string shape_name(Shape shape) { return info(shape).name; }

Shape parse_shape(const std::string& name) {
  for (const auto& s : shape_table()) {
    if (name == s.name) return s.shape;
  }
  throw GeometryError("unknown preset '" + name + "'");
}

std::vector<std::string> shape_names() {
  std::vector<std::string> names;
  for (const auto& s : shape_table()) names.emplace_back(s.name);
  return names;
}

BoundaryCurve make_preset(const std::string& name, const std::vector<double>& params, const Vec2& center,
                          double scale) {
  return BoundaryCurve(parse_shape(name), params, center, scale);
}

NodeSet::NodeSet(int count) : n(count) {
  if (n <= 0 || n % 2 != 0) throw GeometryError("node count must be even and positive");
}

double NodeSet::t(int i) const { return kTwoPi * i / n; }

double NodeSet::weight() const { return kTwoPi / n; }

std::vector<CurveSample> sample(const BoundaryCurve& curve, const NodeSet& nodes) {
  std::vector<CurveSample> out(nodes.n);
  for (int i = 0; i < nodes.n; ++i) {
    const double t = nodes.t(i);
    const CurvePoint p = curve.eval(t);
    CurveSample& s = out[i];
    s.t = t;
    s.x = p.x;
    s.dx = p.dx;
    s.ddx = p.ddx;
    s.jac = p.dx.norm();
    if (!(s.jac >= 1e-12)) throw GeometryError("degenerate parameterization: |x'(t)| vanishes at t=" + std::to_string(t));
    s.tau = p.dx / s.jac;
    s.nu = Vec2(s.tau.y(), -s.tau.x());
  }
  return out;
}

double signed_area(const BoundaryCurve& curve, const NodeSet& nodes) {
  double sum = 0.0;
  for (int i = 0; i < nodes.n; ++i) {
    const CurvePoint p = curve.eval(nodes.t(i));
    sum += cross(p.x, p.dx);
  }
  return 0.5 * sum * nodes.weight();
}

double distance_to_polygon(const Vec2& point, const BoundaryCurve& curve, const NodeSet& nodes) {
  const auto pts = polygon(curve, nodes);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < nodes.n; ++i) {
    best = std::min(best, segment_distance(point, pts[i], pts[(i + 1) % nodes.n]));
  }
  return best;
}

bool point_in_cavity(const Vec2& point, const BoundaryCurve& curve, const NodeSet& nodes) {
  if (nodes.n < 512) throw GeometryError("point_in_cavity needs at least 512 nodes");
  const auto pts = polygon(curve, nodes);
  int winding = 0;
  for (int i = 0; i < nodes.n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % nodes.n];
    if (segment_distance(point, a, b) < 1e-9) {
      throw GeometryError("point lies on the boundary; inside/outside is indeterminate");
    }
    const double side = cross(b - a, point - a);
    if (a.y() <= point.y()) {
      if (b.y() > point.y() && side > 0.0) ++winding;
    } else if (b.y() <= point.y() && side < 0.0) {
      --winding;
    }
  }
  return winding != 0;
}

}  // namespace cavityfm
