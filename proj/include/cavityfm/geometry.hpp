#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace cavityfm {

using Vec2 = Eigen::Vector2d;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Shape { circle, ellipse, rounded_rectangle, pear, kite };

// Point, velocity and acceleration of the parameterization at one t.
struct CurvePoint {
  Vec2 x;
  Vec2 dx;
  Vec2 ddx;
};

// Analytic closed curve t in [0, 2pi), counterclockwise.
//
// Shape parameters (defaults in brackets):
//   circle             radius [1]
//   ellipse            semi_x [1.5], semi_y [1]
//   rounded_rectangle  size [1.5], exponent [10]
//   pear               amplitude [0.15]
//   kite               fold [0.65], height [1.5]
class BoundaryCurve {
 public:
  BoundaryCurve(Shape shape, std::vector<double> params, Vec2 center, double scale);

  CurvePoint eval(double t) const;

  Shape shape() const { return shape_; }
  const std::vector<double>& params() const { return params_; }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }

 private:
  CurvePoint base(double t) const;

  Shape shape_;
  std::vector<double> params_;
  Vec2 center_;
  double scale_;
};

// Empty params selects the defaults listed above.
BoundaryCurve make_preset(const std::string& name, const std::vector<double>& params = {},
                          const Vec2& center = Vec2::Zero(), double scale = 1.0);

std::string shape_name(Shape shape);
Shape parse_shape(const std::string& name);
std::vector<std::string> shape_names();

struct NodeSet {
  explicit NodeSet(int n);
  int n;
  double t(int i) const;
  double weight() const;
};

struct CurveSample {
  double t = 0.0;
  Vec2 x;
  Vec2 dx;
  Vec2 ddx;
  double jac = 0.0;
  Vec2 nu;
  Vec2 tau;
};

std::vector<CurveSample> sample(const BoundaryCurve& curve, const NodeSet& nodes);

double signed_area(const BoundaryCurve& curve, const NodeSet& nodes);

// Winding-number test against the polygon through the nodes (n >= 512).
// Throws GeometryError when the point sits within 1e-9 of the polygon.
bool point_in_cavity(const Vec2& point, const BoundaryCurve& curve, const NodeSet& nodes);

// Euclidean distance from point to the polygon through the nodes.
double distance_to_polygon(const Vec2& point, const BoundaryCurve& curve, const NodeSet& nodes);

}  // namespace cavityfm
