#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cavityfm/geometry.hpp"

using namespace cavityfm;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("preset formulas") {
  const auto rr = make_preset("rounded_rectangle");
  CHECK((rr.eval(0.0).x - Vec2(1.5, 0.0)).norm() < 1e-14);
  const auto kite = make_preset("kite");
  CHECK((kite.eval(kPi / 2).x - Vec2(-1.3, 1.5)).norm() < 1e-14);
  const auto pear = make_preset("pear", {0.2}, Vec2::Zero(), 0.5);
  CHECK((pear.eval(0.0).x - Vec2(0.6, 0.0)).norm() < 1e-14);
  const auto pear_default = make_preset("pear");
  CHECK((pear_default.eval(0.0).x - Vec2(1.15, 0.0)).norm() < 1e-14);
}

TEST_CASE("invalid presets") {
  CHECK_THROWS_AS(make_preset("hexagon"), GeometryError);
  CHECK_THROWS_AS(make_preset("circle", {}, Vec2::Zero(), 0.0), GeometryError);
  CHECK_THROWS_AS(make_preset("circle", {}, Vec2::Zero(), -1.0), GeometryError);
  CHECK_THROWS_AS(make_preset("ellipse", {1.0, -1.0}), GeometryError);
  CHECK_THROWS_AS(make_preset("circle", {1.0, 2.0}), GeometryError);
  CHECK_THROWS_AS(NodeSet(7), GeometryError);
}

TEST_CASE("samples on simple curves") {
  const auto s = sample(make_preset("circle"), NodeSet(16));
  CHECK((s[0].x - Vec2(1, 0)).norm() < 1e-15);
  CHECK((s[0].nu - Vec2(1, 0)).norm() < 1e-15);
  CHECK(s[0].jac == doctest::Approx(1.0));
  for (const auto& p : sample(make_preset("circle", {2.0}), NodeSet(12))) CHECK(p.jac == doctest::Approx(2.0));
  const auto e = sample(make_preset("ellipse"), NodeSet(4));
  CHECK((e[1].x - Vec2(0, 1)).norm() < 1e-15);
  CHECK((e[1].nu - Vec2(0, 1)).norm() < 1e-15);
}

TEST_CASE("sample invariants hold for every preset") {
  for (const auto& name : shape_names()) {
    for (const auto& s : sample(make_preset(name), NodeSet(64))) {
      CHECK(std::abs(s.nu.dot(s.tau)) < 1e-14);
      CHECK(std::abs(s.nu.norm() - 1.0) < 1e-14);
      CHECK(std::abs(s.tau.norm() - 1.0) < 1e-14);
      CHECK((s.nu - Vec2(s.dx.y(), -s.dx.x()) / s.jac).norm() < 1e-14);
    }
  }
}

TEST_CASE("analytic derivatives agree with finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  for (const auto& name : shape_names()) {
    const auto c = make_preset(name, {}, Vec2(0.3, -0.2), 1.7);
    for (int i = 0; i < 32; ++i) {
      const double t = angle(rng), h = 1e-5;
      const auto p = c.eval(t);
      const Vec2 d1 = (c.eval(t + h).x - c.eval(t - h).x) / (2 * h);
      const Vec2 d2 = (c.eval(t + h).dx - c.eval(t - h).dx) / (2 * h);
      INFO(name << " t=" << t);
      CHECK((d1 - p.dx).norm() <= 1e-6 * p.dx.norm());
      CHECK((d2 - p.ddx).norm() <= 1e-6 * std::max(1.0, p.ddx.norm()));
    }
  }
}

TEST_CASE("curves close up periodically") {
  for (const auto& name : shape_names()) {
    const auto c = make_preset(name);
    const auto a = c.eval(0.0), b = c.eval(2 * kPi);
    CHECK((a.x - b.x).norm() < 1e-12);
    CHECK((a.dx - b.dx).norm() < 1e-12);
    CHECK((a.ddx - b.ddx).norm() < 1e-11);
  }
}

TEST_CASE("translation shifts points and keeps normals") {
  const Vec2 shift(2.5, -1.0);
  for (const auto& name : shape_names()) {
    const auto a = sample(make_preset(name), NodeSet(32));
    const auto b = sample(make_preset(name, {}, shift), NodeSet(32));
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK((b[i].x - (a[i].x + shift)).norm() < 1e-14);
      CHECK(b[i].nu == a[i].nu);
      CHECK(b[i].jac == a[i].jac);
    }
  }
}

TEST_CASE("signed area") {
  CHECK(std::abs(signed_area(make_preset("circle"), NodeSet(64)) - kPi) < 1e-10);
  CHECK(std::abs(signed_area(make_preset("ellipse"), NodeSet(64)) - 1.5 * kPi) < 1e-8);
  for (const auto& name : shape_names()) CHECK(signed_area(make_preset(name), NodeSet(256)) > 0.0);
}

TEST_CASE("inside/outside classification") {
  const NodeSet fine(1024);
  CHECK(point_in_cavity(Vec2(0, 0), make_preset("circle"), fine));
  CHECK_FALSE(point_in_cavity(Vec2(5, 5), make_preset("circle"), fine));
  CHECK(point_in_cavity(Vec2(-1.3, 1.4), make_preset("kite"), fine));
  CHECK_FALSE(point_in_cavity(Vec2(-1.2, 0.0), make_preset("kite"), fine));
  CHECK_THROWS_AS(point_in_cavity(Vec2(1, 0), make_preset("circle"), fine), GeometryError);
  CHECK_THROWS_AS(point_in_cavity(Vec2(0, 0), make_preset("circle"), NodeSet(256)), GeometryError);
}

TEST_CASE("kite notch point matches a high-resolution winding count") {
  // (-1.3, 1.4) sits just below the kite tip at t = pi/2.
  const auto kite = make_preset("kite");
  double winding = 0.0;
  const int m = 200000;
  for (int i = 0; i < m; ++i) {
    const Vec2 a = kite.eval(2 * kPi * i / m).x - Vec2(-1.3, 1.4);
    const Vec2 b = kite.eval(2 * kPi * (i + 1) / m).x - Vec2(-1.3, 1.4);
    winding += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  CHECK(std::abs(winding / (2 * kPi) - 1.0) < 1e-9);
}

TEST_CASE("degenerate parameterization is rejected") {
  // Speed about 1e-13 everywhere.
  CHECK_THROWS_AS(sample(make_preset("ellipse", {1e-3, 1e-3}, Vec2::Zero(), 1e-10), NodeSet(8)), GeometryError);
}
