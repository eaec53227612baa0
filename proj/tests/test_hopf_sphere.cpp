#include <gtest/gtest.h>

#include <random>

#include <so3tos/hopf_sphere.hpp>

using namespace so3tos;

TEST(Projection, BangFlowsDescendToRotationsAboutTheAxes) {
  const Alpha a(0.35);
  const Frame fr(a);
  for (int sign : {+1, -1}) {
    for (double t : {0.3, 2.0, 5.5}) {
      EXPECT_LT((hopf_project(exp_unit(fr.X(sign), t)) - flow_S(a, sign, t, kY0)).norm(), 1e-14);
    }
  }
}

TEST(Projection, EquivariantUnderRightMultiplication) {
  const Alpha a(0.2);
  const Frame fr(a);
  const Rotation x = exp_unit(fr.Xp(), 1.1) * exp_unit(fr.Xm(), 4.0);
  const Vec3 y = hopf_project(x);
  EXPECT_LT((hopf_project(x * exp_unit(fr.Xp(), 0.8)) - flow_S(a, +1, 0.8, y)).norm(), 1e-14);
}

TEST(Projection, DriftFixesTheBasePoint) {
  const Frame fr(0.5);
  EXPECT_LT((hopf_project(exp_general(fr.f, 1.7)) - kY0).norm(), 1e-15);
}

TEST(Geometry, MeridianAndEquatorAreTheDeterminantZeros) {
  const Alpha a(0.4);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-kPi, kPi);
  for (int i = 0; i < 50; ++i) {
    const double th = U(rng);
    EXPECT_NEAR(delta_A(a, Vec3(std::sin(th), 0.0, std::cos(th))), 0.0, 1e-14);
    EXPECT_NEAR(delta_B(a, Vec3(std::cos(th), std::sin(th), 0.0)), 0.0, 1e-14);
  }
  const Vec3 generic = Vec3(0.3, -0.5, 0.8).normalized();
  EXPECT_GT(std::abs(delta_A(a, generic)), 1e-3);
  EXPECT_GT(std::abs(delta_B(a, generic)), 1e-3);
  EXPECT_THROW(f_S_ratio(a, Vec3(0.0, 0.0, 1.0)), std::domain_error);
}

TEST(Geometry, TangentBasisIsRightHanded) {
  const Vec3 y = Vec3(0.2, 0.7, -0.4).normalized();
  const auto [e1, e2] = tangent_basis(y);
  EXPECT_LT((e1.cross(e2) - y).norm(), 1e-14);
  const Vec3 V = Vec3(1, 2, 3).cross(y), W = Vec3(-1, 0, 2).cross(y);
  EXPECT_NEAR(det_tangent(y, V, W), y.dot(V.cross(W)), 1e-14);
}

TEST(Geometry, GeodesicAndMeridianPoints) {
  EXPECT_NEAR(geodesic(kY0, Vec3(1, 0, 0)), kPi / 2.0, 1e-15);
  EXPECT_NEAR(geodesic(kY0, -kY0), kPi, 1e-15);
  EXPECT_THROW(meridian_point(4.0), std::invalid_argument);
  const Alpha a(0.3);
  EXPECT_LT((P_n(a, +1, 2) - meridian_point(1.2)).norm(), 1e-15);
  EXPECT_LT((P_n(a, -1, 2) - meridian_point(-1.2)).norm(), 1e-15);
}

TEST(Geometry, BracketMatchesFiniteDifferences) {
  const Alpha a(0.3);
  const Vec3 y = Vec3(0.3, 0.4, 0.5).normalized();
  // [F,G] = DG F - DF G for linear fields F = A y, G = B y.
  const Vec3 F = field_eval(a, FieldKind::F, y), G = field_eval(a, FieldKind::G, y);
  const Vec3 expect = axis_G(a).cross(F) - axis_F(a).cross(G);
  EXPECT_LT((bracket_FG(a, y) - expect).norm(), 1e-15);
}

TEST(Regions, LabelsAndCanonicalRepresentative) {
  EXPECT_EQ(region_of(kY0), Region::NorthPole);
  EXPECT_EQ(region_of(-kY0), Region::SouthPole);
  EXPECT_EQ(region_of(Vec3(1, 0, 0)), Region::Ep);
  EXPECT_EQ(region_of(Vec3(-1, 0, 0)), Region::Em);
  EXPECT_EQ(region_of(Vec3(0.6, 0, 0.8)), Region::Mp);
  EXPECT_EQ(region_of(Vec3(-0.6, 0, 0.8)), Region::Mm);
  EXPECT_EQ(region_of(Vec3(0, -0.6, 0.8)), Region::NHp);
  EXPECT_EQ(region_of(Vec3(0, 0.6, 0.8)), Region::NHm);
  EXPECT_EQ(region_of(Vec3(0, -0.6, -0.8)), Region::SHp);
  EXPECT_STREQ(to_string(Region::SHm), "SH-");
  const Vec3 y(0.1, 0.3, -0.9);
  EXPECT_LT((canonical(y) + y).norm(), 1e-15);
  EXPECT_LT((canonical(Vec3(0, 1, 0)) - Vec3(0, -1, 0)).norm(), 1e-15);
}

TEST(Pendulum, EquilibriumProjectsToUnitPoint) {
  for (double al : {0.01, 0.3, 0.7}) {
    const Alpha a(al);
    const auto p = stereographic(axis_X(a, +1), pendulum_radius(a));
    EXPECT_NEAR(p.x(), 1.0, 1e-13);
    EXPECT_NEAR(p.y(), 0.0, 1e-15);
  }
  EXPECT_THROW(stereographic(-kY0, 1.0), std::domain_error);
  const Eigen::Vector2d v = pendulum_field(Eigen::Vector2d(1.0, 0.0), 1.0);
  EXPECT_NEAR(v.norm(), 0.0, 1e-15);
}

TEST(Examples, HalfTurnReachesTwiceAlpha) {
  const Alpha a(0.3);
  const Frame fr(a);
  EXPECT_LT((hopf_project(exp_unit(fr.Xp(), kPi)) - meridian_point(0.6)).norm(), 1e-9);
  EXPECT_LT((hopf_project(Rotation()) - kY0).norm(), 1e-15);
}

TEST(Examples, FieldValues) {
  const Alpha a(0.3);
  EXPECT_LT(field_eval(a, FieldKind::F, kY0).norm(), 1e-15);
  EXPECT_LT(field_eval(a, FieldKind::Xplus, meridian_point(0.3)).norm(), 1e-12);
  EXPECT_LT((field_eval(a, FieldKind::G, Vec3(0, 1, 0)) - Vec3(0, 0, a.s())).norm(), 1e-15);
}

TEST(Examples, RatioSignsOffTheMeridian) {
  const Alpha a(0.3);
  const Vec3 y1(0.0, 0.3, std::sqrt(1.0 - 0.09));
  EXPECT_NE(delta_A(a, y1), 0.0);
  EXPECT_NE(delta_B(a, y1), 0.0);
  EXPECT_GT(f_S_ratio(a, y1), 0.0);
  EXPECT_LT(f_S_ratio(a, Vec3(0.0, -0.5, std::sqrt(0.75))), 0.0);
  EXPECT_NEAR(delta_A(a, Vec3(1, 0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(delta_B(a, Vec3(1, 0, 0)), 0.0, 1e-15);
}

TEST(Examples, MeridianPoints) {
  EXPECT_LT((meridian_point(0.0) - kY0).norm(), 1e-15);
  EXPECT_LT((meridian_point(kPi / 2.0) - Vec3(1, 0, 0)).norm(), 1e-15);
  EXPECT_LT((P_n(Alpha(kPi / 8.0), +1, 2) - Vec3(1, 0, 0)).norm(), 1e-15);
  EXPECT_LT(stereographic(kY0, 3.0).norm(), 1e-15);
}
