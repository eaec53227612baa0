#include <gtest/gtest.h>

#include <random>

#include <so3tos/lie_core.hpp>

using namespace so3tos;

TEST(Alpha, RejectsValuesOutsideTheOpenRange) {
  EXPECT_THROW(Alpha(0.0), std::invalid_argument);
  EXPECT_THROW(Alpha(-0.1), std::invalid_argument);
  EXPECT_THROW(Alpha(kPi / 4.0), std::invalid_argument);
  EXPECT_THROW(Alpha(kPi / 4.0 - 5e-4), std::invalid_argument);
  EXPECT_NO_THROW(Alpha(kPi / 4.0 - 2e-3));
  try {
    Alpha(1.0);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("pi/4"), std::string::npos);
  }
}

TEST(Alpha, CachesTrigValues) {
  const Alpha a(0.3);
  EXPECT_DOUBLE_EQ(a.c(), std::cos(0.3));
  EXPECT_DOUBLE_EQ(a.s(), std::sin(0.3));
}

TEST(Frame, NormsAndBracketRelations) {
  const Frame fr(0.4);
  const double c = std::cos(0.4), s = std::sin(0.4);
  EXPECT_NEAR(fr.f.norm(), c, 1e-15);
  EXPECT_NEAR(fr.g.norm(), s, 1e-15);
  EXPECT_NEAR(fr.f.dot(fr.g), 0.0, 1e-15);
  EXPECT_NEAR(fr.Xp().norm(), 1.0, 1e-15);
  EXPECT_NEAR(fr.Xm().norm(), 1.0, 1e-15);
  // [g, h] = s^2 f and [h, f] = c^2 g.
  EXPECT_LT((lie_bracket(fr.g, fr.h) - s * s * fr.f).norm(), 1e-15);
  EXPECT_LT((lie_bracket(fr.h, fr.f) - c * c * fr.g).norm(), 1e-15);
}

TEST(Frame, CoordinatesRoundTrip) {
  const Frame fr(0.25);
  const Vec3 abc(0.3, -1.2, 0.7);
  EXPECT_LT((fr.coords(fr.from_coords(abc)) - abc).norm(), 1e-13);
}

TEST(Hat, VeeInvertsHatAndMatchesCross) {
  const Vec3 v(0.1, -2.0, 0.5), w(1.0, 0.3, -0.4);
  EXPECT_LT((vee(hat(v)) - v).norm(), 1e-15);
  EXPECT_LT((hat(v) * w - v.cross(w)).norm(), 1e-15);
  EXPECT_NEAR(inner(v, w), -0.5 * (hat(v) * hat(w)).trace(), 1e-14);
}

TEST(Exp, RodriguesIsOrthogonalAndPeriodic) {
  const Frame fr(0.5);
  for (double t : {0.0, 0.7, kPi, 5.0}) {
    const Mat3 R = exp_unit_matrix(fr.Xp(), t);
    EXPECT_LT((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-14);
    EXPECT_LT((R * fr.Xp() - fr.Xp()).norm(), 1e-14);
  }
  EXPECT_LT((exp_unit_matrix(fr.Xm(), 2.0 * kPi) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Exp, GeneralGeneratorScalesTime) {
  const Vec3 z(0.0, 0.0, 0.5);
  EXPECT_LT((exp_general_matrix(z, 2.0) - exp_unit_matrix(Vec3::UnitZ(), 1.0)).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((exp_general_matrix(Vec3::Zero(), 3.0) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Adjoint, ClosedFormsMatchConjugation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-7.0, 7.0);
  for (double al : {0.05, 0.3, 0.7}) {
    const Frame fr(al);
    for (int i = 0; i < 40; ++i) {
      const double t = U(rng);
      const Vec3 w(U(rng), U(rng), U(rng));
      for (const Vec3& X : {fr.Xp(), fr.Xm(), fr.f}) {
        EXPECT_LT((ad_conjugate(fr, X, t, w) - ad_conjugate_generic(X, t, w)).norm(), 1e-12);
      }
    }
  }
}

TEST(Adjoint, OtherGeneratorsUseGenericBranch) {
  const Frame fr(0.3);
  const Vec3 X = fr.g.normalized();
  const Vec3 w(0.2, 0.1, -0.3);
  EXPECT_LT((ad_conjugate(fr, X, 1.1, w) - ad_conjugate_generic(X, 1.1, w)).norm(), 1e-15);
}

TEST(Rotation, ReorthonormalizeRepairsDrift) {
  Mat3 m = exp_unit_matrix(Vec3(0.0, 0.6, 0.8), 1.3);
  m(0, 1) += 1e-6;
  const Mat3 r = reorthonormalize(m);
  EXPECT_LT((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((r - m).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(Rotation, InverseAndDistance) {
  const Rotation R = exp_unit(Vec3(0.6, 0.0, 0.8), 2.0);
  EXPECT_LT((R * R.inverse()).distance(Rotation()), 1e-14);
  EXPECT_GT(R.distance(Rotation()), 0.1);
}

TEST(Examples, HatOfUnitZActsAsCross) {
  EXPECT_LT((hat(Vec3::UnitZ()) * Vec3::UnitX() - Vec3::UnitY()).norm(), 1e-15);
  EXPECT_EQ(hat(Vec3::Zero()), Mat3::Zero());
  EXPECT_LT(lie_bracket(Vec3(1, 2, 3), Vec3(1, 2, 3)).norm(), 1e-15);
}

TEST(Examples, DriftPeriodAndHalfPeriodConjugation) {
  const Alpha a(kPi / 8.0);
  const Frame fr(a);
  EXPECT_LT((exp_general_matrix(fr.f, 2.0 * kPi / a.c()) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LT((ad_conjugate(fr, fr.f, kPi / a.c(), fr.g) + fr.g).norm(), 1e-10);
  EXPECT_LT((ad_conjugate(fr, fr.Xp(), 0.0, fr.g) - fr.g).norm(), 1e-15);
  const Vec3 expect = a.s() * a.s() * fr.f - a.c() * a.c() * fr.g;
  EXPECT_LT((ad_conjugate(fr, fr.Xp(), kPi / 2.0, fr.h) - expect).norm(), 1e-10);
}
