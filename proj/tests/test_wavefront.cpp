#include <gtest/gtest.h>

#include <algorithm>

#include <so3tos/io.hpp>
#include <so3tos/wavefront.hpp>

using namespace so3tos;

TEST(Front, SamplesLieOnTheFront) {
  const Alpha a(kPi / 8.0);
  const auto front = propagate_front(a, kPi / 2.0, 64);
  int plus = 0, minus = 0;
  for (const auto& f : front) {
    EXPECT_DOUBLE_EQ(f.T, kPi / 2.0);
    EXPECT_LT((endpoint_S(f.generator, a) - f.point).norm(), 1e-12);
    EXPECT_NEAR(total_time(f.generator, a), kPi / 2.0, 1e-12);
    (f.generator.first_sign > 0 ? plus : minus)++;
  }
  // Before the first full bang the front is two arcs, one per first control.
  EXPECT_GT(plus, 0);
  EXPECT_EQ(plus, minus);
}

TEST(Front, RoundTripsThroughJson) {
  const Alpha a(0.3);
  const auto front = propagate_front(a, 4.0, 32);
  const Json j = to_json(front, 4.0);
  EXPECT_EQ(Json::parse(j.dump()), j);
  EXPECT_EQ(j.at("samples").size(), front.size());
}

TEST(Lattice, FibonacciPointsAreUnit) {
  const auto pts = fibonacci_sphere(500);
  ASSERT_EQ(pts.size(), 500u);
  for (const auto& p : pts) EXPECT_NEAR(p.norm(), 1.0, 1e-14);
}

class MinTime : public ::testing::TestWithParam<double> {};

TEST_P(MinTime, CoverageAndSwitchCounts) {
  const Alpha a(GetParam());
  const auto K = switch_constants(a);
  const MinTimeMap map = min_time_map(a, (K.n_a + 1) * kPi, 3000);
  int most = 0;
  for (const auto& c : map.cells) {
    ASSERT_TRUE(std::isfinite(c.best_time));
    EXPECT_LT((endpoint_S(c.best, a) - c.center).norm(), 1e-7);
    most = std::max(most, c.best.switchings());
  }
  EXPECT_GE(most, K.n_a - 1);
  // A thin band near the south pole needs N_A + 1 switchings for some alpha.
  EXPECT_LE(most, K.n_a + 1);
}

TEST_P(MinTime, OverlapsStaySouthAndLate) {
  const Alpha a(GetParam());
  const auto K = switch_constants(a);
  const MinTimeMap map = min_time_map(a, (K.n_a + 1) * kPi, 3000);
  const auto curves = detect_overlaps(map);
  ASSERT_FALSE(curves.empty());
  std::vector<Vec3> pts;
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      EXPECT_LE(c.points[i].z(), 0.0);
      EXPECT_GE(c.times[i], (K.n_a - 1) * kPi);
      pts.push_back(c.points[i]);
    }
  }
  // Mirror symmetry y2 -> -y2, up to the lattice not being mirror symmetric itself.
  for (const auto& p : pts) {
    const Vec3 q(p.x(), -p.y(), p.z());
    double d = kInf;
    for (const auto& r : pts) d = std::min(d, (r - q).norm());
    EXPECT_LT(d, 6.0 * map.spacing);
  }
}

INSTANTIATE_TEST_SUITE_P(Alphas, MinTime, ::testing::Values(0.3, kPi / 8.0));

TEST(MinTimeOverlaps, MinTimeFilter) {
  const Alpha a(0.3);
  const MinTimeMap map = min_time_map(a, 6.0 * kPi, 1500);
  EXPECT_TRUE(detect_overlaps(map, 100.0).empty());
}

TEST(SouthPole, LabelsAcrossOneCycle) {
  // N_A = 4 runs over alpha in (pi/10, pi/8]; r = pi - 8 alpha falls from 2 alpha to 0.
  const auto near_top = classify_south_pole(Alpha(kPi / (8.0 + 1.88)));
  EXPECT_EQ(near_top.n_a, 4);
  EXPECT_EQ(near_top.label, "A");
  const auto near_bottom = classify_south_pole(Alpha(kPi / (8.0 + 0.28)));
  EXPECT_EQ(near_bottom.label, "C");
  EXPECT_EQ(near_bottom.index, 4);
}

TEST(SouthPole, ZeroRemainderUsesPreviousCurve) {
  const auto rep = classify_south_pole(Alpha(kPi / 8.0));
  EXPECT_EQ(rep.n_a, 4);
  EXPECT_EQ(rep.index, 3);
  EXPECT_DOUBLE_EQ(rep.r, 0.0);
  const Json j = to_json(rep);
  EXPECT_EQ(j.at("label"), rep.label);
}

TEST(Thresholds, RejectsBadCycle) { EXPECT_THROW(measure_case_thresholds(0), std::invalid_argument); }
