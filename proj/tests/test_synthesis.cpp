#include <gtest/gtest.h>

#include <cmath>

#include <so3tos/synthesis.hpp>

using namespace so3tos;

namespace {

// At s = pi/2 the interior duration reduces to pi + 2 atan(tan^2 alpha).
double v_half(const Alpha& a) {
  const double t = std::tan(a.value());
  return kPi + 2.0 * std::atan(t * t);
}

}  // namespace

TEST(InteriorDuration, EndsAndMiddle) {
  for (double al : {0.05, 0.3, kPi / 8.0, 0.7}) {
    const Alpha a(al);
    EXPECT_NEAR(v_of_s(0.0, a), kPi, 1e-12);
    EXPECT_NEAR(v_of_s(kPi, a), kPi, 1e-12);
    EXPECT_NEAR(v_of_s(kPi / 2.0, a), v_half(a), 1e-12) << al;
    for (int i = 0; i <= 64; ++i) EXPECT_GE(v_max(a) + 1e-9, v_of_s(kPi * i / 64.0, a));
  }
  EXPECT_NEAR(v_of_s(kPi / 2.0, Alpha(kPi / 8.0)), 3.4814296, 1e-7);
}

TEST(InteriorDuration, AgreesWithRoot) {
  const Alpha a(0.41);
  for (int i = 0; i <= 40; ++i) {
    const double s = kPi * i / 40.0;
    EXPECT_NEAR(v_of_s(s, a), v_from_req(s, a), 1e-10);
    EXPECT_GE(v_of_s(s, a), kPi - 1e-12);
  }
}

TEST(SwitchConstants, TableValues) {
  struct Row {
    double alpha;
    int n0, n_s;
  };
  for (const Row& r : {Row{kPi / 16.0, 4, 4}, Row{kPi / 12.0, 2, 3}, Row{0.3, 2, 3}}) {
    const auto K = switch_constants(Alpha(r.alpha));
    EXPECT_EQ(K.n0, r.n0) << r.alpha;
    EXPECT_EQ(K.n_s, r.n_s) << r.alpha;
    EXPECT_EQ(K.k_tilde, 2 + static_cast<int>(std::floor(kPi / (4.0 * r.alpha) + 1e-9))) << r.alpha;
  }
}

TEST(SwitchConstants, ResonanceIsFlagged) {
  const auto K = switch_constants(Alpha(kPi / 16.0));
  EXPECT_TRUE(K.resonant);
  EXPECT_EQ(K.n_s, K.n_s_above);
  EXPECT_GE(K.n_s_below, K.n_s_above);
  EXPECT_DOUBLE_EQ(K.r, 0.0);
  EXPECT_FALSE(switch_constants(Alpha(0.3)).resonant);
}

TEST(SwitchConstants, RemainderInRange) {
  for (double al = 0.02; al < kPi / 4.0 - 1e-3; al += 0.013) {
    const auto K = switch_constants(Alpha(al));
    EXPECT_EQ(K.n_a, static_cast<int>(std::floor(kPi / (2.0 * al))));
    EXPECT_GE(K.r, -1e-12);
    EXPECT_LT(K.r, 2.0 * al + 1e-12);
    EXPECT_EQ(n_s(Alpha(al)), K.n_s);
  }
}

TEST(Endpoints, AlternatingBangsStartAtMeridianPoints) {
  const Alpha a(kPi / 8.0);
  for (int k = 1; k <= 4; ++k) {
    for (int eps : {+1, -1}) EXPECT_LT((switching_point(k, eps, 0.0, a) - P_n(a, eps, k)).norm(), 1e-12);
  }
  // Full pi-bangs alternate signs and march down the meridian.
  for (int m = 1; m <= 3; ++m) {
    const BangProgramS p{+1, kPi, m + 1, 0.0};
    const int sign = m % 2 ? +1 : -1;
    EXPECT_LT((partial_endpoint_S(p, a, m) - P_n(a, sign, m)).norm(), 1e-12) << m;
  }
}

TEST(Endpoints, TraceEndsAtEndpoint) {
  const Alpha a(0.3);
  const BangProgramS p{-1, 1.1, 4, 0.7};
  const auto pts = trace_S(p, a, 16);
  EXPECT_LT((pts.back() - endpoint_S(p, a)).norm(), 1e-14);
  EXPECT_LT((pts.front() - kY0).norm(), 1e-15);
  EXPECT_NEAR(total_time(p, a), 1.1 + 2.0 * v_of_s(1.1, a) + 0.7, 1e-14);
}

TEST(Curves, RejectBadIndex) { EXPECT_THROW(switching_curve(0, 1, Alpha(0.3)), std::invalid_argument); }

TEST(Curves, NorthernPartStaysInLune) {
  const Alpha a(0.3);
  for (int k = 1; k <= 3; ++k) {
    const auto c = switching_curve(k, +1, a, 128);
    for (const auto& y : c.y) {
      if (y.z() >= 0.0) EXPECT_LE(lune_excess(y, k, +1, a), 1e-8);
    }
  }
}

TEST(Chart, Invariants) {
  const Alpha a(kPi / 8.0);
  const SynthesisChart ch = build_chart(a, 256);
  EXPECT_DOUBLE_EQ(ch.t_op, kPi);
  EXPECT_LT((ch.y_eq_plus + ch.y_eq_minus).norm(), 1e-8);
  EXPECT_NEAR(ch.y_eq_plus.z(), 0.0, 1e-9);
  EXPECT_EQ(ch.equator_count, ch.constants.n_s);
  EXPECT_FALSE(ch.regions.empty());
  for (const auto& c : ch.curves) EXPECT_LT((c.y.front() - P_n(a, c.eps, c.k)).norm(), 1e-12);
}

TEST(Chart, EquatorCountMatchesNs) {
  for (double al : {kPi / 12.0, 0.3, 0.5}) {
    const SynthesisChart ch = build_chart(Alpha(al), 128);
    EXPECT_EQ(ch.equator_count, ch.constants.n_s) << al;
  }
}

TEST(SwitchCount, SimpleTargets) {
  const Alpha a(kPi / 8.0);
  EXPECT_EQ(count_switchings_to(kY0, a), 0);
  EXPECT_EQ(count_switchings_to(P_n(a, +1, 1), a), 0);
}

TEST(LocalOptimality, FirstCurveHasNoConjugatePoints) {
  const Alpha a(kPi / 8.0);
  EXPECT_TRUE(local_optimality(switching_curve(1, +1, a), a).conjugate.empty());
}

TEST(LocalOptimality, BangFlowIsFlaggedEverywhere) {
  const Alpha a(kPi / 8.0);
  std::vector<double> grid;
  for (int i = 0; i < 50; ++i) grid.push_back(0.1 + 0.05 * i);
  const Vec3 start(0.6, 0.0, 0.8);
  const auto rep = local_optimality_of([&](double s) { return flow_S(a, +1, s, start); }, grid, a);
  EXPECT_EQ(rep.conjugate.size(), grid.size() - 2);  // endpoints excluded
}

TEST(Meridian, ParallelCoefficient) {
  const Alpha a(0.3);
  EXPECT_NEAR(meridian_parallel_coeff(0.3, a), 0.0, 1e-15);
  EXPECT_GT(meridian_parallel_coeff(1.0, a), 0.0);
  EXPECT_LT(meridian_parallel_coeff(0.1, a), 0.0);
}
