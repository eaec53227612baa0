#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "io.hpp"
#include "oracle.hpp"
#include "wavefront.hpp"

namespace so3tos {

struct InvariantResult {
  std::string id;
  double value = 0.0;  // measured deviation (or count)
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifySettings {
  unsigned seed = 1;
  int samples = 64;      // random draws per sampled invariant
  int grid = 512;        // s-grid for curves and v
  int cells = 2000;      // min-time map size for coverage
  int oracle_points = 6; // free-program cross-checks
  double horizon = 0.0;  // coverage horizon; <= 0 means (N_A + 1) pi
};

namespace detail {

inline InvariantResult bound(std::string id, double value, double tol, std::string detail = {}) {
  return {std::move(id), value, tol, value <= tol, std::move(detail)};
}

}  // namespace detail

/// All invariants are deterministic given the settings.
inline std::vector<InvariantResult> run_invariants(const Alpha& a, const VerifySettings& vs = {}) {
  std::vector<InvariantResult> out;
  std::mt19937_64 rng(vs.seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Frame fr(a);
  const SwitchConstants K = switch_constants(a);

  {
    double worst = 0.0;
    for (int i = 0; i < vs.samples; ++i) {
      const Mat3 R = exp_unit_matrix(fr.X(i % 2 ? 1 : -1), 4.0 * kPi * U(rng));
      worst = std::max({worst, (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(), std::abs(R.determinant() - 1.0)});
    }
    out.push_back(detail::bound("lie_core.exp_orthonormal", worst, 1e-12));
  }
  out.push_back(detail::bound("lie_core.frame_bracket", (lie_bracket(fr.f, fr.g) - fr.h).norm(), 1e-12));

  {
    double worst = 0.0;
    for (int i = 0; i < vs.samples; ++i) {
      Covector cov;
      cov.phi = Vec3(U(rng) - 0.5, U(rng) - 0.5, U(rng) - 0.5);
      ExtremalState st = ExtremalState::from_covector(fr, cov);
      const double i2 = casimir(a, switching_functions(fr, st));
      for (int k = 0; k < 4; ++k) st = propagate_bang(fr, st, k % 2 ? 1 : -1, 2.0 * kPi * U(rng));
      worst = std::max(worst, std::abs(casimir(a, switching_functions(fr, st)) - i2));
    }
    out.push_back(detail::bound("extremal_flow.casimir_conserved", worst, 1e-9));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < vs.samples; ++i) {
      BangProgramS p{U(rng) < 0.5 ? 1 : -1, kPi * U(rng), 1 + static_cast<int>(6 * U(rng)), 0.0};
      p.t = (p.m > 2 ? v_of_s(p.s, a) : kPi) * U(rng);
      double e = 0.0;
      lift_check(p, a, 1e-9, &e);
      worst = std::max(worst, e);
    }
    out.push_back(detail::bound("hopf_sphere.lift_projects", worst, 1e-9));
  }

  {
    double worst = 0.0;
    for (int i = 0; i <= vs.grid; ++i) {
      const double s = kPi * i / vs.grid;
      worst = std::max(worst, std::abs(v_of_s(s, a) - v_from_req(s, a)));
    }
    out.push_back(detail::bound("synthesis.v_vs_req", worst, 1e-9));
  }

  const SynthesisChart chart = build_chart(a, vs.grid);
  {
    double worst = 0.0;
    for (const auto& c : chart.curves) worst = std::max(worst, (c.y.front() - P_n(a, c.eps, c.k)).norm());
    out.push_back(detail::bound("synthesis.curves_start_at_P", worst, 1e-12));
  }
  out.push_back(detail::bound("synthesis.equator_count_is_N_S", std::abs(chart.equator_count - K.n_s), 0.0,
                              "equator " + std::to_string(chart.equator_count) + ", N_S " + std::to_string(K.n_s)));
  out.push_back(detail::bound("io.chart_roundtrip", to_json(chart_from_json(Json::parse(to_json(chart).dump()))) == to_json(chart) ? 0.0 : 1.0, 0.0));

  {
    const StructuredSolver solver(a, (K.n_a + 2) * kPi);
    double worst = 0.0;
    int unreached = 0;
    for (int i = 0; i < vs.oracle_points; ++i) {
      // Targets reached by short programs keep the free search grid small.
      BangProgramS p{i % 2 ? 1 : -1, kPi * U(rng), 2 + i % 3, 0.0};
      p.t = (p.m > 2 ? v_of_s(p.s, a) : kPi) * U(rng);
      const Vec3 y = endpoint_S(p, a);
      const auto b = solver.best(y);
      if (!std::isfinite(b.time) || b.time > total_time(p, a) + 1e-9) {
        ++unreached;
        continue;
      }
      const auto f = free_program_search(y, a, b.program.m + 1, 48);
      worst = std::max(worst, b.time - f.time);  // free search may only beat the family within resolution
    }
    out.push_back(detail::bound("oracle.structured_not_beaten", worst, 1e-3));
    out.push_back(detail::bound("oracle.structured_reaches", unreached, 0.0, "targets above the generating program time"));
  }

  {
    const MinTimeMap map = min_time_map(a, vs.horizon > 0.0 ? vs.horizon : (K.n_a + 1) * kPi, vs.cells);
    int missing = 0;
    for (const auto& c : map.cells) missing += std::isfinite(c.best_time) ? 0 : 1;
    out.push_back(detail::bound("wavefront.coverage", missing, 0.0, std::to_string(map.cells.size()) + " cells"));
  }
  return out;
}

}  // namespace so3tos
