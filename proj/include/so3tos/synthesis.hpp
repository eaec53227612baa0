#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "hopf_sphere.hpp"
#include "lie_core.hpp"

namespace so3tos {

/// Interior bang duration as a function of the first arc length s.
inline double v_of_s(double s, const Alpha& a) {
  const double cot = a.c() / a.s();
  return kPi + 2.0 * std::atan(std::sin(s) / (std::cos(s) + cot * cot));
}

inline double v_max(const Alpha& a) {
  const double t = std::tan(a.value());
  return kPi + 2.0 * std::asin(t * t);
}

/// Root t1 in [pi, 2pi) of -s^2 cos(s - t1/2) = c^2 cos(t1/2), by bisection.
inline double v_from_req(double s, const Alpha& a, double tol = 1e-13) {
  const double s2 = a.s() * a.s(), c2 = a.c() * a.c();
  auto g = [&](double t1) { return -s2 * std::cos(s - 0.5 * t1) - c2 * std::cos(0.5 * t1); };
  double lo = kPi, hi = 2.0 * kPi;
  double glo = g(lo);
  if (glo > 1e-15 || g(hi) <= 0.0) throw std::domain_error("v_from_req: no root in [pi, 2pi)");
  if (std::abs(glo) <= 1e-15) return lo;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

/**
 * @brief Downstairs program: first arc s, then m - 2 arcs of length v(s), last arc t.
 *
 * Signs alternate from first_sign. For m = 1 the only arc has length s.
 */
struct BangProgramS {
  int first_sign = 1;
  double s = 0.0;
  int m = 1;
  double t = 0.0;

  int last_sign() const { return (m % 2 == 1) ? first_sign : -first_sign; }
  int switchings() const { return m - 1; }
};

inline double total_time(const BangProgramS& p, const Alpha& a) {
  if (p.m == 1) return p.s;
  return p.s + (p.m - 2) * v_of_s(p.s, a) + p.t;
}

/// Point reached after the first k arcs of p (k <= m).
inline Vec3 partial_endpoint_S(const BangProgramS& p, const Alpha& a, int k, Vec3 y = kY0) {
  const double v = p.m > 2 ? v_of_s(p.s, a) : 0.0;
  int sign = p.first_sign;
  for (int i = 0; i < k; ++i) {
    const double d = (i == 0) ? p.s : (i + 1 == p.m ? p.t : v);
    y = flow_S(a, sign, d, y);
    sign = -sign;
  }
  return y;
}

inline Vec3 endpoint_S(const BangProgramS& p, const Alpha& a) {
  return partial_endpoint_S(p, a, p.m);
}

/// Sampled trajectory of p, about `per_arc` points per arc.
inline std::vector<Vec3> trace_S(const BangProgramS& p, const Alpha& a, int per_arc = 64) {
  std::vector<Vec3> pts{kY0};
  const double v = p.m > 2 ? v_of_s(p.s, a) : 0.0;
  Vec3 y = kY0;
  int sign = p.first_sign;
  for (int i = 0; i < p.m; ++i) {
    const double d = (i == 0) ? p.s : (i + 1 == p.m ? p.t : v);
    for (int j = 1; j <= per_arc; ++j) pts.push_back(flow_S(a, sign, d * j / per_arc, y));
    y = flow_S(a, sign, d, y);
    sign = -sign;
  }
  return pts;
}

/// C^eps_k(s) = e^{X^eps v(s)} C^{-eps}_{k-1}(s), with C_0^eps(s) = e^{X^eps s} y0.
inline BangProgramS curve_program(int k, int eps, double s) {
  return BangProgramS{(k % 2 == 0) ? eps : -eps, s, k + 1, 0.0};
}

inline Vec3 switching_point(int k, int eps, double s, const Alpha& a) {
  BangProgramS p = curve_program(k, eps, s);
  p.t = v_of_s(s, a);
  return endpoint_S(p, a);
}

/// Uniform grid on [0, pi] plus 4x refinement within 0.05 of both ends.
inline std::vector<double> curve_s_grid(int n = 512) {
  std::vector<double> s;
  const double h = kPi / (n - 1);
  const double edge = 0.05;
  for (int i = 0; i < n; ++i) {
    const double x = i * h;
    s.push_back(x);
    if (i + 1 < n && (x < edge || x + h > kPi - edge)) {
      for (int j = 1; j < 4; ++j) s.push_back(x + j * h / 4.0);
    }
  }
  return s;
}

struct SwitchingCurveS {
  int k = 1;
  int eps = 1;
  std::vector<double> s;
  std::vector<Vec3> y;
};

inline SwitchingCurveS switching_curve(int k, int eps, const Alpha& a, int grid_size = 512) {
  if (k < 1) throw std::invalid_argument("switching_curve: k must be >= 1");
  SwitchingCurveS c{k, eps, curve_s_grid(grid_size), {}};
  c.y.reserve(c.s.size());
  for (double s : c.s) c.y.push_back(switching_point(k, eps, s, a));
  return c;
}

/// Signed excess of y outside the lune of C^eps_k: max of disk excess and wrong-side y2.
inline double lune_excess(const Vec3& y, int k, int eps, const Alpha& a) {
  const Vec3 center = meridian_point(std::clamp(eps * (2 * k + 1) * a.value(), -kPi, kPi));
  const double disk = geodesic(y, center) - a.value();
  return std::max(disk, eps * y.y());
}

// ---------------------------------------------------------------------------
// Integer constants with resonance handling.

struct ExactFloor {
  long n = 0;
  bool resonant = false;
};

/// floor(coeff * pi / alpha) in extended precision; alpha within tol of coeff*pi/n snaps to n.
inline ExactFloor exact_floor_pi_over(long double coeff, double alpha, double tol = 1e-12) {
  const long double pi = std::numbers::pi_v<long double>;
  const long double q = coeff * pi / static_cast<long double>(alpha);
  const long double n = std::round(q);
  if (n > 0 && std::abs(static_cast<long double>(alpha) - coeff * pi / n) < tol) {
    return {static_cast<long>(n), true};
  }
  return {static_cast<long>(std::floor(q)), false};
}

struct SwitchConstants {
  int n0 = 0;
  int n_s = 0;
  int n_a = 0;      // floor(pi/(2 alpha)), bound on sphere switchings
  int n_a_agr = 0;  // floor(pi/alpha), the index-theory bound
  int k_tilde = 0;
  bool resonant = false;  // alpha within 1e-12 of pi/(4n)
  int n_s_below = 0;      // N_S for alpha slightly below the resonance
  int n_s_above = 0;      // N_S for alpha slightly above the resonance
  double r = 0.0;         // pi - 2 alpha N_A
  double r_alpha = 0.0;   // N_S (2/pi) arcsin(tan^2 alpha)
};

inline int n_s_from(long double q, int n0) {
  return n0 - static_cast<int>(std::floor(static_cast<long double>(n0) - q));
}

inline SwitchConstants switch_constants(const Alpha& a) {
  SwitchConstants k;
  const double al = a.value();
  const long double pi = std::numbers::pi_v<long double>;
  const ExactFloor q8 = exact_floor_pi_over(0.125L, al);
  const ExactFloor q4 = exact_floor_pi_over(0.25L, al);
  const ExactFloor q2 = exact_floor_pi_over(0.5L, al);
  const ExactFloor q1 = exact_floor_pi_over(1.0L, al);
  k.n0 = 2 * static_cast<int>(q8.n);
  long double q = pi / (4.0L * al);
  if (q4.resonant) q = static_cast<long double>(q4.n);
  k.n_s = n_s_from(q, k.n0);
  k.resonant = q4.resonant;
  if (q4.resonant) {
    // alpha slightly below pi/(4n): q slightly above n.
    const int n = static_cast<int>(q4.n);
    k.n_s_below = n + 1;
    k.n_s_above = n;
  } else {
    k.n_s_below = k.n_s_above = k.n_s;
  }
  k.n_a = static_cast<int>(q2.n);
  k.n_a_agr = static_cast<int>(q1.n);
  k.k_tilde = 2 + static_cast<int>(q4.n);
  k.r = q2.resonant ? 0.0 : static_cast<double>(pi - 2.0L * al * k.n_a);
  const double t = std::tan(al);
  k.r_alpha = k.n_s * (2.0 / kPi) * std::asin(t * t);
  return k;
}

inline int n_s(const Alpha& a) { return switch_constants(a).n_s; }

// ---------------------------------------------------------------------------
// Geometric switching count in the closed northern hemisphere.

/// Rotation angle about unit axis ax taking the projection of u to that of w, in [0, 2pi).
inline double angle_about(const Vec3& ax, const Vec3& u, const Vec3& w) {
  const Vec3 pu = u - ax * ax.dot(u);
  const Vec3 pw = w - ax * ax.dot(w);
  double t = std::atan2(pu.cross(pw).dot(ax), pu.dot(pw));
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

/**
 * @brief Switchings of the predicted optimal trajectory from y0 to y.
 *
 * y lies in a snake region D^eps_k (eps = + when y2 < 0); the count is k, plus
 * one when y is past C^eps_k along the X^eps orbit. Points in D_0 are past the
 * first switch by construction.
 */
inline int count_switchings_to(const Vec3& y_in, const Alpha& a) {
  const Vec3 y = canonical(y_in.normalized());
  if (y.z() < -kZeroTol) throw std::domain_error("count_switchings_to: point outside NH");
  const double al = a.value();
  if ((y - kY0).norm() < 1e-12) return 0;

  if (std::abs(y.y()) <= kZeroTol) {
    const double xi = std::abs(std::atan2(y.x(), y.z()));
    const double q = xi / (2.0 * al);
    const double nearest = std::round(q);
    if (std::abs(q - nearest) < 1e-10 && nearest >= 1.0) return static_cast<int>(nearest) - 1;
    return static_cast<int>(std::floor(q)) + 1;
  }

  const int eps = y.y() < 0.0 ? 1 : -1;
  const Vec3 ax = axis_X(a, eps);
  const double rho = geodesic(y, ax);
  const double q = rho / (2.0 * al);
  const int k = static_cast<int>(std::lround(q));
  if (std::abs(q - (k + 0.5)) < 1e-10 || std::abs(q - (k - 0.5)) < 1e-10) {
    // On an abnormal arc L^eps: reached by pi-bangs only.
    return std::abs(q - (k + 0.5)) < 1e-10 ? k : k - 1;
  }
  if (k == 0) return 1;

  double lo = 0.0, hi = kPi;
  const double d0 = geodesic(switching_point(k, eps, 0.0, a), ax);
  const double d1 = geodesic(switching_point(k, eps, kPi, a), ax);
  const bool increasing = d1 > d0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double d = geodesic(switching_point(k, eps, mid, a), ax);
    if ((d < rho) == increasing) lo = mid; else hi = mid;
  }
  const Vec3 cstar = switching_point(k, eps, 0.5 * (lo + hi), a);
  const Vec3 entry = meridian_point(std::clamp(eps * (al - rho), -kPi, kPi));
  return k + (angle_about(ax, entry, y) > angle_about(ax, entry, cstar) ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Chart.

struct RegionLoop {
  int eps = 1;
  int k = 0;
  std::vector<Vec3> boundary;
};

struct SynthesisChart {
  double alpha = 0.0;
  SwitchConstants constants;
  int k_eq = 0;  // index of the first switching curve reaching the equator
  std::vector<SwitchingCurveS> curves;
  std::vector<Vec3> abnormal_plus;
  std::vector<Vec3> abnormal_minus;
  std::vector<RegionLoop> regions;
  double t_eq_plus = 0.0;
  double t_eq_minus = 0.0;
  Vec3 y_eq_plus = Vec3::Zero();
  Vec3 y_eq_minus = Vec3::Zero();
  double t_op = kPi;
  int equator_count = 0;  // max of count_switchings_to over sampled E+
  std::string case_label = "unclassified";
};

/// Abnormal extremal A^eps traced with pi-bangs until it first reaches y3 = 0.
inline std::vector<Vec3> abnormal_support(int eps, const Alpha& a, double* t_eq, Vec3* y_eq,
                                          int per_arc = 256) {
  std::vector<Vec3> pts{kY0};
  Vec3 y = kY0;
  int sign = eps;
  double t0 = 0.0;
  for (int arc = 0; arc < 1000; ++arc) {
    for (int j = 1; j <= per_arc; ++j) {
      const double tau = kPi * j / per_arc;
      const Vec3 z = flow_S(a, sign, tau, y);
      if (z.z() <= 0.0) {
        double lo = kPi * (j - 1) / per_arc, hi = tau;
        for (int it = 0; it < 100; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (flow_S(a, sign, mid, y).z() > 0.0) lo = mid; else hi = mid;
        }
        const Vec3 ye = flow_S(a, sign, 0.5 * (lo + hi), y);
        pts.push_back(ye);
        if (t_eq) *t_eq = t0 + 0.5 * (lo + hi);
        if (y_eq) *y_eq = Vec3(ye.x(), ye.y(), 0.0).normalized();
        return pts;
      }
      pts.push_back(z);
    }
    y = flow_S(a, sign, kPi, y);
    t0 += kPi;
    sign = -sign;
  }
  throw std::logic_error("abnormal_support: equator not reached");
}

/// Closed boundary of D^eps_k; renderers clip it to the visible hemisphere.
inline RegionLoop snake_region(int eps, int k, const Alpha& a, int per_arc = 128) {
  RegionLoop loop{eps, k, {}};
  const Vec3 ax = axis_X(a, eps);
  const double al = a.value();
  auto push = [&](const Vec3& y) { loop.boundary.push_back(y); };
  auto arc = [&](double radius, bool forward) {
    const Vec3 start = meridian_point(std::clamp(eps * (al - radius), -kPi, kPi));
    for (int j = 0; j <= per_arc; ++j) {
      const double tau = kPi * (forward ? j : per_arc - j) / per_arc;
      push(rotate_about(ax, tau, start));
    }
  };
  arc((2 * k + 1) * al, true);
  if (k > 0) arc((2 * k - 1) * al, false);
  return loop;
}

inline SynthesisChart build_chart(const Alpha& a, int grid = 512) {
  SynthesisChart ch;
  ch.alpha = a.value();
  ch.constants = switch_constants(a);
  const ExactFloor q4 = exact_floor_pi_over(0.25L, a.value());
  const int ceil_q = q4.resonant ? static_cast<int>(q4.n) : static_cast<int>(q4.n) + 1;
  ch.k_eq = std::max(1, ceil_q - 1);

  std::vector<std::pair<int, int>> jobs;
  for (int k = 1; k <= ch.k_eq; ++k)
    for (int eps : {+1, -1}) jobs.emplace_back(k, eps);
  ch.curves.resize(jobs.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    workers.emplace_back([&, i] { ch.curves[i] = switching_curve(jobs[i].first, jobs[i].second, a, grid); });
  }
  for (auto& w : workers) w.join();

  ch.abnormal_plus = abnormal_support(+1, a, &ch.t_eq_plus, &ch.y_eq_plus);
  ch.abnormal_minus = abnormal_support(-1, a, &ch.t_eq_minus, &ch.y_eq_minus);
  for (int k = 0; k <= ch.constants.n_s; ++k) {
    for (int eps : {+1, -1}) {
      RegionLoop r = snake_region(eps, k, a);
      const bool north = std::any_of(r.boundary.begin(), r.boundary.end(), [](const Vec3& y) { return y.z() > 0.0; });
      if (north) ch.regions.push_back(std::move(r));
    }
  }

  int best = 0;
  const int samples = 2000;
  for (int i = 1; i < samples; ++i) {
    const double phi = -kPi * i / samples;
    best = std::max(best, count_switchings_to(Vec3(std::cos(phi), std::sin(phi), 0.0), a));
  }
  ch.equator_count = best;
  return ch;
}

// ---------------------------------------------------------------------------
// Local optimality of switching curves.

struct ConjugateReport {
  std::vector<double> conjugate;
  std::vector<double> indeterminate;
  std::vector<double> degenerate;
};

/**
 * @brief Scan a parametrized curve for tangents in the cone a1 X+ + a2 X-, a1 a2 >= 0.
 *
 * Tangents by central differences on the given grid; endpoints are excluded.
 */
template <class Curve>
ConjugateReport local_optimality_of(Curve&& curve, const std::vector<double>& s_grid,
                                    const Alpha& a, double tol = 1e-6, double fd_step = 1e-6) {
  ConjugateReport rep;
  for (std::size_t i = 1; i + 1 < s_grid.size(); ++i) {
    const double s = s_grid[i];
    const double h = std::min({fd_step, s - s_grid.front(), s_grid.back() - s});
    const Vec3 y = curve(s);
    const Vec3 T = (curve(s + h) - curve(s - h)) / (2.0 * h);
    if (T.norm() < 1e-8) {
      rep.degenerate.push_back(s);
      continue;
    }
    const auto [e1, e2] = tangent_basis(y);
    const Vec3 xp = field_eval(a, FieldKind::Xplus, y);
    const Vec3 xm = field_eval(a, FieldKind::Xminus, y);
    Eigen::Matrix2d M;
    M << xp.dot(e1), xm.dot(e1), xp.dot(e2), xm.dot(e2);
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(M);
    const double smin = svd.singularValues()(1);
    if (smin == 0.0 || svd.singularValues()(0) / smin > 1e8) {
      rep.indeterminate.push_back(s);
      continue;
    }
    const Eigen::Vector2d coef = M.colPivHouseholderQr().solve(Eigen::Vector2d(T.dot(e1), T.dot(e2)));
    const double a1 = coef(0) * xp.norm() / T.norm();
    const double a2 = coef(1) * xm.norm() / T.norm();
    if ((a1 >= -tol && a2 >= -tol) || (a1 <= tol && a2 <= tol)) rep.conjugate.push_back(s);
  }
  return rep;
}

inline ConjugateReport local_optimality(const SwitchingCurveS& c, const Alpha& a) {
  return local_optimality_of([&](double s) { return switching_point(c.k, c.eps, s, a); }, c.s, a);
}

/// X+_S = lambda X-_S at P(xi): lambda = sin(xi - alpha) / sin(xi + alpha).
inline double meridian_parallel_coeff(double xi, const Alpha& a) {
  return std::sin(xi - a.value()) / std::sin(xi + a.value());
}

}  // namespace so3tos
