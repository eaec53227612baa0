#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "extremal_flow.hpp"
#include "hopf_sphere.hpp"
#include "lie_core.hpp"
#include "synthesis.hpp"

namespace so3tos {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct StructuredSolution {
  BangProgramS program;
  double time = kInf;
};

/**
 * @brief Exact solver for the structured family endpoint_S(sign, s, m, t) = y.
 *
 * For each (sign, m) the point q(s) reached before the last arc is tabulated on
 * an s-grid; y is reachable from q(s) by the last bang iff q(s) and y lie on the
 * same orbit circle of that bang, i.e. have equal polar angle about its axis.
 * Roots in s are bracketed on the grid and polished by regula falsi.
 */
class StructuredSolver {
 public:
  StructuredSolver(const Alpha& a, double horizon, int s_samples = 2048)
      : a_(a), horizon_(horizon) {
    const int m_max = static_cast<int>(std::floor(horizon / kPi)) + 2;
    for (int m = 2; m <= m_max; ++m) {
      for (int sign : {+1, -1}) {
        Table tb;
        tb.sign = sign;
        tb.m = m;
        const BangProgramS proto{sign, 0.0, m, 0.0};
        tb.axis = axis_X(a, proto.last_sign());
        tb.theta.resize(s_samples);
        tb.s.resize(s_samples);
        for (int i = 0; i < s_samples; ++i) {
          tb.s[i] = kPi * i / (s_samples - 1);
          tb.theta[i] = geodesic(q_of(sign, m, tb.s[i]), tb.axis);
        }
        tb.theta_min = *std::min_element(tb.theta.begin(), tb.theta.end());
        tb.theta_max = *std::max_element(tb.theta.begin(), tb.theta.end());
        tables_.push_back(std::move(tb));
      }
    }
  }

  const Alpha& alpha() const { return a_; }
  double horizon() const { return horizon_; }

  /// Point reached before the last arc.
  Vec3 q_of(int sign, int m, double s) const {
    BangProgramS p{sign, s, m, 0.0};
    return partial_endpoint_S(p, a_, m - 1);
  }

  /// All structured solutions with total time <= horizon.
  std::vector<StructuredSolution> solve_all(const Vec3& y_in) const {
    const Vec3 y = y_in.normalized();
    std::vector<StructuredSolution> out;
    if ((y - kY0).norm() < 1e-12) {
      out.push_back({BangProgramS{1, 0.0, 1, 0.0}, 0.0});
      return out;
    }
    for (int sign : {+1, -1}) {
      const Vec3 ax = axis_X(a_, sign);
      if (std::abs(geodesic(y, ax) - a_.value()) < 1e-9) {
        const double t = angle_about(ax, kY0, y);
        if (t <= kPi + 1e-9 && t <= horizon_) out.push_back({BangProgramS{sign, t, 1, 0.0}, t});
      }
    }
    for (const Table& tb : tables_) solve_table(tb, y, out);
    return out;
  }

  StructuredSolution best(const Vec3& y) const {
    StructuredSolution b;
    for (const auto& sol : solve_all(y)) {
      if (better(sol, b)) b = sol;
    }
    return b;
  }

  /// Deterministic order: time, then fewer arcs, then smaller s, then sign.
  static bool better(const StructuredSolution& x, const StructuredSolution& y) {
    if (x.time != y.time) return x.time < y.time;
    if (x.program.m != y.program.m) return x.program.m < y.program.m;
    if (x.program.s != y.program.s) return x.program.s < y.program.s;
    return x.program.first_sign > y.program.first_sign;
  }

 private:
  struct Table {
    int sign = 1;
    int m = 2;
    Vec3 axis;
    std::vector<double> s;
    std::vector<double> theta;
    double theta_min = 0.0;
    double theta_max = 0.0;
  };

  void solve_table(const Table& tb, const Vec3& y, std::vector<StructuredSolution>& out) const {
    const double ty = geodesic(y, tb.axis);
    if (ty < tb.theta_min - 1e-9 || ty > tb.theta_max + 1e-9) return;
    // Minimum total time of this table exceeds the horizon: s + (m-2) pi.
    if ((tb.m - 2) * kPi > horizon_ + 1e-9) return;
    const std::size_t n = tb.s.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double g0 = tb.theta[i] - ty, g1 = tb.theta[i + 1] - ty;
      const bool root_here = (g0 == 0.0) || ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0);
      if (!root_here) continue;
      const double s = polish(tb, ty, tb.s[i], tb.s[i + 1], g0, g1);
      const Vec3 q = q_of(tb.sign, tb.m, s);
      const double v = v_of_s(s, a_);
      double t = angle_about(tb.axis, q, y);
      if (t > 2.0 * kPi - 1e-9) t = 0.0;
      if (t > v + 1e-9) continue;
      BangProgramS p{tb.sign, s, tb.m, std::min(t, v)};
      const double T = total_time(p, a_);
      if (T <= horizon_ + 1e-9) out.push_back({p, T});
    }
  }

  double polish(const Table& tb, double ty, double lo, double hi, double glo, double ghi) const {
    if (glo == 0.0) return lo;
    int side = 0;
    for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
      double mid = (lo * ghi - hi * glo) / (ghi - glo);
      if (!(mid > lo && mid < hi)) mid = 0.5 * (lo + hi);
      const double gm = geodesic(q_of(tb.sign, tb.m, mid), tb.axis) - ty;
      if (gm == 0.0) return mid;
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
        if (side == -1) ghi *= 0.5;
        side = -1;
      } else {
        hi = mid;
        ghi = gm;
        if (side == +1) glo *= 0.5;
        side = +1;
      }
      if (std::abs(gm) < 1e-15) return mid;
    }
    return 0.5 * (lo + hi);
  }

  Alpha a_;
  double horizon_;
  std::vector<Table> tables_;
};

// ---------------------------------------------------------------------------
// Free alternating bang programs downstairs.

struct FreeProgram {
  int first_sign = 1;
  std::vector<double> durations;
  double time = kInf;
};

/// Two-arc exact completion q -> y with signs (sigma, -sigma); the faster of the two roots.
inline std::optional<std::array<double, 2>> two_arc_tail(const Alpha& a, const Vec3& q, const Vec3& y,
                                                         int sigma) {
  const Vec3 a1 = axis_X(a, sigma), a2 = axis_X(a, -sigma);
  const double A = q.dot(a2) - a1.dot(q) * a1.dot(a2);
  const double B = a1.cross(q).dot(a2);
  const double C = y.dot(a2) - a1.dot(q) * a1.dot(a2);
  const double R = std::hypot(A, B);
  if (R < 1e-15) return std::nullopt;
  const double ratio = C / R;
  if (std::abs(ratio) > 1.0 + 1e-12) return std::nullopt;
  const double base = std::atan2(B, A);
  const double delta = std::acos(std::clamp(ratio, -1.0, 1.0));
  std::optional<std::array<double, 2>> best;
  for (double t1 : {base + delta, base - delta}) {
    t1 = std::fmod(t1, 2.0 * kPi);
    if (t1 < 0.0) t1 += 2.0 * kPi;
    if (t1 > 2.0 * kPi - 1e-12) t1 = 0.0;
    const Vec3 z = rotate_about(a1, t1, q);
    double t2 = angle_about(a2, z, y);
    if (t2 > 2.0 * kPi - 1e-10) t2 = 0.0;
    if (!best || t1 + t2 < (*best)[0] + (*best)[1]) best = std::array<double, 2>{t1, t2};
  }
  return best;
}

inline Vec3 apply_free(const Alpha& a, int first_sign, const std::vector<double>& d, std::size_t count,
                       Vec3 y = kY0) {
  int sign = first_sign;
  for (std::size_t i = 0; i < count; ++i) {
    y = flow_S(a, sign, d[i], y);
    sign = -sign;
  }
  return y;
}

struct OracleResult {
  Vec3 target = Vec3::Zero();
  double structured_time = kInf;
  BangProgramS structured_program;
  double free_time = kInf;
  FreeProgram free_program;
  int switch_count = 0;
  double resolution = 0.0;
  bool reachable = false;
};

/**
 * @brief Free programs: grid over all but the last two durations, exact two-arc tail,
 * then golden-section refinement of the gridded durations around the best candidates.
 */
inline FreeProgram free_program_search(const Vec3& y, const Alpha& a, int max_arcs, int grid) {
  FreeProgram best;
  auto consider = [&](int sign, std::vector<double> d) {
    double T = 0.0;
    for (double x : d) T += x;
    if (T < best.time) best = FreeProgram{sign, std::move(d), T};
  };
  if ((y - kY0).norm() < 1e-12) return FreeProgram{1, {}, 0.0};
  for (int sign : {+1, -1}) {
    const Vec3 ax = axis_X(a, sign);
    if (std::abs(geodesic(y, ax) - a.value()) < 1e-9) consider(sign, {angle_about(ax, kY0, y)});
  }
  const double step = 2.0 * kPi / grid;
  struct Cand {
    double time;
    int sign;
    std::vector<double> head;
  };
  for (int m = 2; m <= max_arcs; ++m) {
    const int free_n = m - 2;
    for (int sign : {+1, -1}) {
      const int tail_sign = (free_n % 2 == 0) ? sign : -sign;
      auto eval = [&](const std::vector<double>& head) -> std::pair<double, std::array<double, 2>> {
        const Vec3 q = apply_free(a, sign, head, head.size());
        const auto tail = two_arc_tail(a, q, y, tail_sign);
        if (!tail) return {kInf, {0.0, 0.0}};
        double T = (*tail)[0] + (*tail)[1];
        for (double x : head) T += x;
        return {T, *tail};
      };
      std::vector<Cand> cands;
      std::vector<int> idx(free_n, 0);
      long total = 1;
      for (int i = 0; i < free_n; ++i) total *= grid;
      std::vector<double> head(free_n);
      for (long c = 0; c < total; ++c) {
        long r = c;
        for (int i = 0; i < free_n; ++i) {
          head[i] = (r % grid) * step;
          r /= grid;
        }
        const double T = eval(head).first;
        if (T < kInf) cands.push_back({T, sign, head});
      }
      std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& z) { return x.time < z.time; });
      const std::size_t keep = std::min<std::size_t>(cands.size(), free_n == 0 ? 1 : 12);
      for (std::size_t ci = 0; ci < keep; ++ci) {
        std::vector<double> h = cands[ci].head;
        double width = step;
        for (int round = 0; round < 6; ++round) {
          for (int i = 0; i < free_n; ++i) {
            double lo = std::max(0.0, h[i] - width), hi = std::min(2.0 * kPi, h[i] + width);
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            auto f = [&](double x) {
              auto hh = h;
              hh[i] = x;
              return eval(hh).first;
            };
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = f(x1), f2 = f(x2);
            for (int it = 0; it < 50; ++it) {
              if (f1 < f2) {
                hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = f(x1);
              } else {
                lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = f(x2);
              }
            }
            const double xb = f1 < f2 ? x1 : x2;
            if (std::min(f1, f2) < f(h[i])) h[i] = xb;
          }
          width *= 0.5;
        }
        const auto [T, tail] = eval(h);
        if (T < kInf) {
          std::vector<double> d = h;
          d.push_back(tail[0]);
          d.push_back(tail[1]);
          consider(sign, d);
        }
      }
    }
  }
  return best;
}

inline OracleResult brute_force_sphere(const Vec3& target, const Alpha& a, int max_arcs,
                                       int s_grid = 64, int t_grid = 64) {
  if (s_grid < 64 || t_grid < 64) throw std::invalid_argument("brute_force_sphere: grids must have >= 64 points");
  OracleResult r;
  r.target = target.normalized();
  r.resolution = 2.0 * kPi / std::min(s_grid, t_grid);
  const double horizon = (max_arcs - 1) * v_max(a) + kPi;
  const StructuredSolver solver(a, horizon, std::max(2048, 32 * s_grid));
  const auto sb = solver.best(r.target);
  r.structured_time = sb.time;
  r.structured_program = sb.program;
  r.free_program = free_program_search(r.target, a, max_arcs, t_grid);
  r.free_time = r.free_program.time;
  r.reachable = std::isfinite(r.structured_time) || std::isfinite(r.free_time);
  r.switch_count = std::isfinite(sb.time) ? sb.program.switchings() : 0;
  return r;
}

// ---------------------------------------------------------------------------
// SO(3) families.

enum class So3Family { Identity, Normal, Abnormal, Singular };

inline const char* to_string(So3Family f) {
  switch (f) {
    case So3Family::Identity: return "identity";
    case So3Family::Normal: return "normal";
    case So3Family::Abnormal: return "abnormal";
    default: return "singular";
  }
}

struct So3Result {
  double time = kInf;
  So3Family family = So3Family::Identity;
  ExtremalArcSequence program;
  int switch_count = 0;
  double residual = kInf;
  double resolution = 0.0;
};

namespace detail {

/// Residual of R being a rotation about the unit axis X, plus its angle in [0, 2pi).
inline double axis_residual(const Mat3& R, const Vec3& X, Vec3* res = nullptr, double* angle = nullptr) {
  const Vec3 r = R * X - X;
  if (res) *res = r;
  if (angle) {
    // Rotation angle about X: use a vector orthogonal to X.
    Vec3 u = X.unitOrthogonal();
    const Vec3 w = R * u;
    double t = std::atan2(u.cross(w).dot(X), u.dot(w));
    if (t < 0.0) t += 2.0 * kPi;
    *angle = t;
  }
  return r.norm();
}

inline int count_switches(const std::vector<ArcSpec>& arcs) {
  int n = 0;
  int last = 2;
  for (const auto& arc : arcs) {
    if (arc.duration <= 1e-12) continue;
    const int k = arc_sign(arc.kind);
    if (last != 2 && k != last) ++n;
    last = k;
  }
  return n;
}

/// Gauss-Newton on F(p) = R(p) X - X for a 2-parameter head R(p) = H(p)^{-1} target.
template <class Head>
bool gauss_newton2(Head&& head, const Mat3& target, const Vec3& X, Eigen::Vector2d& p, double& res) {
  auto F = [&](const Eigen::Vector2d& q) -> Vec3 { return head(q).transpose() * target * X - X; };
  Vec3 f = F(p);
  for (int it = 0; it < 40; ++it) {
    Eigen::Matrix<double, 3, 2> J;
    const double h = 1e-7;
    for (int j = 0; j < 2; ++j) {
      Eigen::Vector2d dp = p;
      dp(j) += h;
      J.col(j) = (F(dp) - f) / h;
    }
    const Eigen::Vector2d step = (J.transpose() * J + 1e-14 * Eigen::Matrix2d::Identity()).ldlt().solve(-J.transpose() * f);
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 20; ++ls) {
      const Eigen::Vector2d pn = p + lambda * step;
      const Vec3 fn = F(pn);
      if (fn.norm() < f.norm()) {
        p = pn;
        f = fn;
        improved = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!improved || f.norm() < 1e-13) break;
  }
  res = f.norm();
  return res < 1e-9;
}

}  // namespace detail

/**
 * @brief Minimum time to a rotation over normal, abnormal and singular families.
 *
 * Normal: B_s B_T ... B_T B_t with T in (pi, 2pi), s, t <= T. Abnormal: T = pi.
 * Singular: B_t S_sigma B_t' with sigma <= pi / c (2 pi / c unflanked).
 * Two heads are gridded, the last bang is recovered from the axis condition.
 */
inline So3Result brute_force_so3(const Rotation& target, const Alpha& a, int max_arcs, int grid = 64) {
  So3Result best;
  best.resolution = 2.0 * kPi / grid;
  const Frame fr(a);
  const Mat3 X = target.matrix();
  if ((X - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12) {
    best.time = 0.0;
    best.residual = 0.0;
    return best;
  }
  auto offer = [&](double T, So3Family fam, std::vector<ArcSpec> arcs, double res) {
    const int sw = detail::count_switches(arcs);
    if (T < best.time - 1e-9 || (std::abs(T - best.time) <= 1e-9 && sw < best.switch_count)) {
      best.time = T;
      best.family = fam;
      best.program.arcs = std::move(arcs);
      best.switch_count = sw;
      best.residual = res;
    }
  };

  // Single bang and pure drift.
  for (int sign : {+1, -1}) {
    double ang = 0.0;
    if (detail::axis_residual(X, fr.X(sign), nullptr, &ang) < 1e-9 && ang < 2.0 * kPi) {
      offer(ang, So3Family::Normal, {{arc_kind(sign), ang}}, 0.0);
    }
  }
  {
    double ang = 0.0;
    if (detail::axis_residual(X, fr.f / fr.f.norm(), nullptr, &ang) < 1e-9) {
      offer(ang / a.c(), So3Family::Singular, {{ArcKind::Singular, ang / a.c()}}, 0.0);
    }
  }

  // Normal families, m >= 3: unknowns (s, T); m = 2 and abnormal use a 1-d scan.
  for (int m = 2; m <= max_arcs; ++m) {
    for (int sign : {+1, -1}) {
      const int last = (m % 2 == 1) ? sign : -sign;
      const Vec3 Xl = fr.X(last);
      auto head = [&](double s, double T) {
        Mat3 H = exp_unit_matrix(fr.X(sign), s);
        int sg = -sign;
        for (int i = 1; i + 1 < m; ++i) {
          H = H * exp_unit_matrix(fr.X(sg), T);
          sg = -sg;
        }
        return H;
      };
      auto finish = [&](double s, double T, double res, So3Family fam) {
        double t = 0.0;
        detail::axis_residual(head(s, T).transpose() * X, Xl, nullptr, &t);
        if (t > 2.0 * kPi - 1e-9) t = 0.0;
        if (m >= 3 && (s > T + 1e-9 || t > T + 1e-9)) return;
        std::vector<ArcSpec> arcs{{arc_kind(sign), s}};
        int sg = -sign;
        for (int i = 1; i + 1 < m; ++i) {
          arcs.push_back({arc_kind(sg), T});
          sg = -sg;
        }
        arcs.push_back({arc_kind(last), t});
        offer(s + (m - 2) * T + t, fam, std::move(arcs), res);
      };
      auto scan1 = [&](double T, So3Family fam) {
        // One free parameter: accept only genuine zeros of the axis residual.
        const int n = 4 * grid;
        std::vector<double> r(n + 1);
        for (int i = 0; i <= n; ++i) r[i] = detail::axis_residual(head(kPi * 2.0 * i / n, T).transpose() * X, Xl);
        for (int i = 1; i < n; ++i) {
          if (!(r[i] <= r[i - 1] && r[i] <= r[i + 1])) continue;
          double lo = 2.0 * kPi * (i - 1) / n, hi = 2.0 * kPi * (i + 1) / n;
          const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
          auto f = [&](double s) { return detail::axis_residual(head(s, T).transpose() * X, Xl); };
          double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo), f1 = f(x1), f2 = f(x2);
          for (int it = 0; it < 80; ++it) {
            if (f1 < f2) { hi = x2; x2 = x1; f2 = f1; x1 = hi - gr * (hi - lo); f1 = f(x1); }
            else { lo = x1; x1 = x2; f1 = f2; x2 = lo + gr * (hi - lo); f2 = f(x2); }
          }
          const double sb = f1 < f2 ? x1 : x2, rb = std::min(f1, f2);
          if (rb < 1e-9) finish(sb, T, rb, fam);
        }
      };
      if (m == 2) {
        scan1(0.0, So3Family::Normal);
        continue;
      }
      scan1(kPi, So3Family::Abnormal);

      std::vector<std::pair<double, Eigen::Vector2d>> starts;
      std::vector<double> grid_r((grid + 1) * (grid + 1));
      auto sv = [&](int i) { return 2.0 * kPi * i / grid; };
      auto Tv = [&](int j) { return kPi + kPi * (j + 0.5) / (grid + 1); };
      for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j)
          grid_r[i * (grid + 1) + j] = detail::axis_residual(head(sv(i), Tv(j)).transpose() * X, Xl);
      for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
          const double r0 = grid_r[i * (grid + 1) + j];
          bool local_min = true;
          for (int di = -1; di <= 1 && local_min; ++di)
            for (int dj = -1; dj <= 1; ++dj) {
              const int ii = i + di, jj = j + dj;
              if ((di || dj) && ii >= 0 && ii <= grid && jj >= 0 && jj <= grid &&
                  grid_r[ii * (grid + 1) + jj] < r0) {
                local_min = false;
                break;
              }
            }
          if (local_min) starts.push_back({r0, Eigen::Vector2d(sv(i), Tv(j))});
        }
      }
      std::sort(starts.begin(), starts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      if (starts.size() > 24) starts.resize(24);
      for (auto& st : starts) {
        Eigen::Vector2d p = st.second;
        double res = kInf;
        auto hd = [&](const Eigen::Vector2d& q) { return head(q(0), q(1)); };
        if (!detail::gauss_newton2(hd, X, Xl, p, res)) continue;
        double s = std::fmod(p(0), 2.0 * kPi);
        if (s < 0.0) s += 2.0 * kPi;
        if (!(p(1) > kPi && p(1) < 2.0 * kPi)) continue;
        finish(s, p(1), res, So3Family::Normal);
      }
    }
  }

  // Singular family B_t S_sigma B_t'.
  for (int s1 : {+1, -1}) {
    for (int s2 : {+1, -1}) {
      const Vec3 Xl = fr.X(s2);
      auto head = [&](double t, double sig) {
        return Mat3(exp_unit_matrix(fr.X(s1), t) * exp_general_matrix(fr.f, sig));
      };
      const double smax = kPi / a.c();
      std::vector<std::pair<double, Eigen::Vector2d>> starts;
      for (int i = 0; i <= grid; ++i)
        for (int j = 0; j <= grid; ++j) {
          const double t = 2.0 * kPi * i / grid, sig = smax * j / grid;
          starts.push_back({detail::axis_residual(head(t, sig).transpose() * X, Xl), Eigen::Vector2d(t, sig)});
        }
      std::sort(starts.begin(), starts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      starts.resize(std::min<std::size_t>(starts.size(), 16));
      for (auto& st : starts) {
        Eigen::Vector2d p = st.second;
        double res = kInf;
        auto hd = [&](const Eigen::Vector2d& q) { return head(q(0), q(1)); };
        if (!detail::gauss_newton2(hd, X, Xl, p, res)) continue;
        double t = std::fmod(p(0), 2.0 * kPi);
        if (t < 0.0) t += 2.0 * kPi;
        const double sig = p(1);
        if (sig < -1e-9 || sig > smax + 1e-9) continue;
        double t2 = 0.0;
        detail::axis_residual(head(t, sig).transpose() * X, Xl, nullptr, &t2);
        if (t2 > 2.0 * kPi - 1e-9) t2 = 0.0;
        offer(t + sig + t2, So3Family::Singular,
              {{arc_kind(s1), t}, {ArcKind::Singular, std::max(0.0, sig)}, {arc_kind(s2), t2}}, res);
      }
    }
  }
  return best;
}

/// Upstairs product with the same controls projects onto the downstairs endpoint.
inline Rotation lift(const BangProgramS& p, const Alpha& a) {
  const Frame fr(a);
  const double v = p.m > 2 ? v_of_s(p.s, a) : 0.0;
  Mat3 x = Mat3::Identity();
  int sign = p.first_sign;
  for (int i = 0; i < p.m; ++i) {
    const double d = (i == 0) ? p.s : (i + 1 == p.m ? p.t : v);
    x = x * exp_unit_matrix(fr.X(sign), d);
    sign = -sign;
  }
  return Rotation(x);
}

/// Upstairs product with the same controls projects onto the downstairs endpoint.
inline bool lift_check(const BangProgramS& p, const Alpha& a, double tol = 1e-9, double* err = nullptr) {
  const double e = (hopf_project(lift(p, a)) - endpoint_S(p, a)).norm();
  if (err) *err = e;
  return e <= tol;
}

/// Haar-uniform rotation from a unit quaternion with Gaussian components.
template <class Rng>
Rotation haar_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return Rotation(q.toRotationMatrix());
}

template <class Rng>
Vec3 uniform_sphere(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v(n(rng), n(rng), n(rng));
  return v.normalized();
}

}  // namespace so3tos
