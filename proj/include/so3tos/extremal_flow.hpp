#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lie_core.hpp"

namespace so3tos {

/// (phi1, phi2, phi3) = pairings of the covector with x f, x g, x h.
struct Covector {
  Vec3 phi = Vec3::Zero();
  int lambda0 = 1;
};

/**
 * @brief Point of an extremal pair.
 *
 * The covector is kept in body coordinates p (a 3-vector paired with phi_L
 * images), so phi_i = <p, F_i> and the transport is p -> e^{-t X} p.
 */
struct ExtremalState {
  Rotation x;
  Vec3 p = Vec3::Zero();
  int lambda0 = 1;
  double t = 0.0;

  static ExtremalState from_covector(const Frame& fr, const Covector& cov,
                                     const Rotation& x0 = Rotation()) {
    if (cov.phi.squaredNorm() == 0.0) {
      throw std::invalid_argument("covector (phi1, phi2, phi3) cannot be all zero");
    }
    const double c2 = fr.alpha.c() * fr.alpha.c();
    const double s2 = fr.alpha.s() * fr.alpha.s();
    ExtremalState st;
    st.x = x0;
    st.p = cov.phi.x() * fr.f / c2 + cov.phi.y() * fr.g / s2 + cov.phi.z() * fr.h / (c2 * s2);
    st.lambda0 = cov.lambda0;
    return st;
  }
};

inline Vec3 switching_functions(const Frame& fr, const ExtremalState& st) {
  return Vec3(st.p.dot(fr.f), st.p.dot(fr.g), st.p.dot(fr.h));
}

inline Vec3 adjoint_rhs(const Alpha& a, const Vec3& phi, double u) {
  const double s2 = a.s() * a.s();
  const double c2 = a.c() * a.c();
  return Vec3(-u * phi.z(), phi.z(), s2 * u * phi.x() - c2 * phi.y());
}

/// I1 = -phi1 + |phi2|.
inline double first_integral(const Vec3& phi) { return -phi.x() + std::abs(phi.y()); }

/// I2 = c^2 phi2^2 + s^2 phi1^2 + phi3^2 (Casimir).
inline double casimir(const Alpha& a, const Vec3& phi) {
  const double c2 = a.c() * a.c();
  const double s2 = a.s() * a.s();
  return c2 * phi.y() * phi.y() + s2 * phi.x() * phi.x() + phi.z() * phi.z();
}

inline ExtremalState propagate_bang(const Frame& fr, const ExtremalState& st, int sign,
                                    double dt) {
  if (dt < 0.0) throw std::invalid_argument("propagate_bang: dt must be >= 0");
  const Vec3 X = fr.X(sign);
  ExtremalState out = st;
  out.x = Rotation(st.x.matrix() * exp_unit_matrix(X, dt));
  out.p = exp_unit_matrix(X, -dt) * st.p;
  out.t = st.t + dt;
  return out;
}

/// Drift flow u = 0.
inline ExtremalState propagate_singular(const Frame& fr, const ExtremalState& st, double dt) {
  ExtremalState out = st;
  out.x = Rotation(st.x.matrix() * exp_general_matrix(fr.f, dt));
  out.p = exp_general_matrix(fr.f, -dt) * st.p;
  out.t = st.t + dt;
  return out;
}

/**
 * @brief Duration T in (pi, 2pi) of an interior bang arc with control u.
 *
 * phi3(0) is evaluated at the switching time opening the arc.
 */
inline double interior_bang_duration(double phi3_0, int u, const Alpha& a) {
  if (phi3_0 == 0.0 || (phi3_0 > 0.0) == (u > 0)) {
    throw std::domain_error("not a switching configuration: sign(phi3) must equal -sign(u)");
  }
  const double s2 = a.s() * a.s();
  return 2.0 * kPi + 2.0 * std::atan(phi3_0 / (u * s2));
}

enum class ArcKind { Plus, Minus, Singular };

inline int arc_sign(ArcKind k) { return k == ArcKind::Plus ? 1 : k == ArcKind::Minus ? -1 : 0; }
inline ArcKind arc_kind(int sign) {
  return sign > 0 ? ArcKind::Plus : sign < 0 ? ArcKind::Minus : ArcKind::Singular;
}

struct ArcSpec {
  ArcKind kind = ArcKind::Plus;
  double duration = 0.0;
};

struct ExtremalArcSequence {
  std::vector<ArcSpec> arcs;
  std::optional<Covector> covector;
};

enum class ExtremalClass { Normal, Abnormal, ContainsSingular, NotExtremal };

inline const char* to_string(ExtremalClass c) {
  switch (c) {
    case ExtremalClass::Normal: return "normal";
    case ExtremalClass::Abnormal: return "abnormal";
    case ExtremalClass::ContainsSingular: return "contains-singular";
    default: return "not-extremal";
  }
}

/**
 * @brief Label an arc program by the duration patterns extremals must follow.
 *
 * A program matching both the abnormal and the normal pattern (short ones)
 * is reported abnormal, unless an attached covector says lambda0 = 1.
 */
inline ExtremalClass classify(const ExtremalArcSequence& seq, const Alpha& a, double tol = 1e-6) {
  const auto& arcs = seq.arcs;
  const std::size_t n = arcs.size();
  if (n == 0) return ExtremalClass::NotExtremal;
  for (const auto& arc : arcs) {
    if (arc.duration < -tol) return ExtremalClass::NotExtremal;
  }

  std::size_t singular_count = 0, singular_at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (arcs[i].kind == ArcKind::Singular) {
      ++singular_count;
      singular_at = i;
    }
  }
  if (singular_count > 0) {
    if (singular_count > 1 || n > 3) return ExtremalClass::NotExtremal;
    const double sdur = arcs[singular_at].duration;
    bool flanked = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == singular_at) continue;
      if (arcs[i].duration > 2.0 * kPi + tol) return ExtremalClass::NotExtremal;
      if (arcs[i].duration > tol) flanked = true;
    }
    // Only B S B (or a truncation of it) is admissible.
    if (n == 3 && singular_at != 1) return ExtremalClass::NotExtremal;
    const double smax = flanked ? kPi / a.c() : 2.0 * kPi / a.c();
    if (sdur > smax + tol || (!flanked && sdur >= smax)) return ExtremalClass::NotExtremal;
    return ExtremalClass::ContainsSingular;
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (arcs[i].kind == arcs[i + 1].kind) return ExtremalClass::NotExtremal;
  }
  for (const auto& arc : arcs) {
    if (arc.duration >= 2.0 * kPi) return ExtremalClass::NotExtremal;
  }

  auto abnormal_ok = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = arcs[i].duration;
      if (i == 0 || i + 1 == n) {
        if (d > kPi + tol) return false;
      } else if (std::abs(d - kPi) > tol) {
        return false;
      }
    }
    return true;
  };
  auto normal_ok = [&] {
    if (n < 3) {
      for (const auto& arc : arcs)
        if (arc.duration >= 2.0 * kPi) return false;
      return true;
    }
    const double T = arcs[1].duration;
    if (!(T > kPi + tol && T < 2.0 * kPi - tol)) return false;
    for (std::size_t i = 1; i + 1 < n; ++i)
      if (std::abs(arcs[i].duration - T) > tol) return false;
    return arcs.front().duration <= T + tol && arcs.back().duration <= T + tol;
  };

  const bool ab = abnormal_ok();
  const bool no = normal_ok();
  if (seq.covector) {
    if (seq.covector->lambda0 == 0) return ab ? ExtremalClass::Abnormal : ExtremalClass::NotExtremal;
    if (no) return ExtremalClass::Normal;
    return ExtremalClass::NotExtremal;
  }
  if (ab) return ExtremalClass::Abnormal;
  if (no) return ExtremalClass::Normal;
  return ExtremalClass::NotExtremal;
}

inline Rotation endpoint(const Frame& fr, const ExtremalArcSequence& seq,
                         const Rotation& start = Rotation()) {
  Mat3 x = start.matrix();
  for (const auto& arc : seq.arcs) {
    if (arc.kind == ArcKind::Singular) {
      x = x * exp_general_matrix(fr.f, arc.duration);
    } else {
      x = x * exp_unit_matrix(fr.X(arc_sign(arc.kind)), arc.duration);
    }
  }
  return Rotation(x);
}

/**
 * @brief Zeros of phi2 along a bang-bang extremal with switching law u = -sign(phi2).
 *
 * Grid step 1e-3 then bisection to 1e-12. Returns switching times in (0, horizon].
 */
inline std::vector<double> phi2_zeros(const Frame& fr, const ExtremalState& start, int first_sign,
                                      double horizon, double step = 1e-3) {
  std::vector<double> zeros;
  ExtremalState st = start;
  int u = first_sign;
  double t0 = 0.0;
  auto phi2_at = [&](double dt) { return switching_functions(fr, propagate_bang(fr, st, u, dt)).y(); };
  while (t0 < horizon) {
    double prev = phi2_at(0.0);
    double found = -1.0;
    // The arc starts on phi2 = 0; skip the first few steps to leave that zero.
    for (double dt = step; t0 + dt <= horizon + step; dt += step) {
      const double cur = phi2_at(dt);
      if (dt > 2.0 * step && prev != 0.0 && ((prev < 0.0) != (cur < 0.0) || cur == 0.0)) {
        double lo = dt - step, hi = dt;
        const bool lo_neg = prev < 0.0;
        while (hi - lo > 1e-12) {
          const double mid = 0.5 * (lo + hi);
          if ((phi2_at(mid) < 0.0) == lo_neg) lo = mid; else hi = mid;
        }
        found = 0.5 * (lo + hi);
        break;
      }
      prev = cur;
      if (dt > 2.0 * kPi + step) break;
    }
    if (found < 0.0 || t0 + found > horizon) break;
    st = propagate_bang(fr, st, u, found);
    t0 += found;
    zeros.push_back(t0);
    u = -u;
  }
  return zeros;
}

}  // namespace so3tos
