#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace so3tos {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = std::numbers::pi;

/**
 * @brief Control-set opening angle, 0 < alpha < pi/4 - guard.
 *
 * Caches c = cos(alpha) and s = sin(alpha).
 */
class Alpha {
 public:
  explicit Alpha(double value, double guard = 1e-3) : value_(value) {
    if (!(value > 0.0) || !(value < kPi / 4.0 - guard)) {
      throw std::invalid_argument("alpha must lie in (0, pi/4 - " + std::to_string(guard) +
                                  "), got " + std::to_string(value));
    }
    c_ = std::cos(value);
    s_ = std::sin(value);
  }

  double value() const { return value_; }
  double c() const { return c_; }
  double s() const { return s_; }

 private:
  double value_;
  double c_;
  double s_;
};

// so(3) elements are carried by their image under phi_L; hat and vee convert.
inline Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return m;
}

inline Vec3 vee(const Mat3& m) { return Vec3(m(2, 1), m(0, 2), m(1, 0)); }

inline Vec3 lie_bracket(const Vec3& z1, const Vec3& z2) { return z1.cross(z2); }

// Equals -1/2 tr(hat(z1) hat(z2)).
inline double inner(const Vec3& z1, const Vec3& z2) { return z1.dot(z2); }

/**
 * @brief The fields f, g, h = [f,g] and X+- = f +- g for one alpha.
 *
 * Concrete matrices: f = c * (e1 e2^T - e2 e1^T), g = s * (e3 e2^T - e2 e3^T).
 */
struct Frame {
  Alpha alpha;
  Vec3 f;
  Vec3 g;
  Vec3 h;

  explicit Frame(const Alpha& a)
      : alpha(a),
        f(0.0, 0.0, -a.c()),
        g(-a.s(), 0.0, 0.0),
        h(f.cross(g)) {}

  explicit Frame(double a) : Frame(Alpha(a)) {}

  Vec3 X(int sign) const { return sign > 0 ? Vec3(f + g) : Vec3(f - g); }
  Vec3 Xp() const { return f + g; }
  Vec3 Xm() const { return f - g; }

  /// Coordinates of w in the (f, g, h) basis.
  Vec3 coords(const Vec3& w) const {
    const double c2 = alpha.c() * alpha.c();
    const double s2 = alpha.s() * alpha.s();
    return Vec3(w.dot(f) / c2, w.dot(g) / s2, w.dot(h) / (c2 * s2));
  }

  Vec3 from_coords(const Vec3& abc) const { return abc.x() * f + abc.y() * g + abc.z() * h; }
};

/// Polar correction x (3 - x^T x) / 2 iterated; falls back to SVD for large drift.
inline Mat3 reorthonormalize(const Mat3& m) {
  const double defect = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (defect <= 1e-12) return m;
  if (defect < 1e-3) {
    Mat3 x = m;
    for (int i = 0; i < 4; ++i) x = 0.5 * x * (3.0 * Mat3::Identity() - x.transpose() * x);
    return x;
  }
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Mat3 u = svd.matrixU();
    u.col(2) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return r;
}

/**
 * @brief Element of SO(3) as an explicit 3x3 matrix.
 */
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}
  explicit Rotation(const Mat3& m) : m_(reorthonormalize(m)) {}

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const { return m_; }
  Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_); }
  Rotation inverse() const { return Rotation(m_.transpose()); }
  double distance(const Rotation& o) const { return (m_ - o.m_).cwiseAbs().maxCoeff(); }

 private:
  Mat3 m_;
};

/// Rodrigues form Id + sin(t) X + (1 - cos t) X^2 for unit X.
inline Mat3 exp_unit_matrix(const Vec3& X, double t) {
  const double n = X.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    throw std::invalid_argument("exp_unit requires a unit-norm generator; use exp_general");
  }
  const Mat3 K = hat(X);
  return Mat3::Identity() + std::sin(t) * K + (1.0 - std::cos(t)) * K * K;
}

inline Rotation exp_unit(const Vec3& X, double t) { return Rotation(exp_unit_matrix(X, t)); }

inline Mat3 exp_general_matrix(const Vec3& z, double t) {
  const double w = z.norm();
  if (w == 0.0) return Mat3::Identity();
  const Vec3 u = z / w;
  const Mat3 K = hat(u);
  const double a = w * t;
  return Mat3::Identity() + std::sin(a) * K + (1.0 - std::cos(a)) * K * K;
}

inline Rotation exp_general(const Vec3& z, double t) { return Rotation(exp_general_matrix(z, t)); }

/// Generic e^{tX} w e^{-tX}, valid for any X.
inline Vec3 ad_conjugate_generic(const Vec3& X, double t, const Vec3& w) {
  return exp_general_matrix(X, t) * w;
}

/**
 * @brief e^{t ad X}(w) using the closed forms for X in {X+, X-, f}.
 *
 * Any other generator goes through the generic branch.
 */
inline Vec3 ad_conjugate(const Frame& fr, const Vec3& X, double t, const Vec3& w) {
  const double c = fr.alpha.c();
  const double s = fr.alpha.s();
  const double c2 = c * c;
  const double s2 = s * s;
  const double tol = 1e-14;
  const Vec3 abc = fr.coords(w);
  const double a = abc.x(), b = abc.y(), k = abc.z();
  const double ct = std::cos(t), st = std::sin(t);

  for (int eps : {+1, -1}) {
    if ((X - fr.X(eps)).cwiseAbs().maxCoeff() < tol) {
      // Images of f, g, h under e^{t ad X_eps}.
      const Vec3 ef = (c2 + s2 * ct) * fr.f + eps * c2 * (1.0 - ct) * fr.g - eps * st * fr.h;
      const Vec3 eg = eps * s2 * (1.0 - ct) * fr.f + (s2 + c2 * ct) * fr.g + st * fr.h;
      const Vec3 eh = eps * s2 * st * fr.f - c2 * st * fr.g + ct * fr.h;
      return a * ef + b * eg + k * eh;
    }
  }
  if ((X - fr.f).cwiseAbs().maxCoeff() < tol) {
    const double ctc = std::cos(t * c), stc = std::sin(t * c);
    const Vec3 eg = ctc * fr.g + stc / c * fr.h;
    const Vec3 eh = ctc * fr.h - c * stc * fr.g;
    return a * fr.f + b * eg + k * eh;
  }
  return ad_conjugate_generic(X, t, w);
}

}  // namespace so3tos
