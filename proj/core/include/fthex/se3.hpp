#pragma once

#include <Eigen/Dense>

namespace fthex {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Body-frame twist xi = [omega; v].
struct BodyTwist {
  Vec3 omega = Vec3::Zero();  // rad/s
  Vec3 v = Vec3::Zero();      // m/s

  Vec6 stacked() const {
    Vec6 xi;
    xi << omega, v;
    return xi;
  }
};

/// Skew operator so that hat(w) * x == w.cross(x).
Mat3 hat(const Vec3& w);

/// Inverse of hat(). Throws std::invalid_argument if m is not skew-symmetric
/// within tol (Frobenius norm of m + m^T).
Vec3 vee(const Mat3& m, double tol = 1e-8);

/// se(3) embedding of a twist: [hat(omega) v; 0 0].
Mat4 breve(const BodyTwist& xi);

/// Coriolis block matrix D(omega, v) = [-hat(omega) -hat(v); 0 -hat(omega)].
Mat6 d_matrix(const Vec3& omega, const Vec3& v);

/// Homogeneous pose [R p; 0 1].
Mat4 pose_matrix(const Mat3& r, const Vec3& p);

/// Attitude error scalar Psi(R, Rd) = 1/2 tr(I - Rd^T R), in [0, 2].
/// Zero iff R == Rd; 2 at a half-turn.
double psi_error(const Mat3& r, const Mat3& rd);

/// Attitude error vector chi(R, Rd) = 1/2 vee(Rd^T R - R^T Rd).
/// Equals sin(theta) * axis for a relative rotation of theta about axis.
Vec3 chi_error(const Mat3& r, const Mat3& rd);

// Sandwich constants c1 ||chi||^2 <= Psi <= c2 ||chi||^2. In axis-angle terms
// Psi / ||chi||^2 = 1 / (2 - Psi), so the lower constant holds on the whole
// region Psi < 2 while the upper constant is certified only on Psi <= 1.
inline constexpr double kChiPsiLower = 0.5;
inline constexpr double kChiPsiUpper = 1.0;
inline constexpr double kChiPsiUpperRegion = 1.0;  // valid where Psi <= this

/// Nearest rotation matrix: the orthogonal polar factor of r.
/// Throws std::invalid_argument for singular or orientation-reversing input.
Mat3 reproject(const Mat3& r);

/// Frobenius orthogonality defect ||R^T R - I||_F.
double orthogonality_defect(const Mat3& r);

/// True when r is orthogonal within tol and det(r) is 1 within tol.
bool is_rotation(const Mat3& r, double tol = 1e-9);

}  // namespace fthex
