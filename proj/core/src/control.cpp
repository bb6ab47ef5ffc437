#include "fthex/control.hpp"

#include <cmath>
#include <stdexcept>

namespace fthex {

void Gains::validate() const {
  if (!(k1 > 0.0) || !(k2 > 0.0) || !(k3 > 0.0) || !(k4 > 0.0) || !(k5 > 0.0)) {
    throw std::invalid_argument("Gains: all gains must be positive");
  }
  if (!(k5 > 1.0)) {
    throw std::invalid_argument("Gains: k5 must exceed 1");
  }
  if (!(position_rate_hz > 0.0) || !(attitude_rate_hz >= position_rate_hz)) {
    throw std::invalid_argument("Gains: attitude rate must be >= position rate > 0");
  }
}

PositionErrorState position_errors(const RigidState& s, const Vec3& p_d,
                                   const Vec3& p_d_dot, const Gains& gains) {
  PositionErrorState err;
  err.e = s.rotation.transpose() * (s.position - p_d);
  const Vec3 v_d = -gains.k1 * err.e + s.rotation.transpose() * p_d_dot;
  err.z = s.v - v_d;
  return err;
}

Vec3 position_law(const RigidState& s, const Vec3& p_d, const Vec3& p_d_dot,
                  const InertiaParams& params, const Gains& gains, const Vec3& gp_mean_fv) {
  const PositionErrorState err = position_errors(s, p_d, p_d_dot, gains);
  const double m = params.mass;
  return -gains.k2 * err.z - err.e + s.omega.cross(m * s.v) -
         gains.k1 * m * (s.omega.cross(err.e) + s.v) - gp_mean_fv;
}

AttitudeErrorState attitude_errors(const RigidState& s, const Mat3& r_d, const Gains& gains) {
  AttitudeErrorState err;
  err.psi = psi_error(s.rotation, r_d);
  err.chi = chi_error(s.rotation, r_d);
  const Vec3 omega_d = -gains.k3 * err.chi;
  err.omega_err = s.omega - omega_d;
  return err;
}

Vec3 chi_rate(const RigidState& s, const Mat3& r_d) {
  const Mat3 q = r_d.transpose() * s.rotation;
  const Mat3 w = hat(s.omega);
  const Mat3 m = q * w + w * q.transpose();
  // m is skew by construction.
  return 0.5 * Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Vec3 attitude_law(const RigidState& s, const Mat3& r_d, const Gains& gains,
                  const Mat3& inertia, const Vec3& gp_mean_fw) {
  const AttitudeErrorState err = attitude_errors(s, r_d, gains);
  const Vec3 chi_dot = chi_rate(s, r_d);
  return -gains.k4 * err.omega_err - gains.k5 * err.chi +
         s.omega.cross(inertia * s.omega) - gains.k3 * (inertia * chi_dot) - gp_mean_fw;
}

ThrustSetpoint outer_to_inner(const Vec3& f_des_world, double yaw_d, const Mat3& prev_r_d,
                              double min_force) {
  ThrustSetpoint sp;
  sp.f_z = f_des_world.norm();
  if (sp.f_z <= min_force) {
    sp.r_d = prev_r_d;
    sp.degenerate = true;
    return sp;
  }
  const Vec3 b3 = f_des_world / sp.f_z;
  const Vec3 heading(std::cos(yaw_d), std::sin(yaw_d), 0.0);
  Vec3 b2 = b3.cross(heading);
  const double b2_norm = b2.norm();
  if (b2_norm < 1e-6) {  // thrust direction parallel to the heading vector
    sp.r_d = prev_r_d;
    sp.degenerate = true;
    return sp;
  }
  b2 /= b2_norm;
  const Vec3 b1 = b2.cross(b3);
  Mat3 r_d;
  r_d.col(0) = b1;
  r_d.col(1) = b2;
  r_d.col(2) = b3;
  sp.r_d = r_d;
  return sp;
}

UltimateBound ultimate_bound_position(const Gains& gains, double mass, double max_rho) {
  if (max_rho < 0.0) {
    throw std::invalid_argument("ultimate_bound_position: max_rho must be >= 0");
  }
  const double lo = 0.5 * std::min(1.0, mass);
  const double hi = 0.5 * std::max(1.0, mass);
  UltimateBound out;
  out.paper_stated = std::sqrt(lo / hi) * max_rho;  // constants in printed order
  out.bound = std::sqrt(hi / lo) * max_rho / std::min(gains.k1, gains.k2);
  return out;
}

UltimateBound ultimate_bound_attitude(const Gains& gains, const Mat3& inertia, double c1,
                                      double c2, double max_rho) {
  if (max_rho < 0.0) {
    throw std::invalid_argument("ultimate_bound_attitude: max_rho must be >= 0");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  const double lam_min = eig.eigenvalues().minCoeff();
  const double lam_max = eig.eigenvalues().maxCoeff();
  const double k_lo = std::min(c1, 0.5 * lam_min);
  const double k_hi = std::max(c2, 0.5 * lam_max);
  const double k6 = 0.5 * (gains.k5 - 1.0);
  UltimateBound out;
  out.paper_stated = std::sqrt(k_lo / k_hi) * max_rho;
  out.bound = std::sqrt(k_hi / k_lo) * max_rho / std::min({gains.k3, gains.k4, k6});
  return out;
}

bool invariance_check(const Mat3& r0, const Vec3& omega_err0, const Mat3& r_d,
                      const Mat3& inertia) {
  const double psi0 = psi_error(r0, r_d);
  if (!(psi0 < 2.0)) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  const double lam_min = eig.eigenvalues().minCoeff();
  return omega_err0.squaredNorm() < (2.0 - psi0) / lam_min;
}

}  // namespace fthex
