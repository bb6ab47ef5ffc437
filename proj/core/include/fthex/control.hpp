#pragma once

#include "fthex/dynamics.hpp"
#include "fthex/se3.hpp"

// Tracking controllers for the rigid body, compensated by the GP disturbance
// estimate, plus the ultimate-bound arithmetic that turns a worst-case
// prediction-error radius max rho_bar into tracking-error radii b_n (position)
// and c_n (attitude).

namespace fthex {

struct Gains {
  double k1 = 1.2;
  double k2 = 6.0;
  double k3 = 6.0;
  double k4 = 0.7;
  double k5 = 4.0;  // must exceed 1 so k6 = (k5 - 1)/2 stays positive
  double position_rate_hz = 20.0;
  double attitude_rate_hz = 200.0;

  void validate() const;  // throws std::invalid_argument
};

/// Position error in the body frame, e = R^T (p - p_d), and velocity error
/// z = v - v_d with v_d = -k1 e + R^T p_d_dot.
struct PositionErrorState {
  Vec3 e = Vec3::Zero();
  Vec3 z = Vec3::Zero();

  Vec6 zeta() const {
    Vec6 out;
    out << e, z;
    return out;
  }
};

PositionErrorState position_errors(const RigidState& s, const Vec3& p_d,
                                   const Vec3& p_d_dot, const Gains& gains);

/// Body-frame force command
///   u2 = -k2 z - e + hat(omega) m v - k1 m (hat(omega) e + v) - gp_mean_fv.
Vec3 position_law(const RigidState& s, const Vec3& p_d, const Vec3& p_d_dot,
                  const InertiaParams& params, const Gains& gains, const Vec3& gp_mean_fv);

/// Attitude errors Psi, chi against R_d plus Omega = omega - omega_d with
/// omega_d = -k3 chi.
struct AttitudeErrorState {
  double psi = 0.0;
  Vec3 chi = Vec3::Zero();
  Vec3 omega_err = Vec3::Zero();

  Vec6 eta() const {
    Vec6 out;
    out << chi, omega_err;
    return out;
  }
};

AttitudeErrorState attitude_errors(const RigidState& s, const Mat3& r_d, const Gains& gains);

/// Body torque command
///   u1 = -k4 Omega - k5 chi + omega x J omega - k3 J chi_dot - gp_mean_fw,
/// with chi_dot = 1/2 vee(R_d^T R hat(omega) + hat(omega) R^T R_d) for a
/// setpoint R_d held constant between outer-loop ticks.
Vec3 attitude_law(const RigidState& s, const Mat3& r_d, const Gains& gains,
                  const Mat3& inertia, const Vec3& gp_mean_fw);

/// Analytic chi rate for constant R_d.
Vec3 chi_rate(const RigidState& s, const Mat3& r_d);

/// Outer-to-inner loop interface: the desired world-frame force is realized by
/// aligning the body z axis with it and thrusting along it.
struct ThrustSetpoint {
  Mat3 r_d = Mat3::Identity();
  double f_z = 0.0;  // N
  bool degenerate = false;
};

/// Builds R_d with third column along f_des_world and heading matching yaw_d.
/// Below min_force (or with f_des nearly horizontal-parallel to the heading
/// vector) the previous setpoint is held and the tick flagged degenerate.
ThrustSetpoint outer_to_inner(const Vec3& f_des_world, double yaw_d, const Mat3& prev_r_d,
                              double min_force);

struct UltimateBound {
  double bound = 0.0;         // level-set radius including the 1/min(gains) factor
  double paper_stated = 0.0;  // sqrt ratio times max_rho only, constants as printed
};

/// b_n = sqrt(max{1,m}/min{1,m}) * max_rho / min{k1, k2}.
UltimateBound ultimate_bound_position(const Gains& gains, double mass, double max_rho);

/// c_n = sqrt(K_hi/K_lo) * max_rho / min{k3, k4, k6} with
/// K_lo = min{c1, lambda_min(J)/2}, K_hi = max{c2, lambda_max(J)/2} and
/// k6 = (k5 - 1)/2 (the min over rho > 0 of {(k5-1)rho/2, (k5-1)/(2 rho)}
/// maximized at rho = 1).
UltimateBound ultimate_bound_attitude(const Gains& gains, const Mat3& inertia, double c1,
                                      double c2, double max_rho);

/// Region-of-attraction test: Psi(R0, R_d) < 2 and
/// ||Omega0||^2 < (2 - Psi(R0, R_d)) / lambda_min(J).
bool invariance_check(const Mat3& r0, const Vec3& omega_err0, const Mat3& r_d,
                      const Mat3& inertia);

}  // namespace fthex
