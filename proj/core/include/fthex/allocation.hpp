#pragma once

#include <array>
#include <numbers>
#include <string>
#include <utility>

#include "fthex/dynamics.hpp"
#include "fthex/se3.hpp"

// Hexarotor control allocation: geometry-derived 4x6 allocation matrix
// (rows tau_x, tau_y, tau_z, f_z), Moore-Penrose wrench-to-PWM mapping with
// [0,100]% saturation, and single-failure reconfiguration that deploys a
// sideways tilt on one of the two tilt-capable rotors to keep full torque
// authority.

namespace fthex {

struct RotorSpec {
  Vec3 position = Vec3::Zero();    // m, body frame
  Vec3 axis = Vec3::UnitZ();       // unit thrust direction, body frame
  double spin = 1.0;               // +1 or -1
  double thrust_coeff = 0.0981;    // N per percent PWM
  double drag_coeff = 0.0016;      // N m per percent PWM
  bool tiltable = false;
  double tilt_angle = 0.0;         // rad, deployed cant about the arm axis
};

struct RotorLayout {
  std::array<RotorSpec, 6> rotors;
  std::array<bool, 6> tilted{};        // tilt deployed
  std::array<int, 6> tilt_pairing{};   // failed rotor i -> rotor index to tilt
  int failed = -1;                     // rotor index, -1 when none

  /// Regular flat hexagon with alternating spins; rotors 0 and 3 carry the
  /// tilt mechanism. PWM 100% gives thrust_coeff*100 N per rotor.
  static RotorLayout default_hexagon(double arm_length = 0.275,
                                     double thrust_coeff = 0.0981,
                                     double drag_coeff = 0.0016,
                                     double tilt_angle_rad = 25.0 * std::numbers::pi / 180.0);

  /// Physical failure only: marks the rotor dead (its thrust is zero from now
  /// on) without touching tilt or pairing. Used for the plant side during the
  /// detection-latency window.
  RotorLayout with_failure(int rotor_index) const;

  /// Effective thrust axis of rotor i (tilt applied if deployed).
  Vec3 effective_axis(int i) const;
};

struct AllocationMatrix {
  Eigen::Matrix<double, 4, 6> a = Eigen::Matrix<double, 4, 6>::Zero();
  Eigen::Matrix<double, 6, 4> pinv = Eigen::Matrix<double, 6, 4>::Zero();
  bool full_rank = false;
  double min_singular_value = 0.0;
  int failed = -1;
};

/// Column i is [(r_i x c_f n_i + spin_i c_tau n_i); c_f (n_i . e3)], with the
/// failed rotor's column zeroed.
AllocationMatrix build_allocation(const RotorLayout& layout);

struct PwmCommand {
  Vec6 pwm = Vec6::Zero();       // percent, clamped to [0, 100]
  Vec6 preclamp = Vec6::Zero();  // raw pseudoinverse solution
  std::array<bool, 6> saturated{};

  bool any_saturated() const {
    for (bool s : saturated) {
      if (s) return true;
    }
    return false;
  }
};

/// Minimum-norm PWM solving A u = [tau_cmd; f_z], then clamped to [0, 100]
/// with per-rotor saturation flags. The failed rotor entry is forced to zero.
/// Throws AllocationError when A is rank-deficient.
PwmCommand allocate(const AllocationMatrix& alloc, const Vec3& torque_cmd, double f_z);

/// Failure response: zero the failed column, deploy the paired tilt, rebuild.
/// Throws AllocationError on a second failure.
std::pair<RotorLayout, AllocationMatrix> reconfigure(const RotorLayout& layout,
                                                     int failed_index);

struct EnvelopeResult {
  double max_torque = 0.0;  // N m achievable along the direction
  bool feasible_at_zero = true;
  std::string method;
};

/// Largest alpha such that A u = [alpha * direction; f_z_nominal] admits
/// u in [0,100]^6, found by bisection with an exact nullspace-polytope
/// feasibility test. direction must be unit length.
EnvelopeResult torque_envelope(const AllocationMatrix& alloc, double f_z_nominal,
                               const Vec3& direction);

enum class PwmThrustModel { kLinear, kQuadratic };

/// Plant-side wrench for a PWM vector: per-rotor thrust via the chosen
/// PWM->thrust model (the quadratic variant matches the linear one at 50% and
/// bends away from it elsewhere), drag torque proportional to thrust, zero for
/// the failed rotor.
Wrench plant_wrench(const RotorLayout& layout, const Vec6& pwm, PwmThrustModel model);

}  // namespace fthex
