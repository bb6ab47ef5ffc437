#pragma once

#include <functional>
#include <string>

#include "fthex/se3.hpp"

namespace fthex {

/// Frame convention for the gravity term in the body-frame velocity equation.
/// kBodyConsistent applies -m g R^T e3 (gravity rotated into the body frame);
/// kPaperLiteral applies +m g R e3. Both are kept behind this switch so the
/// pair derivatives()/training_output() stays self-consistent either way.
enum class GravityConvention { kBodyConsistent, kPaperLiteral };

struct InertiaParams {
  double mass = 2.8;  // kg
  Mat3 inertia = (Eigen::Matrix3d() << 0.03, 0, 0, 0, 0.03, 0, 0, 0, 0.05).finished();
  double gravity = 9.81;  // m/s^2
  GravityConvention gravity_convention = GravityConvention::kBodyConsistent;

  /// Throws std::invalid_argument unless mass > 0 and inertia is symmetric
  /// positive definite.
  void validate() const;
};

/// Gravity acceleration as it enters the body-frame velocity equation.
Vec3 gravity_accel(const Mat3& r, const InertiaParams& params);

/// Full rigid-body state: world pose (R, p) and body twist (omega, v).
struct RigidState {
  Mat3 rotation = Mat3::Identity();
  Vec3 position = Vec3::Zero();  // m, world frame
  Vec3 omega = Vec3::Zero();     // rad/s, body frame
  Vec3 v = Vec3::Zero();         // m/s, body frame

  BodyTwist twist() const { return BodyTwist{omega, v}; }
  bool finite() const;
};

/// Body-frame generalized actuation: torque u1 and force u2.
struct Wrench {
  Vec3 torque = Vec3::Zero();  // N m
  Vec3 force = Vec3::Zero();   // N
};

/// Unmodeled force/torque pair (f_v, f_omega). stacked() uses the training
/// output order: force first, torque second.
struct DisturbanceSample {
  Vec3 f_v = Vec3::Zero();      // N
  Vec3 f_omega = Vec3::Zero();  // N m

  Vec6 stacked() const {
    Vec6 f;
    f << f_v, f_omega;
    return f;
  }
};

struct StateDerivative {
  Mat3 rotation_dot = Mat3::Zero();
  Vec3 position_dot = Vec3::Zero();
  Vec3 omega_dot = Vec3::Zero();
  Vec3 v_dot = Vec3::Zero();
};

/// Continuous rigid-body dynamics:
///   R_dot = R hat(omega),  p_dot = R v,
///   J omega_dot = -omega x J omega + u1 + f_omega,
///   m v_dot     = -omega x m v + m * gravity_accel(R) + u2 + f_v.
StateDerivative derivatives(const RigidState& s, const Wrench& u,
                            const DisturbanceSample& f, const InertiaParams& params);

/// Synthetic ground-truth disturbance models for simulation. All models except
/// "zero" are gated on the fault flag: they return zero until the flag is set.
class GroundTruthDisturbance {
 public:
  struct Params {
    Vec3 bias_fv = Vec3::Zero();   // N
    Vec3 bias_fw = Vec3::Zero();   // N m
    Mat3 gain_v = Mat3::Zero();    // N per m/s
    Mat3 gain_w = Mat3::Zero();    // N m per rad/s
    double cap_force = 3.0;        // N, smooth saturation level (tilt-aero)
    double cap_torque = 0.3;       // N m
  };

  /// model_id in {"zero", "constant-bias", "state-linear", "tilt-aero"}.
  /// Throws ConfigError (see config.hpp) for anything else.
  static GroundTruthDisturbance make(const std::string& model_id, const Params& p = {});

  DisturbanceSample evaluate(const RigidState& s, bool fault_active) const;
  const std::string& model_id() const { return model_id_; }

 private:
  GroundTruthDisturbance(std::string id, const Params& p) : model_id_(std::move(id)), params_(p) {}
  std::string model_id_;
  Params params_;
};

using DisturbanceFn = std::function<DisturbanceSample(const RigidState&)>;

/// Classical RK4 step with polar reprojection of the rotation block.
/// dt must lie in (0, 0.01]. f may be empty (treated as zero disturbance).
/// Throws NumericError if the result is non-finite (integration blowup).
RigidState step_rk4(const RigidState& s, const Wrench& u, const DisturbanceFn& f,
                    double dt, const InertiaParams& params);

/// Inverts the dynamics to recover the disturbance from (measured) derivatives:
///   y = [ m v_dot + omega x m v - m * gravity_accel(R) - u2 ;
///         J omega_dot + omega x J omega - u1 ].
/// With exact derivatives y equals the injected (f_v, f_omega) exactly.
Vec6 training_output(const RigidState& s, const Vec3& omega_dot, const Vec3& v_dot,
                     const Wrench& u, const InertiaParams& params);

}  // namespace fthex
