#include "fthex/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "fthex/errors.hpp"

namespace fthex {

void InertiaParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("InertiaParams: mass must be positive");
  }
  if ((inertia - inertia.transpose()).norm() > 1e-9) {
    throw std::invalid_argument("InertiaParams: inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("InertiaParams: inertia must be positive definite");
  }
}

Vec3 gravity_accel(const Mat3& r, const InertiaParams& params) {
  const Vec3 e3 = Vec3::UnitZ();
  if (params.gravity_convention == GravityConvention::kPaperLiteral) {
    return params.gravity * (r * e3);
  }
  return -params.gravity * (r.transpose() * e3);
}

bool RigidState::finite() const {
  return rotation.allFinite() && position.allFinite() && omega.allFinite() && v.allFinite();
}

StateDerivative derivatives(const RigidState& s, const Wrench& u,
                            const DisturbanceSample& f, const InertiaParams& params) {
  StateDerivative d;
  d.rotation_dot = s.rotation * hat(s.omega);
  d.position_dot = s.rotation * s.v;
  const Vec3 j_omega = params.inertia * s.omega;
  d.omega_dot = params.inertia.ldlt().solve(-s.omega.cross(j_omega) + u.torque + f.f_omega);
  d.v_dot = (-s.omega.cross(params.mass * s.v) + params.mass * gravity_accel(s.rotation, params) +
             u.force + f.f_v) /
            params.mass;
  return d;
}

namespace {

Vec3 soft_clamp(const Vec3& x, double cap) {
  return cap * (x / cap).array().tanh().matrix();
}

}  // namespace

GroundTruthDisturbance GroundTruthDisturbance::make(const std::string& model_id,
                                                    const Params& p) {
  if (model_id != "zero" && model_id != "constant-bias" && model_id != "state-linear" &&
      model_id != "tilt-aero") {
    throw ConfigError("unknown disturbance model id: '" + model_id + "'");
  }
  return GroundTruthDisturbance(model_id, p);
}

DisturbanceSample GroundTruthDisturbance::evaluate(const RigidState& s,
                                                   bool fault_active) const {
  DisturbanceSample out;
  if (model_id_ == "zero" || !fault_active) {
    return out;
  }
  if (model_id_ == "constant-bias") {
    out.f_v = params_.bias_fv;
    out.f_omega = params_.bias_fw;
  } else if (model_id_ == "state-linear") {
    out.f_v = params_.bias_fv + params_.gain_v * s.v;
    out.f_omega = params_.bias_fw + params_.gain_w * s.omega;
  } else {  // tilt-aero: smooth, bounded in both channels
    const Vec3 raw_v = params_.bias_fv + params_.gain_v * s.v + 0.05 * s.omega.cross(s.v);
    const Vec3 raw_w = params_.bias_fw + params_.gain_w * s.omega +
                       0.02 * s.v.cross(Vec3::UnitZ());
    out.f_v = soft_clamp(raw_v, params_.cap_force);
    out.f_omega = soft_clamp(raw_w, params_.cap_torque);
  }
  return out;
}

RigidState step_rk4(const RigidState& s, const Wrench& u, const DisturbanceFn& f,
                    double dt, const InertiaParams& params) {
  if (!(dt > 0.0) || dt > 0.01) {
    throw std::invalid_argument("step_rk4: dt must lie in (0, 0.01]");
  }

  const auto eval = [&](const RigidState& x) {
    const DisturbanceSample d = f ? f(x) : DisturbanceSample{};
    return derivatives(x, u, d, params);
  };
  const auto advance = [](const RigidState& x, const StateDerivative& d, double h) {
    RigidState y;
    y.rotation = x.rotation + h * d.rotation_dot;
    y.position = x.position + h * d.position_dot;
    y.omega = x.omega + h * d.omega_dot;
    y.v = x.v + h * d.v_dot;
    return y;
  };

  const StateDerivative k1 = eval(s);
  const StateDerivative k2 = eval(advance(s, k1, 0.5 * dt));
  const StateDerivative k3 = eval(advance(s, k2, 0.5 * dt));
  const StateDerivative k4 = eval(advance(s, k3, dt));

  RigidState out;
  out.rotation = s.rotation + (dt / 6.0) * (k1.rotation_dot + 2.0 * k2.rotation_dot +
                                            2.0 * k3.rotation_dot + k4.rotation_dot);
  out.position = s.position + (dt / 6.0) * (k1.position_dot + 2.0 * k2.position_dot +
                                            2.0 * k3.position_dot + k4.position_dot);
  out.omega = s.omega + (dt / 6.0) * (k1.omega_dot + 2.0 * k2.omega_dot +
                                      2.0 * k3.omega_dot + k4.omega_dot);
  out.v = s.v + (dt / 6.0) * (k1.v_dot + 2.0 * k2.v_dot + 2.0 * k3.v_dot + k4.v_dot);

  if (!out.finite()) {
    throw NumericError("step_rk4: integration blowup (non-finite state)");
  }
  out.rotation = reproject(out.rotation);
  return out;
}

Vec6 training_output(const RigidState& s, const Vec3& omega_dot, const Vec3& v_dot,
                     const Wrench& u, const InertiaParams& params) {
  const double m = params.mass;
  const Vec3 y_force = m * v_dot + s.omega.cross(m * s.v) -
                       m * gravity_accel(s.rotation, params) - u.force;
  const Vec3 y_torque = params.inertia * omega_dot +
                        s.omega.cross(params.inertia * s.omega) - u.torque;
  Vec6 y;
  y << y_force, y_torque;
  return y;
}

}  // namespace fthex
