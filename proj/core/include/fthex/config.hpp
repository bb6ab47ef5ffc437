#pragma once

#include <cstdint>
#include <string>

#include "fthex/allocation.hpp"
#include "fthex/control.hpp"
#include "fthex/dynamics.hpp"
#include "fthex/gp.hpp"
#include "fthex/trajectory.hpp"

// Scenario configuration: a flat, sectioned key = value file with a fixed,
// versioned schema. Every field has a default; unknown sections or keys are
// hard errors so typos cannot silently fall back to defaults.

namespace fthex {

enum class GpCollectMode { kOff, kAlways, kPostReconfig };

struct GpSettings {
  bool compensation = false;
  GpCollectMode collect = GpCollectMode::kPostReconfig;
  std::size_t capacity = 200;
  DatasetPolicy policy = DatasetPolicy::kSlidingWindow;
  int min_points = 10;            // compensation starts once N reaches this
  double refit_period = 0.0;      // s between hyperparameter refits; 0 = never
  int refit_budget = 40;          // gradient steps per start
  double delta = 0.9;
  bool rkhs_bound_fixed = false;  // false: auto 2 * sup|y_j| heuristic
  double rkhs_bound = 5.0;        // used when fixed
  double lengthscale_rot = 1.0;   // post-normalization, per input group
  double lengthscale_pos = 2.0;
  double lengthscale_omega = 1.0;
  double lengthscale_vel = 1.0;
  double signal_var = 1.0;
  double noise_var = 0.0025;
  EncodingScales scales;
  std::uint64_t switch_budget = 1000000;
  int gamma_candidates = 256;
  double collect_start_delay = 0.5;  // s after reconfiguration

  Hyperparams hyperparams() const;
};

struct DisturbanceConfig {
  std::string model = "zero";
  Vec3 bias_fv = Vec3::Zero();
  Vec3 bias_fw = Vec3::Zero();
  Vec3 gain_v_diag = Vec3::Zero();
  double gain_v_cross = 0.0;  // adds cross * hat(e3) to gain_v
  Vec3 gain_w_diag = Vec3::Zero();
  double gain_w_cross = 0.0;
  double cap_force = 3.0;
  double cap_torque = 0.3;

  GroundTruthDisturbance::Params params() const;
};

struct FaultConfig {
  int rotor = 0;          // 1..6; 0 disables the fault
  double time = 35.0;     // s
  double latency = 0.2;   // s between failure and reconfiguration
};

struct NoiseConfig {
  double pos = 0.0;   // m
  double att = 0.0;   // rad
  double gyro = 0.0;  // rad/s
  double vel = 0.0;   // m/s
};

/// Compact flight-envelope box used to sample information-gain candidates.
struct EnvelopeConfig {
  double omega_box = 2.0;   // rad/s, per axis
  double vel_box = 2.0;     // m/s, per axis
  double pos_margin = 0.5;  // m beyond the trajectory extent
  double rot_angle = 0.5;   // rad, max candidate tilt
};

struct ScenarioConfig {
  int schema_version = 1;

  // [scenario]
  double duration = 45.0;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::string trajectory_id = "hover";
  TrajectoryParams trajectory;
  Vec3 initial_offset = Vec3::Zero();
  double metrics_settle = 2.0;            // s after reconfig before the MSE window
  double mc_disturbance_jitter = 0.2;     // per-seed disturbance scale spread

  // [vehicle]
  InertiaParams inertia;
  double arm_length = 0.275;
  double thrust_coeff = 0.0981;  // N per percent
  double drag_coeff = 0.0016;    // N m per percent
  double tilt_angle_deg = 25.0;
  PwmThrustModel pwm_model = PwmThrustModel::kLinear;

  // [gains]
  Gains gains;

  GpSettings gp;
  DisturbanceConfig disturbance;
  FaultConfig fault;
  NoiseConfig noise;
  EnvelopeConfig envelope;

  RotorLayout make_layout() const;
  void validate() const;  // throws ConfigError
};

ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig parse_config_file(const std::string& path);

}  // namespace fthex
