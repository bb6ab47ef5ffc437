#include "fthex/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "fthex/errors.hpp"

namespace fthex {

Hyperparams GpSettings::hyperparams() const {
  Hyperparams h;
  h.lengthscales.resize(kEncodingDim);
  h.lengthscales.segment(0, 9).setConstant(lengthscale_rot);
  h.lengthscales.segment(9, 3).setConstant(lengthscale_pos);
  h.lengthscales.segment(12, 3).setConstant(lengthscale_omega);
  h.lengthscales.segment(15, 3).setConstant(lengthscale_vel);
  h.signal_var = signal_var;
  h.noise_var = noise_var;
  return h;
}

GroundTruthDisturbance::Params DisturbanceConfig::params() const {
  GroundTruthDisturbance::Params p;
  p.bias_fv = bias_fv;
  p.bias_fw = bias_fw;
  p.gain_v = gain_v_diag.asDiagonal();
  p.gain_v += gain_v_cross * hat(Vec3::UnitZ());
  p.gain_w = gain_w_diag.asDiagonal();
  p.gain_w += gain_w_cross * hat(Vec3::UnitZ());
  p.cap_force = cap_force;
  p.cap_torque = cap_torque;
  return p;
}

RotorLayout ScenarioConfig::make_layout() const {
  return RotorLayout::default_hexagon(arm_length, thrust_coeff, drag_coeff,
                                      tilt_angle_deg * std::numbers::pi / 180.0);
}

void ScenarioConfig::validate() const {
  if (schema_version != 1) {
    throw ConfigError("unsupported schema_version (expected 1)");
  }
  if (!(duration >= 0.0) || !(dt > 0.0) || dt > 0.01) {
    throw ConfigError("scenario: need duration >= 0 and dt in (0, 0.01]");
  }
  try {
    inertia.validate();
    gains.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double att_steps = 1.0 / (dt * gains.attitude_rate_hz);
  const double pos_steps = 1.0 / (dt * gains.position_rate_hz);
  if (std::abs(att_steps - std::round(att_steps)) > 1e-6 ||
      std::abs(pos_steps - std::round(pos_steps)) > 1e-6 || att_steps < 1.0 - 1e-9) {
    throw ConfigError("gains: loop rates must divide the physics rate");
  }
  if (fault.rotor < 0 || fault.rotor > 6) {
    throw ConfigError("fault: rotor must be 0 (none) or 1..6");
  }
  if (fault.rotor > 0 && !(fault.latency >= 0.0)) {
    throw ConfigError("fault: latency must be >= 0");
  }
  if (!(gp.delta > 0.0) || !(gp.delta < 1.0)) {
    throw ConfigError("gp: delta must lie in (0, 1)");
  }
  if (gp.capacity < 1 || gp.min_points < 1) {
    throw ConfigError("gp: capacity and min_points must be >= 1");
  }
  if (disturbance.model != "zero" && disturbance.model != "constant-bias" &&
      disturbance.model != "state-linear" && disturbance.model != "tilt-aero") {
    throw ConfigError("disturbance: unknown model '" + disturbance.model + "'");
  }
  if (trajectory_id != "hover" && trajectory_id != "figure8" &&
      trajectory_id != "waypoint-loop") {
    throw ConfigError("scenario: unknown trajectory '" + trajectory_id + "'");
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) {
      throw std::invalid_argument(v);
    }
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x < 0.0 || std::floor(x) != x) {
    throw ConfigError("config: '" + key + "' must be a nonnegative integer");
  }
  return static_cast<std::uint64_t>(x);
}

int to_int(const std::string& key, const std::string& v) {
  return static_cast<int>(to_u64(key, v));
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("config: bad boolean for '" + key + "': '" + v + "'");
}

Vec3 to_vec3(const std::string& key, const std::string& v) {
  std::stringstream ss(v);
  Vec3 out;
  if (!(ss >> out.x() >> out.y() >> out.z())) {
    throw ConfigError("config: '" + key + "' needs 3 numbers");
  }
  std::string rest;
  if (ss >> rest) {
    throw ConfigError("config: '" + key + "' needs exactly 3 numbers");
  }
  return out;
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) {
      line = line.substr(0, comment);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": malformed section");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "scenario" && section != "vehicle" && section != "gains" &&
          section != "gp" && section != "disturbance" && section != "fault" &&
          section != "noise" && section != "envelope") {
        throw ConfigError("config: unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string full = section.empty() ? key : section + "." + key;

    if (full == "schema_version") {
      cfg.schema_version = to_int(full, value);
    } else if (full == "scenario.duration") {
      cfg.duration = to_double(full, value);
    } else if (full == "scenario.dt") {
      cfg.dt = to_double(full, value);
    } else if (full == "scenario.seed") {
      cfg.seed = to_u64(full, value);
    } else if (full == "scenario.trajectory") {
      cfg.trajectory_id = value;
    } else if (full == "scenario.center") {
      cfg.trajectory.center = to_vec3(full, value);
    } else if (full == "scenario.period") {
      cfg.trajectory.period = to_double(full, value);
    } else if (full == "scenario.size_x") {
      cfg.trajectory.size_x = to_double(full, value);
    } else if (full == "scenario.size_y") {
      cfg.trajectory.size_y = to_double(full, value);
    } else if (full == "scenario.yaw") {
      cfg.trajectory.yaw = to_double(full, value);
    } else if (full == "scenario.leg_time") {
      cfg.trajectory.leg_time = to_double(full, value);
    } else if (full == "scenario.initial_offset") {
      cfg.initial_offset = to_vec3(full, value);
    } else if (full == "scenario.metrics_settle") {
      cfg.metrics_settle = to_double(full, value);
    } else if (full == "scenario.mc_disturbance_jitter") {
      cfg.mc_disturbance_jitter = to_double(full, value);
    } else if (full == "vehicle.mass") {
      cfg.inertia.mass = to_double(full, value);
    } else if (full == "vehicle.inertia") {
      cfg.inertia.inertia = to_vec3(full, value).asDiagonal();
    } else if (full == "vehicle.gravity") {
      cfg.inertia.gravity = to_double(full, value);
    } else if (full == "vehicle.gravity_convention") {
      if (value == "body-consistent") {
        cfg.inertia.gravity_convention = GravityConvention::kBodyConsistent;
      } else if (value == "paper-literal") {
        cfg.inertia.gravity_convention = GravityConvention::kPaperLiteral;
      } else {
        throw ConfigError("config: bad vehicle.gravity_convention '" + value + "'");
      }
    } else if (full == "vehicle.arm_length") {
      cfg.arm_length = to_double(full, value);
    } else if (full == "vehicle.thrust_coeff") {
      cfg.thrust_coeff = to_double(full, value);
    } else if (full == "vehicle.drag_coeff") {
      cfg.drag_coeff = to_double(full, value);
    } else if (full == "vehicle.tilt_angle_deg") {
      cfg.tilt_angle_deg = to_double(full, value);
    } else if (full == "vehicle.pwm_model") {
      if (value == "linear") {
        cfg.pwm_model = PwmThrustModel::kLinear;
      } else if (value == "quadratic") {
        cfg.pwm_model = PwmThrustModel::kQuadratic;
      } else {
        throw ConfigError("config: bad vehicle.pwm_model '" + value + "'");
      }
    } else if (full == "gains.k1") {
      cfg.gains.k1 = to_double(full, value);
    } else if (full == "gains.k2") {
      cfg.gains.k2 = to_double(full, value);
    } else if (full == "gains.k3") {
      cfg.gains.k3 = to_double(full, value);
    } else if (full == "gains.k4") {
      cfg.gains.k4 = to_double(full, value);
    } else if (full == "gains.k5") {
      cfg.gains.k5 = to_double(full, value);
    } else if (full == "gains.position_rate") {
      cfg.gains.position_rate_hz = to_double(full, value);
    } else if (full == "gains.attitude_rate") {
      cfg.gains.attitude_rate_hz = to_double(full, value);
    } else if (full == "gp.compensation") {
      cfg.gp.compensation = to_bool(full, value);
    } else if (full == "gp.collect") {
      if (value == "off") {
        cfg.gp.collect = GpCollectMode::kOff;
      } else if (value == "always") {
        cfg.gp.collect = GpCollectMode::kAlways;
      } else if (value == "post-reconfig") {
        cfg.gp.collect = GpCollectMode::kPostReconfig;
      } else {
        throw ConfigError("config: bad gp.collect '" + value + "'");
      }
    } else if (full == "gp.capacity") {
      cfg.gp.capacity = to_u64(full, value);
    } else if (full == "gp.policy") {
      if (value == "grow") {
        cfg.gp.policy = DatasetPolicy::kGrow;
      } else if (value == "sliding-window") {
        cfg.gp.policy = DatasetPolicy::kSlidingWindow;
      } else {
        throw ConfigError("config: bad gp.policy '" + value + "'");
      }
    } else if (full == "gp.min_points") {
      cfg.gp.min_points = to_int(full, value);
    } else if (full == "gp.refit_period") {
      cfg.gp.refit_period = to_double(full, value);
    } else if (full == "gp.refit_budget") {
      cfg.gp.refit_budget = to_int(full, value);
    } else if (full == "gp.delta") {
      cfg.gp.delta = to_double(full, value);
    } else if (full == "gp.rkhs_bound_mode") {
      if (value == "auto") {
        cfg.gp.rkhs_bound_fixed = false;
      } else if (value == "fixed") {
        cfg.gp.rkhs_bound_fixed = true;
      } else {
        throw ConfigError("config: bad gp.rkhs_bound_mode '" + value + "'");
      }
    } else if (full == "gp.rkhs_bound") {
      cfg.gp.rkhs_bound = to_double(full, value);
    } else if (full == "gp.lengthscale_rot") {
      cfg.gp.lengthscale_rot = to_double(full, value);
    } else if (full == "gp.lengthscale_pos") {
      cfg.gp.lengthscale_pos = to_double(full, value);
    } else if (full == "gp.lengthscale_omega") {
      cfg.gp.lengthscale_omega = to_double(full, value);
    } else if (full == "gp.lengthscale_vel") {
      cfg.gp.lengthscale_vel = to_double(full, value);
    } else if (full == "gp.signal_var") {
      cfg.gp.signal_var = to_double(full, value);
    } else if (full == "gp.noise_var") {
      cfg.gp.noise_var = to_double(full, value);
    } else if (full == "gp.scale_rot") {
      cfg.gp.scales.rotation = to_double(full, value);
    } else if (full == "gp.scale_pos") {
      cfg.gp.scales.position = to_double(full, value);
    } else if (full == "gp.scale_omega") {
      cfg.gp.scales.omega = to_double(full, value);
    } else if (full == "gp.scale_vel") {
      cfg.gp.scales.velocity = to_double(full, value);
    } else if (full == "gp.switch_budget") {
      cfg.gp.switch_budget = to_u64(full, value);
    } else if (full == "gp.gamma_candidates") {
      cfg.gp.gamma_candidates = to_int(full, value);
    } else if (full == "gp.collect_start_delay") {
      cfg.gp.collect_start_delay = to_double(full, value);
    } else if (full == "disturbance.model") {
      cfg.disturbance.model = value;
    } else if (full == "disturbance.bias_fv") {
      cfg.disturbance.bias_fv = to_vec3(full, value);
    } else if (full == "disturbance.bias_fw") {
      cfg.disturbance.bias_fw = to_vec3(full, value);
    } else if (full == "disturbance.gain_v_diag") {
      cfg.disturbance.gain_v_diag = to_vec3(full, value);
    } else if (full == "disturbance.gain_v_cross") {
      cfg.disturbance.gain_v_cross = to_double(full, value);
    } else if (full == "disturbance.gain_w_diag") {
      cfg.disturbance.gain_w_diag = to_vec3(full, value);
    } else if (full == "disturbance.gain_w_cross") {
      cfg.disturbance.gain_w_cross = to_double(full, value);
    } else if (full == "disturbance.cap_force") {
      cfg.disturbance.cap_force = to_double(full, value);
    } else if (full == "disturbance.cap_torque") {
      cfg.disturbance.cap_torque = to_double(full, value);
    } else if (full == "fault.rotor") {
      cfg.fault.rotor = to_int(full, value);
    } else if (full == "fault.time") {
      cfg.fault.time = to_double(full, value);
    } else if (full == "fault.latency") {
      cfg.fault.latency = to_double(full, value);
    } else if (full == "noise.pos") {
      cfg.noise.pos = to_double(full, value);
    } else if (full == "noise.att") {
      cfg.noise.att = to_double(full, value);
    } else if (full == "noise.gyro") {
      cfg.noise.gyro = to_double(full, value);
    } else if (full == "noise.vel") {
      cfg.noise.vel = to_double(full, value);
    } else if (full == "envelope.omega_box") {
      cfg.envelope.omega_box = to_double(full, value);
    } else if (full == "envelope.vel_box") {
      cfg.envelope.vel_box = to_double(full, value);
    } else if (full == "envelope.pos_margin") {
      cfg.envelope.pos_margin = to_double(full, value);
    } else if (full == "envelope.rot_angle") {
      cfg.envelope.rot_angle = to_double(full, value);
    } else {
      throw ConfigError("config: unknown key '" + full + "'");
    }
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace fthex
