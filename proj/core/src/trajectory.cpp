#include "fthex/trajectory.hpp"

#include <cmath>
#include <numbers>

#include "fthex/errors.hpp"

namespace fthex {

Trajectory Trajectory::make(const std::string& id, const TrajectoryParams& params) {
  if (id != "hover" && id != "figure8" && id != "waypoint-loop") {
    throw ConfigError("unknown trajectory id: '" + id + "'");
  }
  TrajectoryParams p = params;
  if (id == "waypoint-loop" && p.waypoints.empty()) {
    const double hx = 0.5 * p.size_x;
    const double hy = 0.5 * p.size_y;
    p.waypoints = {Vec3(hx, hy, 0), Vec3(-hx, hy, 0), Vec3(-hx, -hy, 0), Vec3(hx, -hy, 0)};
  }
  return Trajectory(id, p);
}

namespace {

// Quintic smoothstep: s(0)=0, s(1)=1, zero first and second derivatives at
// both ends, so waypoint blends are C^2.
void smoothstep5(double x, double* s, double* ds) {
  x = std::clamp(x, 0.0, 1.0);
  *s = x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
  *ds = 30.0 * x * x * (1.0 - x) * (1.0 - x);
}

}  // namespace

TrajectorySample Trajectory::at(double t) const {
  TrajectorySample out;
  out.yaw_d = params_.yaw;

  if (id_ == "hover") {
    out.p_d = params_.center;
    return out;
  }

  if (id_ == "figure8") {
    const double w = 2.0 * std::numbers::pi / params_.period;
    const double ax = 0.5 * params_.size_x;
    const double ay = 0.5 * params_.size_y;
    out.p_d = params_.center + Vec3(ax * std::sin(w * t), ay * std::sin(2.0 * w * t), 0.0);
    out.p_d_dot = Vec3(ax * w * std::cos(w * t), 2.0 * ay * w * std::cos(2.0 * w * t), 0.0);
    return out;
  }

  // waypoint-loop
  const auto& wp = params_.waypoints;
  const std::size_t n = wp.size();
  const double loop_time = params_.leg_time * static_cast<double>(n);
  double tau = std::fmod(t, loop_time);
  if (tau < 0.0) {
    tau += loop_time;
  }
  const std::size_t leg = static_cast<std::size_t>(tau / params_.leg_time) % n;
  const Vec3 a = wp[leg];
  const Vec3 b = wp[(leg + 1) % n];
  double s, ds;
  smoothstep5((tau - static_cast<double>(leg) * params_.leg_time) / params_.leg_time, &s, &ds);
  out.p_d = params_.center + a + s * (b - a);
  out.p_d_dot = (ds / params_.leg_time) * (b - a);
  return out;
}

}  // namespace fthex
