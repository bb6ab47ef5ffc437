#pragma once

#include <string>
#include <vector>

#include "fthex/se3.hpp"

namespace fthex {

struct TrajectorySample {
  Vec3 p_d = Vec3::Zero();
  Vec3 p_d_dot = Vec3::Zero();
  double yaw_d = 0.0;
};

struct TrajectoryParams {
  Vec3 center = Vec3(0.0, 0.0, 1.5);
  double period = 20.0;              // s, figure8 lap time
  double size_x = 2.0;               // m, figure8 total width
  double size_y = 1.0;               // m, figure8 total height
  double yaw = 0.0;                  // rad, constant heading
  std::vector<Vec3> waypoints;       // waypoint-loop corners (relative to center)
  double leg_time = 5.0;             // s per leg
};

/// Smooth (C^2) position references. Ids: "hover" (constant), "figure8"
/// (Gerono lemniscate), "waypoint-loop" (quintic-blended corner cycle).
/// Unknown ids raise ConfigError.
class Trajectory {
 public:
  static Trajectory make(const std::string& id, const TrajectoryParams& params = {});
  TrajectorySample at(double t) const;
  const std::string& id() const { return id_; }

 private:
  Trajectory(std::string id, const TrajectoryParams& p) : id_(std::move(id)), params_(p) {}
  std::string id_;
  TrajectoryParams params_;
};

}  // namespace fthex
