#include "fthex/allocation.hpp"

#include <cmath>
#include <stdexcept>

#include "fthex/errors.hpp"

namespace fthex {

RotorLayout RotorLayout::default_hexagon(double arm_length, double thrust_coeff,
                                         double drag_coeff, double tilt_angle_rad) {
  RotorLayout layout;
  for (int i = 0; i < 6; ++i) {
    const double angle = i * std::numbers::pi / 3.0;
    RotorSpec& r = layout.rotors[static_cast<std::size_t>(i)];
    r.position = Vec3(arm_length * std::cos(angle), arm_length * std::sin(angle), 0.0);
    r.axis = Vec3::UnitZ();
    r.spin = (i % 2 == 0) ? 1.0 : -1.0;
    r.thrust_coeff = thrust_coeff;
    r.drag_coeff = drag_coeff;
    r.tiltable = (i == 0 || i == 3);
    r.tilt_angle = tilt_angle_rad;
  }
  // Deploy the tilt-capable rotor angularly farthest from the failure.
  layout.tilt_pairing = {3, 3, 0, 0, 0, 3};
  return layout;
}

RotorLayout RotorLayout::with_failure(int rotor_index) const {
  if (rotor_index < 0 || rotor_index > 5) {
    throw std::invalid_argument("RotorLayout::with_failure: rotor index out of range");
  }
  RotorLayout out = *this;
  out.failed = rotor_index;
  return out;
}

Vec3 RotorLayout::effective_axis(int i) const {
  const RotorSpec& r = rotors[static_cast<std::size_t>(i)];
  if (!tilted[static_cast<std::size_t>(i)]) {
    return r.axis;
  }
  const double radial_norm = r.position.head<2>().norm();
  if (radial_norm < 1e-12) {
    return r.axis;
  }
  Vec3 arm = r.position;
  arm.z() = 0.0;
  arm /= arm.norm();
  return Eigen::AngleAxisd(r.tilt_angle, arm).toRotationMatrix() * r.axis;
}

AllocationMatrix build_allocation(const RotorLayout& layout) {
  AllocationMatrix alloc;
  alloc.failed = layout.failed;
  for (int i = 0; i < 6; ++i) {
    if (i == layout.failed) {
      continue;  // column stays zero
    }
    const RotorSpec& r = layout.rotors[static_cast<std::size_t>(i)];
    const Vec3 n = layout.effective_axis(i);
    const Vec3 torque_col = r.position.cross(r.thrust_coeff * n) + r.spin * r.drag_coeff * n;
    alloc.a.block<3, 1>(0, i) = torque_col;
    alloc.a(3, i) = r.thrust_coeff * n.z();
  }

  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(
      alloc.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  alloc.min_singular_value = sv(3);
  alloc.full_rank = sv(3) > 1e-9 * sv(0);
  if (alloc.full_rank) {
    Eigen::Matrix<double, 6, 4> v_sig = Eigen::Matrix<double, 6, 4>::Zero();
    for (int k = 0; k < 4; ++k) {
      v_sig.col(k) = svd.matrixV().col(k) / sv(k);
    }
    alloc.pinv = v_sig * svd.matrixU().transpose();
  }
  return alloc;
}

PwmCommand allocate(const AllocationMatrix& alloc, const Vec3& torque_cmd, double f_z) {
  if (!alloc.full_rank) {
    throw AllocationError("allocate: allocation matrix is rank-deficient");
  }
  Vec4 w;
  w << torque_cmd, f_z;
  PwmCommand cmd;
  cmd.preclamp = alloc.pinv * w;
  if (alloc.failed >= 0) {
    cmd.preclamp(alloc.failed) = 0.0;
  }
  for (int i = 0; i < 6; ++i) {
    double u = cmd.preclamp(i);
    if (u < 0.0) {
      u = 0.0;
      cmd.saturated[static_cast<std::size_t>(i)] = true;
    } else if (u > 100.0) {
      u = 100.0;
      cmd.saturated[static_cast<std::size_t>(i)] = true;
    }
    cmd.pwm(i) = u;
  }
  if (alloc.failed >= 0) {
    cmd.pwm(alloc.failed) = 0.0;
  }
  return cmd;
}

std::pair<RotorLayout, AllocationMatrix> reconfigure(const RotorLayout& layout,
                                                     int failed_index) {
  if (failed_index < 0 || failed_index > 5) {
    throw std::invalid_argument("reconfigure: rotor index out of range");
  }
  if (layout.failed >= 0 && layout.failed != failed_index) {
    throw AllocationError("reconfigure: second rotor failure is unsupported");
  }
  RotorLayout out = layout;
  out.failed = failed_index;
  const int tilt_target = layout.tilt_pairing[static_cast<std::size_t>(failed_index)];
  if (tilt_target >= 0 && tilt_target <= 5 && tilt_target != failed_index &&
      layout.rotors[static_cast<std::size_t>(tilt_target)].tiltable) {
    out.tilted[static_cast<std::size_t>(tilt_target)] = true;
  }
  return {out, build_allocation(out)};
}

namespace {

// Exact feasibility of {u in [0,100]^6 : A u = w} for rank-4 A via the 2-D
// nullspace: the set {nu : 0 <= u_p + N nu <= 100} is a bounded polygon cut by
// 12 half-planes; it is nonempty iff nu = 0 is inside or some pairwise
// boundary intersection satisfies all constraints.
struct NullspaceGeometry {
  Vec6 particular = Vec6::Zero();
  Eigen::Matrix<double, 6, 2> basis = Eigen::Matrix<double, 6, 2>::Zero();
  bool two_dim = false;
};

NullspaceGeometry nullspace_geometry(const AllocationMatrix& alloc, const Vec4& w) {
  NullspaceGeometry g;
  g.particular = alloc.pinv * w;
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 6>> svd(
      alloc.a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  g.basis.col(0) = svd.matrixV().col(4);
  g.basis.col(1) = svd.matrixV().col(5);
  g.two_dim = svd.singularValues()(3) > 1e-9 * svd.singularValues()(0);
  return g;
}

bool polygon_feasible(const NullspaceGeometry& g, double tol = 1e-9) {
  // Half-planes a^T nu <= b: rows for u_i <= 100 and -u_i <= 0.
  Eigen::Matrix<double, 12, 2> a;
  Eigen::Matrix<double, 12, 1> b;
  for (int i = 0; i < 6; ++i) {
    a.row(2 * i) = g.basis.row(i);
    b(2 * i) = 100.0 - g.particular(i);
    a.row(2 * i + 1) = -g.basis.row(i);
    b(2 * i + 1) = g.particular(i);
  }
  const auto satisfied = [&](const Eigen::Vector2d& nu) {
    return ((a * nu - b).array() <= tol).all();
  };
  if (satisfied(Eigen::Vector2d::Zero())) {
    return true;
  }
  for (int i = 0; i < 12; ++i) {
    for (int j = i + 1; j < 12; ++j) {
      Eigen::Matrix2d m;
      m.row(0) = a.row(i);
      m.row(1) = a.row(j);
      const double det = m.determinant();
      if (std::abs(det) < 1e-14) {
        continue;
      }
      const Eigen::Vector2d nu = m.inverse() * Eigen::Vector2d(b(i), b(j));
      if (satisfied(nu)) {
        return true;
      }
    }
  }
  return false;
}

// Conservative fallback when the nullspace is not exactly two-dimensional.
bool pinv_clamp_feasible(const AllocationMatrix& alloc, const Vec4& w, double tol = 1e-7) {
  const Vec6 u = alloc.pinv * w;
  return (u.array() >= -tol).all() && (u.array() <= 100.0 + tol).all();
}

}  // namespace

EnvelopeResult torque_envelope(const AllocationMatrix& alloc, double f_z_nominal,
                               const Vec3& direction) {
  if (!alloc.full_rank) {
    throw AllocationError("torque_envelope: allocation matrix is rank-deficient");
  }
  if (std::abs(direction.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("torque_envelope: direction must be unit length");
  }

  const auto feasible = [&](double alpha) {
    Vec4 w;
    w << alpha * direction, f_z_nominal;
    const NullspaceGeometry g = nullspace_geometry(alloc, w);
    if (!g.two_dim) {
      return pinv_clamp_feasible(alloc, w);
    }
    return polygon_feasible(g);
  };

  EnvelopeResult result;
  result.method = "nullspace-polytope";
  if (!feasible(0.0)) {
    result.feasible_at_zero = false;
    result.max_torque = 0.0;
    return result;
  }

  double lo = 0.0;
  double hi = 0.1;
  while (feasible(hi) && hi < 1e3) {
    lo = hi;
    hi *= 2.0;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  result.max_torque = lo;
  return result;
}

Wrench plant_wrench(const RotorLayout& layout, const Vec6& pwm, PwmThrustModel model) {
  Wrench w;
  for (int i = 0; i < 6; ++i) {
    if (i == layout.failed) {
      continue;
    }
    const RotorSpec& r = layout.rotors[static_cast<std::size_t>(i)];
    const double u = pwm(i);
    double thrust = r.thrust_coeff * u;
    if (model == PwmThrustModel::kQuadratic) {
      thrust = r.thrust_coeff * (0.6 * u + 0.4 * u * u / 100.0);
    }
    const Vec3 n = layout.effective_axis(i);
    const Vec3 force = thrust * n;
    w.force += force;
    w.torque += r.position.cross(force) + r.spin * (r.drag_coeff / r.thrust_coeff) * thrust * n;
  }
  return w;
}

}  // namespace fthex
