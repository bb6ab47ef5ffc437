#include "fthex/se3.hpp"

#include <stdexcept>

namespace fthex {

Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
      -w.y(), w.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m, double tol) {
  if ((m + m.transpose()).norm() > tol) {
    throw std::invalid_argument("vee: matrix is not skew-symmetric");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat4 breve(const BodyTwist& xi) {
  Mat4 m = Mat4::Zero();
  m.topLeftCorner<3, 3>() = hat(xi.omega);
  m.topRightCorner<3, 1>() = xi.v;
  return m;
}

Mat6 d_matrix(const Vec3& omega, const Vec3& v) {
  Mat6 d = Mat6::Zero();
  d.topLeftCorner<3, 3>() = -hat(omega);
  d.topRightCorner<3, 3>() = -hat(v);
  d.bottomRightCorner<3, 3>() = -hat(omega);
  return d;
}

Mat4 pose_matrix(const Mat3& r, const Vec3& p) {
  Mat4 g = Mat4::Identity();
  g.topLeftCorner<3, 3>() = r;
  g.topRightCorner<3, 1>() = p;
  return g;
}

double psi_error(const Mat3& r, const Mat3& rd) {
  return 0.5 * (Mat3::Identity() - rd.transpose() * r).trace();
}

Vec3 chi_error(const Mat3& r, const Mat3& rd) {
  const Mat3 q = rd.transpose() * r;
  // q - q^T is skew by construction; skip the vee() symmetry check.
  const Mat3 m = 0.5 * (q - q.transpose());
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Mat3 reproject(const Mat3& r) {
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double det_uv = (svd.matrixU() * svd.matrixV().transpose()).determinant();
  if (svd.singularValues()(2) <= 0.0 || det_uv <= 0.0) {
    throw std::invalid_argument("reproject: singular or orientation-reversing input");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

double orthogonality_defect(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& r, double tol) {
  return orthogonality_defect(r) <= tol && std::abs(r.determinant() - 1.0) <= tol;
}

}  // namespace fthex
