#include "erpic/magnetic.hpp"

#include <cmath>

#include "erpic/errors.hpp"

namespace erpic {

SkewMatrix3 skew_matrix(Vec3 b) {
  SkewMatrix3 s;
  s.m = {{{0.0, b.z, -b.y}, {-b.z, 0.0, b.x}, {b.y, -b.x, 0.0}}};
  return s;
}

Vec3 rotate_rodrigues(Vec3 b, Vec3 v, double s) {
  const double bn = norm(b);
  if (bn == 0.0) return v;  // exponential of the zero matrix
  const Vec3 axis = (1.0 / bn) * b;
  const double theta = s * bn;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return c * v + sn * cross(v, axis) + ((1.0 - c) * dot(axis, v)) * axis;
}

MagneticModel MagneticModel::uniform2d(double b0) {
  MagneticModel m;
  m.kind_ = Kind::Scalar2D;
  m.builtin_ = Builtin::None;
  m.b0_scalar_ = b0;
  return m;
}

MagneticModel MagneticModel::sinusoidal2d(double b0) {
  MagneticModel m;
  m.kind_ = Kind::Scalar2D;
  m.builtin_ = Builtin::Sinusoidal;
  m.b0_scalar_ = b0;
  return m;
}

MagneticModel MagneticModel::scalar2d(double b0, std::function<double(Vec2)> b1) {
  MagneticModel m;
  m.kind_ = Kind::Scalar2D;
  m.builtin_ = Builtin::None;
  m.b0_scalar_ = b0;
  m.b1_scalar_ = std::move(b1);
  return m;
}

MagneticModel MagneticModel::constant3d(Vec3 b0) {
  MagneticModel m;
  m.kind_ = Kind::Vector3D;
  m.b0_vec_ = b0;
  return m;
}

MagneticModel MagneticModel::vector3d(Vec3 b0, std::function<Vec3(Vec2)> b1) {
  MagneticModel m;
  m.kind_ = Kind::Vector3D;
  m.b0_vec_ = b0;
  m.b1_vec_ = std::move(b1);
  // boundedness probe
  for (double px : {-1.0, 0.0, 1.0, 3.7}) {
    for (double py : {-1.0, 0.0, 2.3}) {
      const Vec3 p = m.b1_vec_({px, py});
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
        throw NumericalError("MagneticModel: perturbation field is not finite on probe points");
      }
    }
  }
  return m;
}

double MagneticModel::eval_scalar(Vec2 x, double eps) const {
  if (kind_ != Kind::Scalar2D) throw NumericalError("MagneticModel: scalar eval on 3D model");
  double b1 = 0.0;
  if (builtin_ == Builtin::Sinusoidal) {
    b1 = 1.0 + 0.5 * std::sin(x.x) * std::sin(x.y);
  } else if (b1_scalar_) {
    b1 = b1_scalar_(x);
    if (!std::isfinite(b1)) {
      throw NumericalError("MagneticModel: perturbation not defined at evaluation point");
    }
  }
  return b0_scalar_ + eps * b1;
}

Vec3 MagneticModel::eval_vector(Vec2 x, double eps) const {
  if (kind_ != Kind::Vector3D) throw NumericalError("MagneticModel: vector eval on 2D model");
  if (!b1_vec_) return b0_vec_;
  return b0_vec_ + eps * b1_vec_(x);
}

Vec2 MagneticModel::rotate_velocity(Vec2 x, Vec2 v, double theta_scale, double eps) const {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(theta_scale)) {
    throw NumericalError("rotate_velocity: non-finite input");
  }
  const double theta = theta_scale * eval_scalar(x, eps);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

Vec3 MagneticModel::rotate_velocity3(Vec2 x, Vec3 v, double theta_scale, double eps) const {
  if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z) ||
      !std::isfinite(theta_scale)) {
    throw NumericalError("rotate_velocity3: non-finite input");
  }
  return rotate_rodrigues(eval_vector(x, eps), v, theta_scale);
}

}  // namespace erpic
