#pragma once

#include <array>
#include <functional>

#include "erpic/math.hpp"

namespace erpic {

/// 3x3 skew-symmetric matrix with rows (0, b3, -b2), (-b3, 0, b1),
/// (b2, -b1, 0), so that apply(v) == cross(v, B).
struct SkewMatrix3 {
  std::array<std::array<double, 3>, 3> m{};
  Vec3 apply(Vec3 v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

SkewMatrix3 skew_matrix(Vec3 b);

/// External magnetic field B(x) = B0 + eps*B1(x). The 2D scalar variant
/// stores b(x) = b0 + eps*b1(x) for planar runs (field along the third
/// axis); the 3D variant stores a full vector field for the Rodrigues
/// rotation path.
class MagneticModel {
public:
  enum class Kind { Scalar2D, Vector3D };

  /// b(x) = b0, no perturbation.
  static MagneticModel uniform2d(double b0);
  /// b(x) = b0 + eps*(1 + sin(x1)sin(x2)/2).
  static MagneticModel sinusoidal2d(double b0 = 1.0);
  /// Arbitrary scalar perturbation.
  static MagneticModel scalar2d(double b0, std::function<double(Vec2)> b1);
  /// Constant 3-vector field.
  static MagneticModel constant3d(Vec3 b0);
  /// B0 + eps*B1(x); B1 is spot-checked for finiteness on a few probes.
  static MagneticModel vector3d(Vec3 b0, std::function<Vec3(Vec2)> b1);

  Kind kind() const { return kind_; }

  /// b0 + eps*b1(x). Scalar2D only.
  double eval_scalar(Vec2 x, double eps) const;
  /// B0 + eps*B1(x). Vector3D only.
  Vec3 eval_vector(Vec2 x, double eps) const;

  /// Exact rotation subflow over one substep with x frozen:
  ///   2D: v <- exp(theta*J) v, theta = theta_scale * b(x),
  ///       J = [[0,1],[-1,0]]  (solves  dv/dt = b(x) * (v2,-v1) ).
  ///   3D: Rodrigues rotation exp(theta_scale * skew(B(x))) v.
  /// |v| is preserved up to rounding; |B|=0 returns v unchanged.
  Vec2 rotate_velocity(Vec2 x, Vec2 v, double theta_scale, double eps) const;
  Vec3 rotate_velocity3(Vec2 x, Vec3 v, double theta_scale, double eps) const;

private:
  Kind kind_ = Kind::Scalar2D;
  enum class Builtin { None, Sinusoidal } builtin_ = Builtin::None;
  double b0_scalar_ = 1.0;
  Vec3 b0_vec_{};
  std::function<double(Vec2)> b1_scalar_;
  std::function<Vec3(Vec2)> b1_vec_;
};

/// Rodrigues rotation of v about axis b by angle s*|b| (identity if |b|=0).
Vec3 rotate_rodrigues(Vec3 b, Vec3 v, double s);

}  // namespace erpic
