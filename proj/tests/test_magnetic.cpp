#include <doctest.h>

#include <cmath>

#include "erpic/magnetic.hpp"
#include "erpic/rng.hpp"

using namespace erpic;

TEST_CASE("eval: b0 + eps*b1 for the sinusoidal model") {
  const auto m = MagneticModel::sinusoidal2d(1.0);
  // b1 = 1 + sin(x1)sin(x2)/2
  CHECK(m.eval_scalar({0.0, 0.0}, 0.1) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(m.eval_scalar({M_PI / 2, M_PI / 2}, 0.2) == doctest::Approx(1.3).epsilon(1e-14));
  CHECK(m.eval_scalar({0.7, -1.3}, 0.0) == doctest::Approx(1.0).epsilon(1e-16));
}

TEST_CASE("skew matrix applies as the cross product") {
  const auto z = skew_matrix({0.0, 0.0, 0.0});
  for (const auto& row : z.m) {
    for (double v : row) CHECK(v == 0.0);
  }
  const auto s = skew_matrix({0.0, 0.0, 1.0});
  const Vec3 r = s.apply({1.0, 0.0, 0.0});
  CHECK(r.x == 0.0);
  CHECK(r.y == -1.0);
  CHECK(r.z == 0.0);

  UniformRng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 b{rng.next_in(-2, 2), rng.next_in(-2, 2), rng.next_in(-2, 2)};
    const Vec3 v{rng.next_in(-2, 2), rng.next_in(-2, 2), rng.next_in(-2, 2)};
    const Vec3 lhs = skew_matrix(b).apply(v);
    const Vec3 rhs = cross(v, b);
    CHECK(std::abs(lhs.x - rhs.x) <= 1e-15 * 8.0);
    CHECK(std::abs(lhs.y - rhs.y) <= 1e-15 * 8.0);
    CHECK(std::abs(lhs.z - rhs.z) <= 1e-15 * 8.0);
  }
}

TEST_CASE("rotation solves the cyclotron quarter turn") {
  // dv/dt = v x B with B = e_z turns (1,0,0) into (0,-1,0) after pi/2
  const Vec3 v = rotate_rodrigues({0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, M_PI / 2);
  CHECK(std::abs(v.x - 0.0) <= 1e-14);
  CHECK(std::abs(v.y + 1.0) <= 1e-14);
  CHECK(std::abs(v.z) <= 1e-14);
}

TEST_CASE("rotation with zero angle or zero field is the identity") {
  const auto m = MagneticModel::sinusoidal2d(1.0);
  const Vec2 v = m.rotate_velocity({0.3, 0.4}, {1.5, -2.5}, 0.0, 0.37);
  CHECK(v.x == 1.5);
  CHECK(v.y == -2.5);
  const Vec3 u = rotate_rodrigues({0.0, 0.0, 0.0}, {1.0, 2.0, 3.0}, 5.0);
  CHECK(u.x == 1.0);
  CHECK(u.y == 2.0);
  CHECK(u.z == 3.0);
}

TEST_CASE("rotation preserves speed") {
  UniformRng rng(9);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const Vec3 b{rng.next_in(-3, 3), rng.next_in(-3, 3), rng.next_in(-3, 3)};
    const Vec3 v{rng.next_in(-3, 3), rng.next_in(-3, 3), rng.next_in(-3, 3)};
    const double s = rng.next_in(-5, 5);
    const Vec3 out = rotate_rodrigues(b, v, s);
    worst = std::max(worst, std::abs(norm(out) - norm(v)) / std::max(1e-300, norm(v)));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("rotation angles add: n substeps compose to one step") {
  const auto m = MagneticModel::sinusoidal2d(1.0);
  const Vec2 x{1.1, 0.6};
  const double eps = 0.2;
  const double h = 0.8;
  const Vec2 v0{0.9, -1.7};
  const Vec2 direct = m.rotate_velocity(x, v0, h, eps);
  Vec2 stepped = v0;
  const int n = 16;
  for (int i = 0; i < n; ++i) stepped = m.rotate_velocity(x, stepped, h / n, eps);
  CHECK(std::abs(stepped.x - direct.x) <= 1e-12);
  CHECK(std::abs(stepped.y - direct.y) <= 1e-12);
}

TEST_CASE("2D rotation matches the 3D rotation restricted to the plane") {
  // v_perp = (v2, -v1) corresponds to v x (0,0,b) in the plane
  UniformRng rng(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const double b = rng.next_in(0.1, 3.0);
    const double s = rng.next_in(-2.0, 2.0);
    const Vec2 v{rng.next_in(-2, 2), rng.next_in(-2, 2)};
    const auto m2 = MagneticModel::uniform2d(b);
    const Vec2 planar = m2.rotate_velocity({0, 0}, v, s, 0.0);
    const Vec3 embedded = rotate_rodrigues({0.0, 0.0, b}, {v.x, v.y, 0.0}, s);
    CHECK(std::abs(planar.x - embedded.x) <= 1e-14 * 4.0);
    CHECK(std::abs(planar.y - embedded.y) <= 1e-14 * 4.0);
    CHECK(embedded.z == 0.0);
  }
}

TEST_CASE("constant 3D model evaluates to its base field") {
  const auto m = MagneticModel::constant3d({0.5, -0.25, 2.0});
  const Vec3 b = m.eval_vector({3.0, 4.0}, 0.7);
  CHECK(b.x == 0.5);
  CHECK(b.y == -0.25);
  CHECK(b.z == 2.0);
}
