#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace erpic {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Fixed-order pairwise summation. Deterministic for a given length and
/// keeps the rounding error at O(log n) ulps, which the per-step energy
/// bookkeeping relies on.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// Canonical periodic representative of x in [lo, lo + len).
inline double wrap_periodic(double x, double lo, double len) {
  double r = std::fmod(x - lo, len);
  if (r < 0.0) r += len;
  if (r >= len) r = 0.0;  // fmod can land exactly on len after the += above
  return lo + r;
}

}  // namespace erpic
