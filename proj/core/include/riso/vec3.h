// Copyright 2026 The RISO Sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISO_VEC3_H_
#define RISO_VEC3_H_

#include <cmath>

namespace riso {

// World-frame 3-D vector (m, m/s, ...). z points up; the table is z = 0.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }

constexpr double Dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline double Norm(const Vec3& a) { return std::sqrt(Dot(a, a)); }
inline double HorizontalNorm(const Vec3& a) { return std::hypot(a.x, a.y); }
constexpr Vec3 Horizontal(const Vec3& a) { return {a.x, a.y, 0.0}; }

// Scales `v` down so that |v| <= max_norm. Directions are preserved.
inline Vec3 ClampNorm(const Vec3& v, double max_norm) {
  const double n = Norm(v);
  if (n <= max_norm || n == 0.0) return v;
  return v * (max_norm / n);
}

}  // namespace riso

#endif  // RISO_VEC3_H_
