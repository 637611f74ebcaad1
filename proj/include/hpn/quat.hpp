// Quaternion scalar type. Everything downstream treats H^{n+1} as a RIGHT
// H-module: vectors multiply by scalars on the right, matrices act from the
// left. The component order (w, x, y, z) is fixed; it is also the memory
// layout the SIMD kernels assume.
#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace hpn {

using Cd = std::complex<double>;

struct alignas(32) Quat {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  constexpr Quat() = default;
  constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quat one() { return {1, 0, 0, 0}; }
  static constexpr Quat i() { return {0, 1, 0, 0}; }
  static constexpr Quat j() { return {0, 0, 1, 0}; }
  static constexpr Quat k() { return {0, 0, 0, 1}; }

  // C = span{1, i} inside H; complex scalars act through this embedding.
  static constexpr Quat from_complex(std::complex<double> c) { return {c.real(), c.imag(), 0, 0}; }

  constexpr Quat conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr double re() const { return w; }
  constexpr Quat im() const { return {0, x, y, z}; }

  Quat inv() const {
    double n2 = norm2();
    return {w / n2, -x / n2, -y / n2, -z / n2};
  }

  constexpr Quat& operator+=(const Quat& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quat& operator-=(const Quat& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quat& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr Quat operator+(Quat a, const Quat& b) { return a += b; }
  friend constexpr Quat operator-(Quat a, const Quat& b) { return a -= b; }
  friend constexpr Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
  friend constexpr Quat operator*(Quat a, double s) { return a *= s; }
  friend constexpr Quat operator*(double s, Quat a) { return a *= s; }
  friend constexpr Quat operator/(Quat a, double s) { return a *= (1.0 / s); }

  // Hamilton product. The association order is load-bearing: the AVX2 kernel
  // evaluates ((t0 +- t1) +- t2) +- t3 per lane and must agree bitwise.
  friend constexpr Quat operator*(const Quat& a, const Quat& b) {
    return {((a.w * b.w - a.x * b.x) - a.y * b.y) - a.z * b.z,
            ((a.w * b.x + a.x * b.w) + a.y * b.z) - a.z * b.y,
            ((a.w * b.y - a.x * b.z) + a.y * b.w) + a.z * b.x,
            ((a.w * b.z + a.x * b.y) - a.y * b.x) + a.z * b.w};
  }

  friend constexpr bool operator==(const Quat& a, const Quat& b) {
    return a.w == b.w && a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

inline std::complex<double> to_complex(const Quat& q) { return {q.w, q.x}; }

// Nearest unit imaginary quaternion; the square root of -1 closest to q.
inline Quat unit_imaginary(const Quat& q) {
  Quat m = q.im();
  double n = m.norm();
  return m / n;
}

std::ostream& operator<<(std::ostream& os, const Quat& q);

}  // namespace hpn
