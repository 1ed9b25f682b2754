#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace squeeze {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Column vector over the (alpha, alpha*) components.
struct Vec2 {
  Complex x{};
  Complex y{};

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Complex s, const Vec2& a) { return {s * a.x, s * a.y}; }
};

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<Complex, 4> a{};

  static Mat2 identity() { return {{Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}}; }
  static Mat2 zero() { return {}; }

  Complex& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }

  Mat2 adjoint() const { return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}}; }
  Complex trace() const { return a[0] + a[3]; }
  Complex det() const { return a[0] * a[3] - a[1] * a[2]; }

  friend Mat2 operator+(const Mat2& l, const Mat2& r) {
    return {{l.a[0] + r.a[0], l.a[1] + r.a[1], l.a[2] + r.a[2], l.a[3] + r.a[3]}};
  }
  friend Mat2 operator-(const Mat2& l, const Mat2& r) {
    return {{l.a[0] - r.a[0], l.a[1] - r.a[1], l.a[2] - r.a[2], l.a[3] - r.a[3]}};
  }
  friend Mat2 operator*(double s, const Mat2& m) { return {{s * m.a[0], s * m.a[1], s * m.a[2], s * m.a[3]}}; }
  friend Mat2 operator*(Complex s, const Mat2& m) { return {{s * m.a[0], s * m.a[1], s * m.a[2], s * m.a[3]}}; }
  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {{l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
             l.a[2] * r.a[0] + l.a[3] * r.a[2], l.a[2] * r.a[1] + l.a[3] * r.a[3]}};
  }
  friend Vec2 operator*(const Mat2& m, const Vec2& v) {
    return {m.a[0] * v.x + m.a[1] * v.y, m.a[2] * v.x + m.a[3] * v.y};
  }
};

/// Largest entry-wise modulus of the difference.
inline double max_abs_diff(const Mat2& l, const Mat2& r) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(l.a[i] - r.a[i]));
  return m;
}

}  // namespace squeeze
