#pragma once

/**
 * @file quat.hpp
 * @brief Hamilton quaternions and the scalar solvers built on them.
 *
 * q = w + xi + yj + zk with i² = j² = k² = ijk = -1. A quaternion also
 * splits as q = c1 + c2·j with c1 = w + xi and c2 = y + zi; since
 * j·c = conj(c)·j for complex c, this split is what makes the complex
 * representation of quaternionic matrices work.
 */

#include <complex>
#include <ostream>

namespace qhr {

using Complex = std::complex<double>;

/// Residual tolerance for constructed objects (witnesses, eigenvectors).
inline constexpr double kConstructionTol = 1e-9;
/// Tolerance for algebraic identities on well-conditioned inputs.
inline constexpr double kIdentityTol = 1e-12;

struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}
  // Embeds a + bi along the (1, i) plane.
  constexpr Quaternion(Complex c) : w(c.real()), x(c.imag()) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double real() const { return w; }
  constexpr Quaternion vector_part() const { return {0.0, x, y, z}; }
  constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
  double norm() const;
  double vector_norm() const;
  Quaternion inverse() const;
  Quaternion normalized() const;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s; x *= s; y *= s; z *= s;
    return *this;
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) { return p * q; }

/// Euclidean inner product on R⁴.
constexpr double dot4(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// |a - b|
double distance(const Quaternion& a, const Quaternion& b);

/// e^{iθ} as a quaternion.
Quaternion expi(double theta);
/// e^{uθ} = cos θ + u sin θ for a unit pure quaternion u.
Quaternion exp_axis(const Quaternion& axis, double theta);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// q = c1 + c2·j.
struct ComplexSplit {
  Complex c1;
  Complex c2;
};

ComplexSplit split(const Quaternion& q);
Quaternion join(const ComplexSplit& s);
inline Quaternion join(Complex c1, Complex c2) { return join(ComplexSplit{c1, c2}); }

/// The complex representative of a similarity class [λ].
struct EigenvalueClass {
  Complex rep;     // imag(rep) >= 0
  double modulus;  // |rep|
};

/// Re(q) + |Im(q)|·i. Two quaternions are similar iff their reps agree.
EigenvalueClass similarity_representative(const Quaternion& q);

/// Smallest θ₁ in [0, 2π) with Re(c2·e^{-iθ₁}) = 0; θ₁ = 0 when c2 = 0.
double solve_orthogonal_phase(Complex c2, double tol = kIdentityTol);

/**
 * Unit pure u with u·w·conj(u) = v, for pure v, w of equal modulus.
 *
 * u is the normalised bisector (v + w)/|v + w|. When v = -w the first of
 * {j, k, i} with a non-negligible component orthogonal to v is used.
 * Throws MismatchedModuli or ZeroInput.
 */
Quaternion solve_reflection_axis(const Quaternion& v, const Quaternion& w,
                                 double tol = kConstructionTol);

/// μ·b·conj(μ). Throws NotUnit unless |μ| = 1 within tol.
Quaternion conjugate_by_unit(const Quaternion& mu, const Quaternion& b,
                             double tol = kConstructionTol);

/// Unit s with s·from·s⁻¹ = to, for unit pure axes; the shortest rotation.
Quaternion rotation_between(const Quaternion& from, const Quaternion& to);

}  // namespace qhr
