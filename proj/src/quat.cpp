#include "qhr/quat.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "qhr/error.hpp"

namespace qhr {

double Quaternion::norm() const { return std::sqrt(norm2()); }

double Quaternion::vector_norm() const { return std::sqrt(x * x + y * y + z * z); }

Quaternion Quaternion::inverse() const {
  const double n2 = norm2();
  if (n2 == 0.0) throw Error(ErrorKind::ZeroInput, "inverse of the zero quaternion");
  return conj() / n2;
}

Quaternion Quaternion::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroInput, "normalising the zero quaternion");
  return *this / n;
}

double distance(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

Quaternion expi(double theta) { return {std::cos(theta), std::sin(theta), 0.0, 0.0}; }

Quaternion exp_axis(const Quaternion& axis, double theta) {
  return Quaternion(std::cos(theta)) + axis * std::sin(theta);
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

ComplexSplit split(const Quaternion& q) { return {Complex(q.w, q.x), Complex(q.y, q.z)}; }

Quaternion join(const ComplexSplit& s) {
  return {s.c1.real(), s.c1.imag(), s.c2.real(), s.c2.imag()};
}

EigenvalueClass similarity_representative(const Quaternion& q) {
  const Complex rep(q.w, q.vector_norm());
  return {rep, std::abs(rep)};
}

double solve_orthogonal_phase(Complex c2, double tol) {
  const double mag = std::abs(c2);
  if (mag <= tol) return 0.0;
  // c·cos θ + d·sin θ = 0  ⇔  (cos θ, sin θ) ∥ (-d, c); solutions repeat with period π.
  double theta = std::atan2(c2.real(), -c2.imag());
  theta = std::fmod(theta, std::numbers::pi);
  if (theta < 0.0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  // Snap values a rounding step away from 0 back onto the canonical solution.
  if (std::numbers::pi - theta <= 1e-15) theta = 0.0;
  return theta;
}

Quaternion solve_reflection_axis(const Quaternion& v, const Quaternion& w, double tol) {
  const Quaternion vp = v.vector_part();
  const Quaternion wp = w.vector_part();
  const double nv = vp.norm();
  const double nw = wp.norm();
  if (std::abs(v.w) > tol || std::abs(w.w) > tol) {
    throw Error(ErrorKind::MismatchedModuli, "reflection axis needs pure quaternions");
  }
  if (std::abs(nv - nw) > tol * std::max(1.0, std::max(nv, nw))) {
    throw Error(ErrorKind::MismatchedModuli, "|v| and |w| differ");
  }
  if (nv <= tol && nw <= tol) throw Error(ErrorKind::ZeroInput, "v = w = 0");

  const Quaternion sum = vp + wp;
  const double ns = sum.norm();
  if (ns > 1e-12 * std::max(nv, nw)) return sum / ns;

  // v = -w: any unit axis orthogonal to v works.
  const Quaternion vhat = vp / nv;
  static constexpr std::array<Quaternion, 3> candidates = {
      Quaternion::unit_j(), Quaternion::unit_k(), Quaternion::unit_i()};
  for (const Quaternion& c : candidates) {
    const Quaternion perp = c - vhat * dot4(c, vhat);
    const double np = perp.norm();
    if (np > tol) return perp / np;
  }
  throw Error(ErrorKind::ZeroInput, "no orthogonal axis found");
}

Quaternion conjugate_by_unit(const Quaternion& mu, const Quaternion& b, double tol) {
  if (std::abs(mu.norm() - 1.0) > tol) {
    throw Error(ErrorKind::NotUnit, "conjugating quaternion is not a unit");
  }
  return mu * b * mu.conj();
}

Quaternion rotation_between(const Quaternion& from, const Quaternion& to) {
  const Quaternion a = from.vector_part().normalized();
  const Quaternion b = to.vector_part().normalized();
  // s = normalise(1 + a·b + a×b) = normalise(1 - b·a) rotates a onto b.
  const Quaternion s = Quaternion(1.0) - b * a;
  const double ns = s.norm();
  if (ns > 1e-8) return s / ns;
  // Antipodal: half-turn about an axis orthogonal to a.
  return solve_reflection_axis(a, -a);
}

}  // namespace qhr
