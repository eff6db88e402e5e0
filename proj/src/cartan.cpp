#include "qhr/cartan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qhr/error.hpp"

namespace qhr {

namespace {

constexpr double kSamePointTol = 1e-8;
constexpr double kZeroTripleTol = 1e-12;

void require_distinct(std::initializer_list<const BoundaryPoint*> pts, ErrorKind kind) {
  for (auto a = pts.begin(); a != pts.end(); ++a) {
    for (auto b = std::next(a); b != pts.end(); ++b) {
      if (same_point(**a, **b, kSamePointTol)) {
        throw Error(kind, "boundary points coincide");
      }
    }
  }
}

}  // namespace

// Factors are taken in the order ⟨z3,z1⟩⟨z2,z3⟩⟨z1,z2⟩. With ⟨zλ, wμ⟩ = μ̄⟨z,w⟩λ,
// rescaling the lifts then changes the product by |λ2|²|λ3|²·λ̄1(·)λ1, a
// similarity, so Re(H)/|H| does not depend on the lifts.
Quaternion hermitian_triple_lifts(const HermitianSpace& space, const QMatrix& z1,
                                  const QMatrix& z2, const QMatrix& z3) {
  return hermitian_product(space, z3, z1) * hermitian_product(space, z2, z3) *
         hermitian_product(space, z1, z2);
}

Quaternion hermitian_triple(const HermitianSpace& space, const BoundaryPoint& p1,
                            const BoundaryPoint& p2, const BoundaryPoint& p3) {
  require_distinct({&p1, &p2, &p3}, ErrorKind::DegenerateTriple);
  return hermitian_triple_lifts(space, p1.lift, p2.lift, p3.lift);
}

CartanValue cartan_from_triple(const Quaternion& h) {
  const double mag = h.norm();
  if (mag < kZeroTripleTol) throw Error(ErrorKind::ZeroTriple, "triple product vanishes");
  const double c = std::clamp(-h.w / mag, -1.0, 1.0);
  // Values past π/2 only arise from rounding on the boundary.
  return {std::min(std::acos(c), std::numbers::pi / 2), h};
}

CartanValue cartan_invariant(const HermitianSpace& space, const BoundaryPoint& p1,
                             const BoundaryPoint& p2, const BoundaryPoint& p3) {
  return cartan_from_triple(hermitian_triple(space, p1, p2, p3));
}

QMatrix interchanging_skew_involution(const HermitianSpace& space, const BoundaryPoint& aA,
                                      const BoundaryPoint& rA, const BoundaryPoint& aB,
                                      const BoundaryPoint& rB, double tol) {
  if (space.form() != Form::H1 || space.n() != 1) {
    throw Error(ErrorKind::PreconditionViolated, "defined for the H1 model with n = 1");
  }
  require_distinct({&aA, &rA, &aB, &rB}, ErrorKind::DegenerateConfiguration);

  const double angle_a = cartan_invariant(space, aA, rA, aB).angle;
  const double angle_b = cartan_invariant(space, rA, aA, rB).angle;
  if (std::abs(angle_a - angle_b) > tol) {
    throw Error(ErrorKind::InvariantMismatch, "angular invariants differ");
  }

  // Basis change taking ∞ to rA and o to aA, gauged by ⟨aA, rA⟩ = 1.
  const Quaternion h = hermitian_product(space, aA.lift, rA.lift);
  QMatrix g(2, 2);
  g.set_col(0, rA.lift * h.inverse().conj());
  g.set_col(1, aA.lift);
  const QMatrix g_inv = group_inverse(space, g, 1e-7);

  auto finite_coordinate = [&](const BoundaryPoint& p) {
    const QMatrix v = g_inv * p.lift;
    const double nv = vector_norm(v);
    if (v[1].norm() <= 1e-10 * nv || v[0].norm() <= 1e-10 * nv) {
      throw Error(ErrorKind::DegenerateConfiguration, "point collides with a fixed point of A");
    }
    return v[0] * v[1].inverse();
  };
  const Quaternion r1 = finite_coordinate(aB);
  const Quaternion s1 = finite_coordinate(rB);
  const double k = r1.norm() * s1.norm();

  // μ·r1⁻¹·conj(μ) = s1/k; both sides are pure of modulus 1/|r1|.
  const Quaternion mu =
      solve_reflection_axis(s1.vector_part().normalized(), r1.inverse().vector_part().normalized());
  const double rk = std::sqrt(k);
  const QMatrix c_std{{0.0, mu * rk}, {mu / rk, 0.0}};
  const QMatrix c = g * c_std * g_inv;

  const double scale = std::max(1.0, max_norm(c));
  if (max_distance(c * c, -QMatrix::identity(2)) > 1e-9 * scale * scale) {
    throw Error(ErrorKind::ConvergenceFailure, "constructed involution does not square to -I");
  }
  auto swaps = [&](const BoundaryPoint& p, const BoundaryPoint& q) {
    return same_point(apply(space, c, p), q, kSamePointTol * scale);
  };
  if (!swaps(aA, rA) || !swaps(rA, aA) || !swaps(aB, rB) || !swaps(rB, aB)) {
    throw Error(ErrorKind::ConvergenceFailure, "constructed involution does not swap the pairs");
  }
  return c;
}

}  // namespace qhr
