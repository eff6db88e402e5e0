#pragma once

/**
 * @file cartan.hpp
 * @brief Hermitian triple products of boundary points, Cartan's angular
 *        invariant, and the skew-involution swapping two pairs of boundary
 *        points in the rank-one (n = 1) model.
 */

#include "qhr/qspace.hpp"

namespace qhr {

struct CartanValue {
  double angle = 0.0;  // in [0, π/2]
  Quaternion triple;   // the product H the angle was read from
};

/// Triple product of the three pairings on the stored lifts. Throws DegenerateTriple.
Quaternion hermitian_triple(const HermitianSpace& space, const BoundaryPoint& p1,
                            const BoundaryPoint& p2, const BoundaryPoint& p3);

/// Same product on caller-supplied lifts (used to test lift independence).
Quaternion hermitian_triple_lifts(const HermitianSpace& space, const QMatrix& z1,
                                  const QMatrix& z2, const QMatrix& z3);

/// arccos(Re(-H)/|H|). Throws DegenerateTriple or ZeroTriple (|H| < 1e-12).
CartanValue cartan_invariant(const HermitianSpace& space, const BoundaryPoint& p1,
                             const BoundaryPoint& p2, const BoundaryPoint& p3);
CartanValue cartan_from_triple(const Quaternion& h);

/**
 * C with C² = -I in Sp(1,1) swapping aA ↔ rA and aB ↔ rB. H1, n = 1 only.
 * Throws InvariantMismatch when the angles A(aA, rA, aB) and A(rA, aA, rB)
 * differ by more than tol, DegenerateConfiguration when points collide.
 */
QMatrix interchanging_skew_involution(const HermitianSpace& space, const BoundaryPoint& aA,
                                      const BoundaryPoint& rA, const BoundaryPoint& aB,
                                      const BoundaryPoint& rB, double tol = 1e-8);

}  // namespace qhr
