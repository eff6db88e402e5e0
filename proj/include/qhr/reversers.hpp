#pragma once

/**
 * @file reversers.hpp
 * @brief Reversing elements of tuples: the linear reverser space, explicit
 *        strongly-doubly-reversible constructions in Sp(1), SO(3), SO(4),
 *        and decision procedures for hyperbolic pairs in Sp(1,1).
 *
 * A tuple (g1, …, gk) is reversed by C when C·gi·C⁻¹ = gi⁻¹ for every i;
 * it is strongly reversed when C can be taken with C² = ±I.
 */

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qhr/cartan.hpp"
#include "qhr/numeric.hpp"
#include "qhr/spectral.hpp"

namespace qhr {

struct ReverserSpace {
  int ambient_dim = 0;          // 4·m²
  std::vector<QMatrix> basis;   // orthonormal in flatten() coordinates
  int dim = 0;
};

/// Real kernel of X ↦ X·g − g⁻¹·X stacked over all g. Throws DimensionMismatch.
ReverserSpace reverser_space(const std::vector<QMatrix>& gs, double rank_factor = kRankFactor);

struct ReverserWitness {
  QMatrix C;
  int square_sign = -1;        // C² = square_sign·I
  double residual_conj = 0.0;  // max_i |C gi C⁻¹ − gi⁻¹|
  double residual_group = 0.0; // form-preservation residual of C
  double residual_square = 0.0;
};

/// Computes the residuals of C against gs; square_sign is the nearer of ±1.
ReverserWitness make_witness(const HermitianSpace& space, const std::vector<QMatrix>& gs,
                             const QMatrix& c);
/// All residuals within tol, relative to max(1, |C|²·max|gi|).
bool witness_verifies(const ReverserWitness& w, const std::vector<QMatrix>& gs,
                      double tol = kConstructionTol);

/// h1⁻¹·h2 centralizes every gi. Throws NotReverser unless both reverse every gi.
bool reverser_coset_check(const std::vector<QMatrix>& gs, const QMatrix& h1, const QMatrix& h2,
                          double tol = 1e-8);

/// Unit q with q² = −1 reversing both unit quaternions.
Quaternion sdr_sp1(const Quaternion& p1, const Quaternion& p2);
ReverserWitness sdr_sp1_witness(const Quaternion& p1, const Quaternion& p2);

// ---------------------------------------------------------------- rotations

using Rot3 = Eigen::Matrix3d;
using Rot4 = Eigen::Matrix4d;

/// x ↦ q·x·conj(q) on pure quaternions (basis i, j, k).
Rot3 rotation3(const Quaternion& q);
/// Unit lift of a rotation, first nonzero component positive. Throws NotRotation.
Quaternion lift_rotation3(const Rot3& r, double tol = kConstructionTol);

/// x ↦ p·x·conj(q) on ℍ ≅ ℝ⁴ (basis 1, i, j, k).
Rot4 rotation4(const Quaternion& p, const Quaternion& q);
/// Left and right factors of an SO(4) element. Throws NotRotation, FactorizationFailure.
std::pair<Quaternion, Quaternion> so4_factor(const Rot4& r, double tol = kConstructionTol);

template <int N>
struct RotationTriple {
  std::array<Eigen::Matrix<double, N, N>, 3> inv;  // i1, i2, i3
  double residual = 0.0;  // max of |i1 i2 − R1|, |i1 i3 − R2|, |im² − I|
};

RotationTriple<3> sdr_so3(const Rot3& r1, const Rot3& r2, double tol = kConstructionTol);
RotationTriple<4> sdr_so4(const Rot4& r1, const Rot4& r2, double tol = kConstructionTol);

// ------------------------------------------------------- hyperbolic pairs

/// [[0, b·j], [conj(b)⁻¹·j, 0]]. Throws ZeroParameter; PreconditionViolated
/// unless a_normal is diag(r e^{iθ}, r⁻¹ e^{iθ}) with 0 < r < 1.
QMatrix hyperbolic_reverser_family(const QMatrix& a_normal, Complex b);
QMatrix reverser_family_member(Complex b);

/// Checks C reverses A and B (NotReverser) and C² = −I (SquareCheckFailed).
ReverserWitness upgrade_reverser(const HermitianSpace& space, const QMatrix& a, const QMatrix& b,
                                 const QMatrix& c, double tol = 1e-8);

struct SdrVerdict {
  enum class Outcome { Yes, No, Inconclusive };
  Outcome outcome = Outcome::Inconclusive;
  std::optional<ReverserWitness> witness;
  std::string certificate;
  std::vector<std::pair<std::string, double>> quantities;
  std::optional<bool> closed_form_agrees;
  std::optional<Complex> t;
};
std::string_view to_string(SdrVerdict::Outcome o);

/// Hyperbolic A, B in Sp(1,1) sharing a fixed point. Throws PreconditionViolated.
SdrVerdict sdr_hyperbolic_common_fixed(const HermitianSpace& space, const QMatrix& a,
                                       const QMatrix& b, double tol = kConstructionTol);

/// Compares A(aA, rA, aB) with A(rA, aA, rB): No if they differ, else Inconclusive.
/// Throws CommonFixedPoint.
SdrVerdict cartan_necessary_condition(const HermitianSpace& space, const QMatrix& a,
                                      const QMatrix& b, double tol = 1e-8);

/**
 * Existence of a reverser C(t) = [[0, t·j], [conj(t)⁻¹·j, 0]] of B, for
 * A = diag(r e^{iθ}, r⁻¹ e^{iθ}) in the H1 model. B's entries split as
 * h = h1 + h2·j; the conditions are Re(a2·conj t) = Re(d2·conj t) = 0,
 * b1 = |t|²·c1 and b2 = −t²·conj(c2). Throws NotGroupMember.
 */
SdrVerdict sdr_vs_standard_predicate(const QMatrix& b, double r, double theta,
                                     double tol = kConstructionTol);

/// Each factor swaps the two fixed points of A. Throws NotFactorization.
bool fixed_point_permutation_check(const HermitianSpace& space, const QMatrix& a,
                                   const QMatrix& i1, const QMatrix& i2, double tol = 1e-8);

/// Decision for a pair in Sp(n,1): common-fixed-point criterion, the normal-form
/// predicate for hyperbolic A when n = 1, and the reverser-space certificate otherwise.
SdrVerdict sdr_sp11(const HermitianSpace& space, const QMatrix& a, const QMatrix& b,
                    double tol = kConstructionTol);

struct InvolutionTriple {
  QMatrix i1, i2, i3;
  int square_sign = -1;
  double residual = 0.0;
};
/// i1 = C, i2 = sign·C·g1, i3 = sign·C·g2 for a strong reverser C with C² = sign·I.
InvolutionTriple involution_triple(const ReverserWitness& w, const QMatrix& g1, const QMatrix& g2);

}  // namespace qhr
