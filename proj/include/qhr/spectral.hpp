#pragma once

/**
 * @file spectral.hpp
 * @brief Right eigenvalues of quaternionic matrices, the
 *        hyperbolic / elliptic / parabolic trichotomy, and the hyperbolic
 *        normal form A = C_A·E_A·C_A⁻¹.
 *
 * Right eigenpairs (A·v = v·λ) are read off the complex adjoint, whose
 * spectrum is closed under conjugation; each similarity class [λ] is
 * reported through its representative with non-negative imaginary part.
 */

#include <optional>
#include <string_view>
#include <vector>

#include "qhr/qspace.hpp"

namespace qhr {

/// Unit-modulus band: |modulus - 1| <= this counts as modulus one.
inline constexpr double kModulusBand = 1e-7;

enum class NormSign { Negative, Zero, Positive };

struct EigenPair {
  EigenvalueClass cls;
  QMatrix vector;  // unit Euclidean norm
  NormSign herm_norm_sign = NormSign::Positive;
};

/// Eigenvalue classes with multiplicity (rows() of them), sorted by (modulus, arg).
std::vector<EigenvalueClass> eigenvalue_classes(const QMatrix& m);

/// Right eigenpairs; signs are taken in the compact (identity) form.
std::vector<EigenPair> right_eigen(const QMatrix& m);
/// Right eigenpairs with signs taken in the given form.
std::vector<EigenPair> right_eigen(const HermitianSpace& space, const QMatrix& m);

struct HyperbolicData {
  double r = 0.0;      // in (0, 1)
  double theta = 0.0;  // in [0, π]
  std::vector<double> phis;
  BoundaryPoint attracting;  // eigenvalue r⁻¹e^{iθ}
  BoundaryPoint repelling;   // eigenvalue r e^{iθ}
  // Columns: repelling lift, unit positive eigenvectors, attracting lift,
  // with ⟨attracting, repelling⟩ = 1. For the H0 model C_A maps the H1 model
  // onto the H0 one.
  QMatrix C_A;
  QMatrix E_A;  // diag(re^{iθ}, e^{iφ₁}, …, r⁻¹e^{iθ})
  double residual = 0.0;  // max |C_A E_A C_A⁻¹ - A|
};

enum class Verdict { Hyperbolic, Elliptic, Parabolic };
std::string_view to_string(Verdict v);

struct IsometryReport {
  Verdict verdict = Verdict::Parabolic;
  std::optional<HyperbolicData> hyperbolic;
  std::vector<EigenPair> eigen;
};

/// Throws NotGroupMember.
IsometryReport classify(const HermitianSpace& space, const QMatrix& m,
                        double tol = kConstructionTol);

/// Throws NotHyperbolic.
HyperbolicData hyperbolic_normal_form(const HermitianSpace& space, const QMatrix& a,
                                      double tol = kConstructionTol);

/// True if some eigenvalue class has modulus off the unit band.
bool is_hyperbolic(const QMatrix& m);

/// Same similarity classes of eigenvalues (both must be hyperbolic).
bool are_conjugate_hyperbolic(const QMatrix& a, const QMatrix& b, double tol = 1e-8);

}  // namespace qhr
