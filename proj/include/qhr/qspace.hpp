#pragma once

/**
 * @file qspace.hpp
 * @brief Quaternionic Hermitian spaces, the groups preserving them, their
 *        Lie algebras, and boundary points of quaternionic hyperbolic space.
 *
 * Vectors are columns in the right ℍ-module convention: scalars act on the
 * right and ⟨z, w⟩ = w*·G·z, so ⟨zλ, w⟩ = ⟨z, w⟩λ.
 *
 * Forms:
 *   H1       anti-diagonal  [[0,0,1],[0,I,0],[1,0,0]]  on ℍ^{n+1}
 *   H0       diag(-1, 1, …, 1)                          on ℍ^{n+1}
 *   Compact  identity                                   on ℍ^{n}   (Sp(n))
 */

#include <string>
#include <string_view>
#include <vector>

#include "qhr/qmatrix.hpp"

namespace qhr {

enum class Form { H1, H0, Compact };

std::string_view to_string(Form form);
Form parse_form(std::string_view tag);

class HermitianSpace {
 public:
  static HermitianSpace h1(int n);
  static HermitianSpace h0(int n);
  static HermitianSpace compact(int n);
  static HermitianSpace make(Form form, int n);

  int n() const { return n_; }
  Form form() const { return form_; }
  /// Size of the square matrices acting on the space.
  std::size_t dim() const { return gram_.rows(); }
  const QMatrix& gram() const { return gram_; }
  bool indefinite() const { return form_ != Form::Compact; }

 private:
  HermitianSpace(int n, Form form, QMatrix gram) : n_(n), form_(form), gram_(std::move(gram)) {}

  int n_;
  Form form_;
  QMatrix gram_;
};

/// ⟨z, w⟩ = adj(w)·G·z.
Quaternion hermitian_product(const HermitianSpace& space, const QMatrix& z, const QMatrix& w);

/// ‖adj(M)·G·M − G‖ (max-entry norm).
double membership_residual(const HermitianSpace& space, const QMatrix& m);
bool is_group_member(const HermitianSpace& space, const QMatrix& m, double tol = kConstructionTol);

/// G⁻¹·adj(M)·G. Throws NotGroupMember.
QMatrix group_inverse(const HermitianSpace& space, const QMatrix& m, double tol = kConstructionTol);

/// Real basis of {X : adj(X)·G + G·X = 0}, orthonormal in flatten() coordinates.
std::vector<QMatrix> lie_algebra_basis(const HermitianSpace& space, double rank_factor = 1e-12);

struct LieDims {
  int total = 0;
  int plus_one = 0;
  int minus_one = 0;
  friend bool operator==(const LieDims&, const LieDims&) = default;
};

/// ±1 eigenspace dimensions of Ad(s) on the Lie algebra; s² = ±I required.
LieDims ad_eigenspace_dims(const HermitianSpace& space, const QMatrix& s,
                           double tol = kConstructionTol);
/// Same for 𝔰𝔭(n) = {X : adj(X) + X = 0}.
LieDims compact_ad_dims(int n, const QMatrix& s, double tol = kConstructionTol);

/**
 * A point of the boundary sphere, stored through its standard lift: last
 * coordinate 1, or, for points with vanishing last coordinate (∞ in the H1
 * model), first coordinate 1.
 */
struct BoundaryPoint {
  QMatrix lift;
  bool at_infinity = false;
};

/// Normalises a null vector; InvalidLift if v is zero or not null.
BoundaryPoint boundary_point(const HermitianSpace& space, const QMatrix& v,
                             double tol = kConstructionTol);
BoundaryPoint infinity_point(const HermitianSpace& space);
BoundaryPoint origin_point(const HermitianSpace& space);
bool same_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = 1e-8);
/// Projective action g·p.
BoundaryPoint apply(const HermitianSpace& space, const QMatrix& g, const BoundaryPoint& p,
                    double tol = 1e-7);

/// Sign of ⟨z, z⟩: -1 (V₋), 0 (V₀), +1 (V₊), relative to |z|².
int norm_sign(const HermitianSpace& space, const QMatrix& z, double rel_tol = 1e-8);

/// Change of basis T with adj(T)·H0·T = H1 (mixes the first and last coordinates).
QMatrix h1_to_h0(int n);

}  // namespace qhr
