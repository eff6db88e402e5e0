#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>

#include "qhr/error.hpp"
#include "qhr/reversers.hpp"

namespace qhr {

namespace {

constexpr std::array<Quaternion, 4> kBasis{Quaternion(1.0), Quaternion::unit_i(),
                                           Quaternion::unit_j(), Quaternion::unit_k()};

Eigen::Vector4d as_vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }

template <int N>
void require_rotation(const Eigen::Matrix<double, N, N>& r, double tol) {
  const double orth = (r.transpose() * r - Eigen::Matrix<double, N, N>::Identity()).cwiseAbs().maxCoeff();
  if (!std::isfinite(orth) || orth > std::max(tol, 1e-9) * 10.0 || r.determinant() <= 0.0) {
    throw Error(ErrorKind::NotRotation, "matrix is not a proper rotation");
  }
}

// Sign with the first component of magnitude > 1e-12 positive.
Quaternion canonical_sign(const Quaternion& q) {
  for (double c : {q.w, q.x, q.y, q.z}) {
    if (std::abs(c) > 1e-12) return c < 0 ? -q : q;
  }
  return q;
}

template <int N>
double triple_residual(const RotationTriple<N>& t, const Eigen::Matrix<double, N, N>& r1,
                       const Eigen::Matrix<double, N, N>& r2) {
  using M = Eigen::Matrix<double, N, N>;
  double res = std::max((t.inv[0] * t.inv[1] - r1).cwiseAbs().maxCoeff(),
                        (t.inv[0] * t.inv[2] - r2).cwiseAbs().maxCoeff());
  for (const M& m : t.inv) res = std::max(res, (m * m - M::Identity()).cwiseAbs().maxCoeff());
  return res;
}

}  // namespace

Rot3 rotation3(const Quaternion& q) {
  Rot3 r;
  for (int c = 0; c < 3; ++c) {
    const Quaternion img = q * kBasis[c + 1] * q.conj();
    r.col(c) << img.x, img.y, img.z;
  }
  return r;
}

Quaternion lift_rotation3(const Rot3& r, double tol) {
  require_rotation<3>(r, tol);
  const Eigen::Quaterniond e(r);
  const Quaternion q = canonical_sign(Quaternion(e.w(), e.x(), e.y(), e.z()).normalized());
  if ((rotation3(q) - r).cwiseAbs().maxCoeff() > std::max(tol, 1e-9) * 10.0) {
    throw Error(ErrorKind::NotRotation, "rotation lift does not reproduce the matrix");
  }
  return q;
}

Rot4 rotation4(const Quaternion& p, const Quaternion& q) {
  Rot4 r;
  for (int c = 0; c < 4; ++c) r.col(c) = as_vec(p * kBasis[c] * q.conj());
  return r;
}

std::pair<Quaternion, Quaternion> so4_factor(const Rot4& r, double tol) {
  require_rotation<4>(r, tol);
  // Coordinates of r against x ↦ e_a·x·conj(e_b); for r = (p, q) this is p·qᵀ.
  Eigen::Matrix4d assoc;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      assoc(a, b) = r.cwiseProduct(rotation4(kBasis[a], kBasis[b])).sum() / 4.0;
    }
  }
  Eigen::Index row = 0;
  assoc.rowwise().norm().maxCoeff(&row);
  const Eigen::Vector4d qv = assoc.row(row).transpose().normalized();
  const Eigen::Vector4d pv = assoc * qv;
  Quaternion q(qv(0), qv(1), qv(2), qv(3));
  Quaternion p(pv(0), pv(1), pv(2), pv(3));
  const Quaternion qc = canonical_sign(q);
  if (!(qc == q)) {
    q = qc;
    p = -p;
  }
  if (std::abs(p.norm() - 1.0) > 1e-6) {
    throw Error(ErrorKind::FactorizationFailure, "left factor is not a unit quaternion");
  }
  p = p.normalized();
  if ((rotation4(p, q) - r).cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorKind::FactorizationFailure, "factorization residual above tolerance");
  }
  return {p, q};
}

RotationTriple<3> sdr_so3(const Rot3& r1, const Rot3& r2, double tol) {
  const Quaternion p1 = lift_rotation3(r1, tol);
  const Quaternion p2 = lift_rotation3(r2, tol);
  const Quaternion u = sdr_sp1(p1, p2);
  RotationTriple<3> t;
  t.inv = {rotation3(-u), rotation3(u * p1), rotation3(u * p2)};
  t.residual = triple_residual(t, r1, r2);
  return t;
}

RotationTriple<4> sdr_so4(const Rot4& r1, const Rot4& r2, double tol) {
  const auto [p1, q1] = so4_factor(r1, tol);
  const auto [p2, q2] = so4_factor(r2, tol);
  const Quaternion u = sdr_sp1(p1, p2);
  const Quaternion v = sdr_sp1(q1, q2);
  RotationTriple<4> t;
  t.inv = {rotation4(-u, -v), rotation4(u * p1, v * q1), rotation4(u * p2, v * q2)};
  t.residual = triple_residual(t, r1, r2);
  return t;
}

}  // namespace qhr
