#pragma once

// Reference computations for tests. They deliberately avoid the library's
// solvers: products go through explicit real 4×4 matrices, reversers are
// found by brute-force search, and kernels by plain SVD.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qhr/qmatrix.hpp"

namespace oracle {

using qhr::Complex;
using qhr::QMatrix;
using qhr::Quaternion;

inline constexpr double kPi = std::numbers::pi;

inline Eigen::Vector4d vec(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
inline Quaternion quat(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

// x ↦ p·x written out from i² = j² = k² = ijk = −1.
inline Eigen::Matrix4d left_matrix(const Quaternion& p) {
  Eigen::Matrix4d m;
  m << p.w, -p.x, -p.y, -p.z,
       p.x,  p.w, -p.z,  p.y,
       p.y,  p.z,  p.w, -p.x,
       p.z, -p.y,  p.x,  p.w;
  return m;
}

// x ↦ x·q.
inline Eigen::Matrix4d right_matrix(const Quaternion& q) {
  Eigen::Matrix4d m;
  m << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w,  q.z, -q.y,
       q.y, -q.z,  q.w,  q.x,
       q.z,  q.y, -q.x,  q.w;
  return m;
}

inline Quaternion mul(const Quaternion& p, const Quaternion& q) {
  return quat(left_matrix(p) * vec(q));
}

inline Quaternion inv(const Quaternion& q) {
  const double n2 = vec(q).squaredNorm();
  return {q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2};
}

inline double dist(const Quaternion& a, const Quaternion& b) { return (vec(a) - vec(b)).norm(); }

// Dimension of {x ∈ ℍ : x·g = g⁻¹·x for every g}.
inline int reverser_dim_1x1(const std::vector<Quaternion>& gs, double tol = 1e-10) {
  Eigen::MatrixXd stacked(4 * gs.size(), 4);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    stacked.block<4, 4>(4 * i, 0) = right_matrix(gs[i]) - left_matrix(inv(gs[i]));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
  const Eigen::VectorXd s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) rank += s[i] > tol ? 1 : 0;
  return 4 - rank;
}

// ---------------------------------------------------------------- Sp(1,1)

inline Quaternion jq(Complex c) {  // c·j
  return {0.0, 0.0, c.real(), c.imag()};
}

/// [[0, t·j], [conj(t)⁻¹·j, 0]]
inline QMatrix family(Complex t) {
  return QMatrix{{Quaternion{0.0}, jq(t)}, {jq(1.0 / std::conj(t)), Quaternion{0.0}}};
}

/// Inverse in Sp(1,1) for the anti-diagonal form: [[a,b],[c,d]]⁻¹ = [[d̄, b̄],[c̄, ā]].
inline QMatrix h1_inverse(const QMatrix& b) {
  return QMatrix{{b(1, 1).conj(), b(0, 1).conj()}, {b(1, 0).conj(), b(0, 0).conj()}};
}

inline double frob2(const QMatrix& m) {
  double s = 0.0;
  for (const Quaternion& q : m.entries()) s += q.norm2();
  return s;
}

/// ‖C(t)·B·C(t)⁻¹ − B⁻¹‖² with t = e^{iψ}·e^{ℓ}; C(t)⁻¹ = −C(t).
inline double family_defect(const QMatrix& b, const QMatrix& b_inv, double psi, double ell) {
  const QMatrix c = family(std::polar(std::exp(ell), psi));
  return frob2(c * b * (-c) - b_inv);
}

struct SearchResult {
  double residual = std::numeric_limits<double>::infinity();
  Complex t;
};

/// Grid over (arg t, log|t|) followed by compass-search refinement.
inline SearchResult search_family_reverser(const QMatrix& b) {
  const QMatrix b_inv = h1_inverse(b);
  struct Start {
    double f, psi, ell;
  };
  std::vector<Start> starts;
  for (int a = 0; a < 72; ++a) {
    for (int l = -30; l <= 30; ++l) {
      const double psi = 2.0 * kPi * a / 72.0;
      const double ell = 0.15 * l;
      starts.push_back({family_defect(b, b_inv, psi, ell), psi, ell});
    }
  }
  std::partial_sort(starts.begin(), starts.begin() + 6, starts.end(),
                    [](const Start& x, const Start& y) { return x.f < y.f; });
  SearchResult best;
  for (int s = 0; s < 6; ++s) {
    double psi = starts[s].psi, ell = starts[s].ell, f = starts[s].f;
    double step = 0.1;
    for (int it = 0; it < 20000 && step > 1e-15; ++it) {
      bool moved = false;
      const double dirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
      for (const auto& d : dirs) {
        const double p2 = psi + step * d[0], l2 = ell + step * d[1];
        const double f2 = family_defect(b, b_inv, p2, l2);
        if (f2 < f) {
          psi = p2; ell = l2; f = f2;
          moved = true;
          break;
        }
      }
      if (!moved) step *= 0.5;
    }
    const double r = std::sqrt(f);
    if (r < best.residual) best = {r, std::polar(std::exp(ell), psi)};
  }
  return best;
}

// ------------------------------------------------------- random elements

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Quaternion random_unit(Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector4d v(g(rng), g(rng), g(rng), g(rng));
  return quat(v.normalized());
}

inline Quaternion random_pure(Rng& rng, double scale) {
  std::normal_distribution<double> g;
  return Quaternion{0.0, g(rng), g(rng), g(rng)} * scale;
}

/// Product of generators of Sp(1,1) in the anti-diagonal model: scalar units,
/// loxodromic diagonals and both kinds of unipotents.
inline QMatrix random_sp11(Rng& rng, int length = 6) {
  QMatrix g = QMatrix::identity(2);
  for (int i = 0; i < length; ++i) {
    const Quaternion u = random_unit(rng);
    const double r = uniform(rng, 0.4, 2.5);
    const double th = uniform(rng, 0.0, 2.0 * kPi);
    const Complex a = std::polar(r, th), d = std::polar(1.0 / r, th);
    g = g * QMatrix{{u, Quaternion{0.0}}, {Quaternion{0.0}, u}};
    g = g * QMatrix{{Quaternion(a), Quaternion{0.0}}, {Quaternion{0.0}, Quaternion(d)}};
    g = g * QMatrix{{Quaternion{1.0}, Quaternion{0.0}}, {random_pure(rng, 0.7), Quaternion{1.0}}};
    g = g * QMatrix{{Quaternion{1.0}, random_pure(rng, 0.7)}, {Quaternion{0.0}, Quaternion{1.0}}};
  }
  return g;
}

/// diag(r e^{iθ}, r⁻¹ e^{iθ})
inline QMatrix normal_diag(double r, double theta) {
  return QMatrix::diagonal({Quaternion(std::polar(r, theta)), Quaternion(std::polar(1.0 / r, theta))});
}

inline double max_dist(const QMatrix& a, const QMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, dist(a.entries()[i], b.entries()[i]));
  }
  return m;
}

}  // namespace oracle
