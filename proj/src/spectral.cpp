#include "qhr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "qhr/error.hpp"

namespace qhr {

namespace {

constexpr double kClusterTol = 1e-5;   // eigenvalues of the adjoint merged into one class
constexpr double kKernelTol = 1e-7;    // singular values counted as kernel
constexpr double kResidualTol = 1e-8;  // |Mv - vλ| acceptance, relative to max(1, |M|)

struct ClassInfo {
  EigenvalueClass cls;
  Complex lambda;
  int multiplicity = 0;           // over ℍ
  Eigen::MatrixXcd kernel;        // orthonormal basis of ker(χ(M) - λ)
  std::vector<QMatrix> vectors;   // ℍ-independent eigenvectors, unit norm
};

struct Cluster {
  Complex sum;
  int count = 0;
  Complex center() const { return sum / static_cast<double>(count); }
};

std::vector<Cluster> cluster_spectrum(const Eigen::MatrixXcd& chi) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(chi, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "complex eigen-solve did not converge");
  }
  std::vector<Cluster> clusters;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const Complex v = solver.eigenvalues()(i);
    bool placed = false;
    for (Cluster& c : clusters) {
      if (std::abs(v - c.center()) <= kClusterTol * std::max(1.0, std::abs(v))) {
        c.sum += v;
        ++c.count;
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({v, 1});
  }
  return clusters;
}

Eigen::MatrixXcd kernel_of(const Eigen::MatrixXcd& chi, Complex lambda) {
  const Eigen::Index n = chi.rows();
  const Eigen::MatrixXcd shifted = chi - lambda * Eigen::MatrixXcd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double thresh = kKernelTol * std::max(1.0, s(0));
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > thresh) ++rank;
  if (rank == n) rank = n - 1;  // keep the best available direction
  return svd.matrixV().rightCols(n - rank);
}

bool h_independent(const std::vector<QMatrix>& chosen, const QMatrix& candidate) {
  QMatrix stacked(candidate.rows(), chosen.size() + 1);
  for (std::size_t c = 0; c < chosen.size(); ++c) stacked.set_col(c, chosen[c]);
  stacked.set_col(chosen.size(), candidate);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(complex_adjoint(stacked));
  const Eigen::VectorXd& s = svd.singularValues();
  return s(s.size() - 1) > 1e-6 * std::max(1.0, s(0));
}

QMatrix gauge(QMatrix v) {
  const double nv = vector_norm(v);
  for (std::size_t r = 0; r < v.rows(); ++r) {
    if (v[r].norm() <= 1e-8 * nv) continue;
    const Complex c1 = split(v[r]).c1;
    if (std::abs(c1) > 1e-8 * nv) v = v * Quaternion(std::conj(c1) / std::abs(c1));
    break;
  }
  return v * (1.0 / vector_norm(v));
}

Complex snap(Complex lambda) {
  return std::abs(lambda.imag()) <= kClusterTol * std::max(1.0, std::abs(lambda))
             ? Complex(lambda.real(), 0.0)
             : lambda;
}

// With chi_gram given, each eigenspace basis is rotated to diagonalise the form
// on it (most negative direction first), so reported eigenvectors expose the
// signature of the eigenspace.
std::vector<ClassInfo> analyse(const QMatrix& m, const Eigen::MatrixXcd* chi_gram = nullptr) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "eigenvalues of non-square matrix");
  const Eigen::MatrixXcd chi = complex_adjoint(m);
  const std::vector<Cluster> clusters = cluster_spectrum(chi);

  std::vector<ClassInfo> classes;
  int total = 0;
  for (const Cluster& c : clusters) {
    const Complex center = snap(c.center());
    ClassInfo info;
    if (center.imag() == 0.0) {
      if (c.count % 2 != 0) {
        throw Error(ErrorKind::ConvergenceFailure, "unpaired real eigenvalue of the adjoint");
      }
      info.multiplicity = c.count / 2;
    } else if (center.imag() > 0.0) {
      info.multiplicity = c.count;
    } else {
      continue;
    }
    info.lambda = center;
    info.cls = {center, std::abs(center)};
    total += info.multiplicity;
    classes.push_back(std::move(info));
  }
  if (total != static_cast<int>(m.rows())) {
    throw Error(ErrorKind::ConvergenceFailure, "eigenvalue classes do not pair up");
  }

  const double scale = std::max(1.0, max_norm(m));
  for (ClassInfo& info : classes) {
    info.kernel = kernel_of(chi, info.lambda);
    if (chi_gram != nullptr && info.kernel.cols() > 1) {
      const Eigen::MatrixXcd g = info.kernel.adjoint() * *chi_gram * info.kernel;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (g + g.adjoint()));
      info.kernel = info.kernel * solver.eigenvectors();
    }
    const Quaternion lambda(info.lambda);
    for (Eigen::Index k = 0; k < info.kernel.cols(); ++k) {
      if (static_cast<int>(info.vectors.size()) == info.multiplicity) break;
      QMatrix v = gauge(quaternion_vector(info.kernel.col(k)));
      if (!h_independent(info.vectors, v)) continue;
      if (max_distance(m * v, v * lambda) > kResidualTol * scale) {
        throw Error(ErrorKind::ConvergenceFailure, "eigenvector residual above target");
      }
      info.vectors.push_back(std::move(v));
    }
    if (info.vectors.empty()) {
      throw Error(ErrorKind::ConvergenceFailure, "no eigenvector recovered");
    }
  }

  std::sort(classes.begin(), classes.end(), [](const ClassInfo& a, const ClassInfo& b) {
    if (a.cls.modulus != b.cls.modulus) return a.cls.modulus < b.cls.modulus;
    return std::arg(a.cls.rep) < std::arg(b.cls.rep);
  });
  return classes;
}

NormSign to_norm_sign(int s) {
  return s < 0 ? NormSign::Negative : (s > 0 ? NormSign::Positive : NormSign::Zero);
}

std::vector<EigenPair> pairs_from(const std::vector<ClassInfo>& classes,
                                  const HermitianSpace& space) {
  std::vector<EigenPair> out;
  for (const ClassInfo& info : classes) {
    for (int k = 0; k < info.multiplicity; ++k) {
      // Defective classes repeat their last independent eigenvector.
      const std::size_t idx = std::min<std::size_t>(k, info.vectors.size() - 1);
      const QMatrix& v = info.vectors[idx];
      out.push_back({info.cls, v, to_norm_sign(norm_sign(space, v))});
    }
  }
  return out;
}

// True if the form is negative somewhere on the eigenspace.
bool has_negative_direction(const ClassInfo& info, const Eigen::MatrixXcd& chi_gram) {
  const Eigen::MatrixXcd g = info.kernel.adjoint() * chi_gram * info.kernel;
  const Eigen::MatrixXcd herm = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0) < -1e-8;
}

bool off_unit(const EigenvalueClass& c) { return std::abs(c.modulus - 1.0) > kModulusBand; }

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Hyperbolic: return "hyperbolic";
    case Verdict::Elliptic: return "elliptic";
    case Verdict::Parabolic: return "parabolic";
  }
  return "parabolic";
}

std::vector<EigenvalueClass> eigenvalue_classes(const QMatrix& m) {
  std::vector<EigenvalueClass> out;
  for (const ClassInfo& info : analyse(m)) {
    for (int k = 0; k < info.multiplicity; ++k) out.push_back(info.cls);
  }
  return out;
}

std::vector<EigenPair> right_eigen(const QMatrix& m) {
  return pairs_from(analyse(m), HermitianSpace::compact(static_cast<int>(m.rows())));
}

std::vector<EigenPair> right_eigen(const HermitianSpace& space, const QMatrix& m) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix does not act on this space");
  }
  const Eigen::MatrixXcd chi_gram = complex_adjoint(space.gram());
  return pairs_from(analyse(m, &chi_gram), space);
}

bool is_hyperbolic(const QMatrix& m) {
  const auto classes = eigenvalue_classes(m);
  return std::any_of(classes.begin(), classes.end(), off_unit);
}

IsometryReport classify(const HermitianSpace& space, const QMatrix& m, double tol) {
  if (!is_group_member(space, m, tol)) {
    throw Error(ErrorKind::NotGroupMember, "matrix does not preserve the form");
  }
  const Eigen::MatrixXcd chi_gram = complex_adjoint(space.gram());
  const std::vector<ClassInfo> classes = analyse(m, &chi_gram);
  IsometryReport report;
  report.eigen = pairs_from(classes, space);

  const bool hyperbolic =
      std::any_of(classes.begin(), classes.end(), [](const ClassInfo& c) { return off_unit(c.cls); });
  if (hyperbolic) {
    report.verdict = Verdict::Hyperbolic;
    report.hyperbolic = hyperbolic_normal_form(space, m, tol);
    return report;
  }
  const bool elliptic = std::any_of(classes.begin(), classes.end(), [&](const ClassInfo& c) {
    return has_negative_direction(c, chi_gram);
  });
  report.verdict = elliptic ? Verdict::Elliptic : Verdict::Parabolic;
  return report;
}

HyperbolicData hyperbolic_normal_form(const HermitianSpace& space, const QMatrix& a,
                                      double tol) {
  if (!space.indefinite()) {
    throw Error(ErrorKind::NotHyperbolic, "compact groups have no hyperbolic elements");
  }
  if (a.rows() != space.dim() || a.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix does not act on this space");
  }
  const int n = space.n();
  const HermitianSpace h1 = HermitianSpace::h1(n);
  const QMatrix t = space.form() == Form::H0 ? h1_to_h0(n) : QMatrix::identity(space.dim());
  const QMatrix a1 = adj(t) * a * t;  // t is real orthogonal

  const std::vector<ClassInfo> classes = analyse(a1);
  const ClassInfo* small = nullptr;
  const ClassInfo* large = nullptr;
  std::vector<const ClassInfo*> unit;
  for (const ClassInfo& c : classes) {
    if (c.cls.modulus < 1.0 - kModulusBand) {
      if (small != nullptr || c.multiplicity != 1) {
        throw Error(ErrorKind::NotHyperbolic, "more than one contracting eigenline");
      }
      small = &c;
    } else if (c.cls.modulus > 1.0 + kModulusBand) {
      if (large != nullptr || c.multiplicity != 1) {
        throw Error(ErrorKind::NotHyperbolic, "more than one expanding eigenline");
      }
      large = &c;
    } else {
      unit.push_back(&c);
    }
  }
  if (small == nullptr || large == nullptr) {
    throw Error(ErrorKind::NotHyperbolic, "no eigenvalue class off the unit circle");
  }

  HyperbolicData data;
  data.r = small->cls.modulus;
  data.theta = std::arg(small->cls.rep);
  const double scale = std::max(1.0, max_norm(a));
  if (std::abs(large->cls.modulus * data.r - 1.0) > 1e-6 ||
      std::abs(std::arg(large->cls.rep) - data.theta) > 1e-6) {
    throw Error(ErrorKind::ConvergenceFailure, "expanding class is not r^-1 e^{i theta}");
  }

  const QMatrix rep_vec = small->vectors.front();
  const QMatrix att_vec = large->vectors.front();
  const Quaternion h = hermitian_product(h1, rep_vec, att_vec);
  if (h.norm() < 1e-12) {
    throw Error(ErrorKind::ConvergenceFailure, "null eigenlines are orthogonal");
  }
  // ⟨repelling, attracting·γ⟩ = conj(γ)·h = 1.
  const QMatrix att = att_vec * h.inverse().conj();

  const std::size_t m = space.dim();
  QMatrix c_a(m, m);
  c_a.set_col(0, rep_vec);
  c_a.set_col(m - 1, att);

  std::vector<QMatrix> positives;
  std::vector<double> phis;
  for (const ClassInfo* c : unit) {
    std::vector<QMatrix> block;
    for (const QMatrix& v0 : c->vectors) {
      QMatrix v = v0;
      v -= rep_vec * hermitian_product(h1, v, att);
      v -= att * hermitian_product(h1, v, rep_vec);
      for (const QMatrix& x : positives) v -= x * hermitian_product(h1, v, x);
      const double self = hermitian_product(h1, v, v).w;
      if (self <= 1e-10 * vector_norm(v) * vector_norm(v)) {
        throw Error(ErrorKind::ConvergenceFailure, "unit eigenvector is not spacelike");
      }
      v = v * (1.0 / std::sqrt(self));
      positives.push_back(v);
      phis.push_back(std::arg(c->cls.rep));
    }
    if (static_cast<int>(c->vectors.size()) != c->multiplicity) {
      throw Error(ErrorKind::ConvergenceFailure, "defective unit eigenvalue in a hyperbolic element");
    }
  }
  if (positives.size() + 2 != m) {
    throw Error(ErrorKind::ConvergenceFailure, "incomplete eigenbasis");
  }
  for (std::size_t j = 0; j < positives.size(); ++j) c_a.set_col(j + 1, positives[j]);

  std::vector<Quaternion> diag;
  diag.push_back(Quaternion(std::polar(data.r, data.theta)));
  for (double phi : phis) diag.push_back(expi(phi));
  diag.push_back(Quaternion(std::polar(1.0 / data.r, data.theta)));
  data.E_A = QMatrix::diagonal(diag);
  data.phis = std::move(phis);

  data.C_A = t * c_a;
  data.residual = max_distance(data.C_A * data.E_A * inverse(data.C_A), a);
  if (data.residual > kResidualTol * scale * scale) {
    throw Error(ErrorKind::ConvergenceFailure,
                "normal form residual " + std::to_string(data.residual));
  }
  data.repelling = boundary_point(space, data.C_A.col(0), std::max(tol, 1e-7));
  data.attracting = boundary_point(space, data.C_A.col(m - 1), std::max(tol, 1e-7));
  return data;
}

bool are_conjugate_hyperbolic(const QMatrix& a, const QMatrix& b, double tol) {
  const auto ca = eigenvalue_classes(a);
  const auto cb = eigenvalue_classes(b);
  if (!std::any_of(ca.begin(), ca.end(), off_unit) || !std::any_of(cb.begin(), cb.end(), off_unit)) {
    throw Error(ErrorKind::NotHyperbolic, "both elements must be hyperbolic");
  }
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (std::abs(ca[i].rep - cb[i].rep) > tol * std::max(1.0, ca[i].modulus)) return false;
  }
  return true;
}

}  // namespace qhr
