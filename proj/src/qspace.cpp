#include "qhr/qspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qhr/error.hpp"
#include "qhr/numeric.hpp"

namespace qhr {

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch, "entry count does not match rows*cols");
  }
}

QMatrix::QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
}

QMatrix QMatrix::identity(std::size_t n) { return scalar(n, Quaternion(1.0)); }

QMatrix QMatrix::scalar(std::size_t n, const Quaternion& q) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = q;
  return m;
}

QMatrix QMatrix::diagonal(std::span<const Quaternion> diag) {
  QMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

QMatrix QMatrix::diagonal(std::initializer_list<Quaternion> diag) {
  return diagonal(std::span<const Quaternion>(diag.begin(), diag.size()));
}

QMatrix QMatrix::column(std::span<const Quaternion> values) {
  return QMatrix(values.size(), 1, std::vector<Quaternion>(values.begin(), values.end()));
}

QMatrix QMatrix::column(std::initializer_list<Quaternion> values) {
  return column(std::span<const Quaternion>(values.begin(), values.size()));
}

QMatrix QMatrix::col(std::size_t c) const {
  QMatrix v(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void QMatrix::set_col(std::size_t c, const QMatrix& v) {
  if (v.rows() != rows_ || v.cols() != 1) throw Error(ErrorKind::DimensionMismatch, "set_col");
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

QMatrix& QMatrix::operator+=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "+");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw Error(ErrorKind::DimensionMismatch, "-");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }

QMatrix operator-(const QMatrix& a) { return a * -1.0; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Quaternion acc;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

QMatrix operator*(const QMatrix& a, const Quaternion& q) {
  QMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c) * q;
  return out;
}

QMatrix operator*(const Quaternion& q, const QMatrix& a) {
  QMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = q * a(r, c);
  return out;
}

QMatrix operator*(const QMatrix& a, double s) {
  QMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) *= s;
  return out;
}

QMatrix adj(const QMatrix& m) {
  QMatrix out(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c).conj();
  return out;
}

double max_norm(const QMatrix& m) {
  double best = 0.0;
  for (const Quaternion& q : m.entries()) best = std::max(best, q.norm());
  return best;
}

double frobenius(const QMatrix& m) {
  double acc = 0.0;
  for (const Quaternion& q : m.entries()) acc += q.norm2();
  return std::sqrt(acc);
}

double max_distance(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "max_distance shape mismatch");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    best = std::max(best, distance(a.entries()[i], b.entries()[i]));
  }
  return best;
}

Eigen::MatrixXcd complex_adjoint(const QMatrix& m) {
  Eigen::MatrixXcd out(2 * m.rows(), 2 * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto [c1, c2] = split(m(r, c));
      const Eigen::Index R = static_cast<Eigen::Index>(2 * r);
      const Eigen::Index C = static_cast<Eigen::Index>(2 * c);
      out(R, C) = c1;
      out(R, C + 1) = c2;
      out(R + 1, C) = -std::conj(c2);
      out(R + 1, C + 1) = std::conj(c1);
    }
  }
  return out;
}

QMatrix from_complex_adjoint(const Eigen::MatrixXcd& c) {
  const std::size_t rows = static_cast<std::size_t>(c.rows() / 2);
  const std::size_t cols = static_cast<std::size_t>(c.cols() / 2);
  QMatrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < cols; ++k)
      out(r, k) = join(c(2 * r, 2 * k), c(2 * r, 2 * k + 1));
  return out;
}

QMatrix quaternion_vector(const Eigen::VectorXcd& u) {
  // The first column of the adjoint block of x = c1 + c2·j is (c1, -conj(c2)).
  const std::size_t rows = static_cast<std::size_t>(u.size() / 2);
  QMatrix v(rows, 1);
  for (std::size_t r = 0; r < rows; ++r) v[r] = join(u(2 * r), -std::conj(u(2 * r + 1)));
  return v;
}

QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const Eigen::MatrixXcd c = complex_adjoint(m);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(c);
  if (!lu.isInvertible()) throw Error(ErrorKind::DimensionMismatch, "matrix is singular");
  return from_complex_adjoint(lu.inverse());
}

Eigen::VectorXd flatten(const QMatrix& m) {
  Eigen::VectorXd v(4 * m.entries().size());
  Eigen::Index i = 0;
  for (const Quaternion& q : m.entries()) {
    v(i++) = q.w;
    v(i++) = q.x;
    v(i++) = q.y;
    v(i++) = q.z;
  }
  return v;
}

QMatrix unflatten(std::size_t rows, std::size_t cols, const Eigen::Ref<const Eigen::VectorXd>& v) {
  if (static_cast<std::size_t>(v.size()) != 4 * rows * cols) {
    throw Error(ErrorKind::DimensionMismatch, "unflatten length");
  }
  std::vector<Quaternion> e(rows * cols);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Eigen::Index b = static_cast<Eigen::Index>(4 * i);
    e[i] = {v(b), v(b + 1), v(b + 2), v(b + 3)};
  }
  return QMatrix(rows, cols, std::move(e));
}

// --------------------------------------------------------- HermitianSpace

std::string_view to_string(Form form) {
  switch (form) {
    case Form::H1: return "h1";
    case Form::H0: return "h0";
    case Form::Compact: return "compact";
  }
  return "h1";
}

Form parse_form(std::string_view tag) {
  if (tag == "h1") return Form::H1;
  if (tag == "h0") return Form::H0;
  if (tag == "compact") return Form::Compact;
  throw Error(ErrorKind::PreconditionViolated, "unknown form tag '" + std::string(tag) + "'");
}

HermitianSpace HermitianSpace::h1(int n) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "n must be >= 1");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  QMatrix g(m, m);
  g(0, m - 1) = 1.0;
  g(m - 1, 0) = 1.0;
  for (std::size_t i = 1; i + 1 < m; ++i) g(i, i) = 1.0;
  return HermitianSpace(n, Form::H1, std::move(g));
}

HermitianSpace HermitianSpace::h0(int n) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "n must be >= 1");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  QMatrix g = QMatrix::identity(m);
  g(0, 0) = -1.0;
  return HermitianSpace(n, Form::H0, std::move(g));
}

HermitianSpace HermitianSpace::compact(int n) {
  if (n < 1) throw Error(ErrorKind::DimensionMismatch, "n must be >= 1");
  return HermitianSpace(n, Form::Compact, QMatrix::identity(static_cast<std::size_t>(n)));
}

HermitianSpace HermitianSpace::make(Form form, int n) {
  switch (form) {
    case Form::H1: return h1(n);
    case Form::H0: return h0(n);
    case Form::Compact: return compact(n);
  }
  return h1(n);
}

namespace {

void require_square_of(const HermitianSpace& space, const QMatrix& m) {
  if (m.rows() != space.dim() || m.cols() != space.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a " + std::to_string(space.dim()) + "x" + std::to_string(space.dim()) +
                    " matrix");
  }
}

void require_column_of(const HermitianSpace& space, const QMatrix& v) {
  if (v.rows() != space.dim() || v.cols() != 1) {
    throw Error(ErrorKind::DimensionMismatch,
                "expected a column of length " + std::to_string(space.dim()));
  }
}

}  // namespace

Quaternion hermitian_product(const HermitianSpace& space, const QMatrix& z, const QMatrix& w) {
  require_column_of(space, z);
  require_column_of(space, w);
  const QMatrix& g = space.gram();
  Quaternion acc;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    Quaternion gz;
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (g(r, c) != Quaternion()) gz += g(r, c) * z[c];
    }
    acc += w[r].conj() * gz;
  }
  return acc;
}

double membership_residual(const HermitianSpace& space, const QMatrix& m) {
  require_square_of(space, m);
  return max_distance(adj(m) * space.gram() * m, space.gram());
}

bool is_group_member(const HermitianSpace& space, const QMatrix& m, double tol) {
  return membership_residual(space, m) <= tol;
}

QMatrix group_inverse(const HermitianSpace& space, const QMatrix& m, double tol) {
  if (!is_group_member(space, m, tol)) {
    throw Error(ErrorKind::NotGroupMember, "matrix does not preserve the form");
  }
  // All supported Gram matrices are their own inverses.
  return space.gram() * adj(m) * space.gram();
}

std::vector<QMatrix> lie_algebra_basis(const HermitianSpace& space, double rank_factor) {
  const std::size_t m = space.dim();
  const QMatrix& g = space.gram();
  const Eigen::MatrixXd op =
      real_operator(m, m, [&](const QMatrix& x) { return adj(x) * g + g * x; });
  const Eigen::MatrixXd kernel = null_space(op, rank_factor);
  std::vector<QMatrix> basis;
  basis.reserve(static_cast<std::size_t>(kernel.cols()));
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) basis.push_back(unflatten(m, m, kernel.col(c)));
  return basis;
}

namespace {

LieDims ad_dims_on(const HermitianSpace& space, const QMatrix& s, double tol) {
  require_square_of(space, s);
  const QMatrix s2 = s * s;
  const QMatrix id = QMatrix::identity(space.dim());
  double sign = 0.0;
  if (max_distance(s2, id) <= tol) {
    sign = 1.0;
  } else if (max_distance(s2, -id) <= tol) {
    sign = -1.0;
  } else {
    throw Error(ErrorKind::NotInvolutionLike, "s*s is not +-I");
  }
  if (!is_group_member(space, s, tol)) {
    throw Error(ErrorKind::NotGroupMember, "s does not preserve the form");
  }
  const QMatrix s_inv = s * sign;

  const std::vector<QMatrix> basis = lie_algebra_basis(space);
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd coords(n, n);
  std::vector<Eigen::VectorXd> flat;
  flat.reserve(basis.size());
  for (const QMatrix& x : basis) flat.push_back(flatten(x));
  for (Eigen::Index l = 0; l < n; ++l) {
    const Eigen::VectorXd image = flatten(s * basis[static_cast<std::size_t>(l)] * s_inv);
    for (Eigen::Index k = 0; k < n; ++k) coords(k, l) = flat[static_cast<std::size_t>(k)].dot(image);
  }
  // Ad(s) - I can vanish identically, so the rank cut is tied to |Ad(s)|, not to the shifted matrix.
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  const double cut = 1e-9 * std::max(1.0, coords.norm());
  auto rank = [cut](const Eigen::MatrixXd& a) {
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
    return static_cast<int>((sv.array() > cut).count());
  };
  LieDims dims;
  dims.total = static_cast<int>(n);
  dims.plus_one = dims.total - rank(coords - eye);
  dims.minus_one = dims.total - rank(coords + eye);
  return dims;
}

}  // namespace

LieDims ad_eigenspace_dims(const HermitianSpace& space, const QMatrix& s, double tol) {
  return ad_dims_on(space, s, tol);
}

LieDims compact_ad_dims(int n, const QMatrix& s, double tol) {
  return ad_dims_on(HermitianSpace::compact(n), s, tol);
}

// --------------------------------------------------------- BoundaryPoint

int norm_sign(const HermitianSpace& space, const QMatrix& z, double rel_tol) {
  const double scale = std::max(vector_norm(z) * vector_norm(z), 1e-300);
  const double value = hermitian_product(space, z, z).w;
  if (value < -rel_tol * scale) return -1;
  if (value > rel_tol * scale) return 1;
  return 0;
}

BoundaryPoint boundary_point(const HermitianSpace& space, const QMatrix& v, double tol) {
  require_column_of(space, v);
  if (!space.indefinite()) throw Error(ErrorKind::InvalidLift, "compact spaces have no boundary");
  const double nv = vector_norm(v);
  if (nv == 0.0) throw Error(ErrorKind::InvalidLift, "zero vector");
  const double self = hermitian_product(space, v, v).norm();
  if (self > tol * nv * nv) throw Error(ErrorKind::InvalidLift, "lift is not a null vector");

  const std::size_t last = v.rows() - 1;
  BoundaryPoint p;
  if (v[last].norm() > 1e-10 * nv) {
    p.lift = v * v[last].inverse();
    p.lift[last] = Quaternion(1.0);
  } else {
    std::size_t pivot = 0;
    while (pivot < v.rows() && v[pivot].norm() <= 1e-10 * nv) ++pivot;
    p.lift = v * v[pivot].inverse();
    p.lift[pivot] = Quaternion(1.0);
    p.lift[last] = Quaternion();
    p.at_infinity = true;
  }
  return p;
}

BoundaryPoint infinity_point(const HermitianSpace& space) {
  if (space.form() != Form::H1) {
    throw Error(ErrorKind::InvalidLift, "the point at infinity is defined in the H1 model");
  }
  QMatrix v(space.dim(), 1);
  v[0] = 1.0;
  return {v, true};
}

BoundaryPoint origin_point(const HermitianSpace& space) {
  if (space.form() != Form::H1) {
    throw Error(ErrorKind::InvalidLift, "the origin point is defined in the H1 model");
  }
  QMatrix v(space.dim(), 1);
  v[space.dim() - 1] = 1.0;
  return {v, false};
}

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol) {
  if (a.at_infinity != b.at_infinity) return false;
  const double scale = 1.0 + std::max(max_norm(a.lift), max_norm(b.lift));
  return max_distance(a.lift, b.lift) <= tol * scale;
}

BoundaryPoint apply(const HermitianSpace& space, const QMatrix& g, const BoundaryPoint& p,
                    double tol) {
  return boundary_point(space, g * p.lift, tol);
}

QMatrix h1_to_h0(int n) {
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  const double s = 1.0 / std::sqrt(2.0);
  QMatrix t = QMatrix::identity(m);
  t(0, 0) = s;
  t(0, m - 1) = -s;
  t(m - 1, 0) = s;
  t(m - 1, m - 1) = s;
  return t;
}

}  // namespace qhr
