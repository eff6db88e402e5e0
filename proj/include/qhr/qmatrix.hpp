#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qhr/quat.hpp"

namespace qhr {

/// Dense row-major matrix over the quaternions.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);
  QMatrix(std::size_t rows, std::size_t cols, std::vector<Quaternion> entries);
  QMatrix(std::initializer_list<std::initializer_list<Quaternion>> rows);

  static QMatrix identity(std::size_t n);
  static QMatrix diagonal(std::span<const Quaternion> diag);
  static QMatrix diagonal(std::initializer_list<Quaternion> diag);
  static QMatrix column(std::span<const Quaternion> values);
  static QMatrix column(std::initializer_list<Quaternion> values);
  static QMatrix scalar(std::size_t n, const Quaternion& q);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return entries_.empty(); }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Quaternion& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  // Column vectors only.
  Quaternion& operator[](std::size_t r) { return entries_[r]; }
  const Quaternion& operator[](std::size_t r) const { return entries_[r]; }

  std::span<const Quaternion> entries() const { return entries_; }

  QMatrix col(std::size_t c) const;
  void set_col(std::size_t c, const QMatrix& v);

  QMatrix& operator+=(const QMatrix& o);
  QMatrix& operator-=(const QMatrix& o);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> entries_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator-(const QMatrix& a);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
/// Right scalar multiplication M·q (entrywise m·q); the right-module action on columns.
QMatrix operator*(const QMatrix& a, const Quaternion& q);
/// Left scalar multiplication q·M.
QMatrix operator*(const Quaternion& q, const QMatrix& a);
QMatrix operator*(const QMatrix& a, double s);

/// Conjugate transpose.
QMatrix adj(const QMatrix& m);
/// max over entries of |m_rc|.
double max_norm(const QMatrix& m);
/// Frobenius norm.
double frobenius(const QMatrix& m);
/// max_norm(a - b); DimensionMismatch on shape mismatch.
double max_distance(const QMatrix& a, const QMatrix& b);
/// Euclidean norm of a column (or the whole matrix as a vector).
inline double vector_norm(const QMatrix& v) { return frobenius(v); }

/**
 * Complex adjoint: each entry c1 + c2·j becomes the 2×2 block
 * [[c1, c2], [-conj(c2), conj(c1)]]. A ring homomorphism
 * Mat(ℍ) → Mat(ℂ) that also carries adj to the conjugate transpose.
 */
Eigen::MatrixXcd complex_adjoint(const QMatrix& m);
/// Inverse of complex_adjoint on its image (reads the (0,0) and (0,1) of each block).
QMatrix from_complex_adjoint(const Eigen::MatrixXcd& c);
/// Column of C^{2m} (first column of the adjoint block column) to a quaternion column.
QMatrix quaternion_vector(const Eigen::VectorXcd& u);

/// Two-sided inverse of a square matrix; DimensionMismatch if singular.
QMatrix inverse(const QMatrix& m);

/// Row-major flattening on R^{4·rows·cols} with per-entry basis {1, i, j, k}.
Eigen::VectorXd flatten(const QMatrix& m);
QMatrix unflatten(std::size_t rows, std::size_t cols, const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace qhr
