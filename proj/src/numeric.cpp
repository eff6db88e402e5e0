#include "qhr/numeric.hpp"

#include <algorithm>

namespace qhr {

double rank_threshold(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                      Eigen::Index cols, double factor) {
  const double smax = singular_values.size() > 0 ? singular_values.maxCoeff() : 0.0;
  return smax * static_cast<double>(std::max(rows, cols)) * factor;
}

int numerical_rank(const Eigen::MatrixXd& a, double factor) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& s = svd.singularValues();
  const double thresh = rank_threshold(s, a.rows(), a.cols(), factor);
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thresh) ++rank;
  }
  return rank;
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double factor) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double thresh = rank_threshold(s, a.rows(), a.cols(), factor);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > thresh) ++rank;
  }
  return svd.matrixV().rightCols(n - rank);
}

Eigen::MatrixXd real_operator(std::size_t rows, std::size_t cols,
                              const std::function<QMatrix(const QMatrix&)>& op) {
  const Eigen::Index dim = static_cast<Eigen::Index>(4 * rows * cols);
  Eigen::MatrixXd out;
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(b) = 1.0;
    const Eigen::VectorXd image = flatten(op(unflatten(rows, cols, e)));
    if (b == 0) out.resize(image.size(), dim);
    out.col(b) = image;
  }
  return out;
}

}  // namespace qhr
