#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "qhr/qmatrix.hpp"

namespace qhr {

/// Default relative factor of the numerical-rank threshold.
inline constexpr double kRankFactor = 1e-12;

/// Singular values at or below σ_max · max(rows, cols) · factor count as zero.
double rank_threshold(const Eigen::VectorXd& singular_values, Eigen::Index rows,
                      Eigen::Index cols, double factor = kRankFactor);

int numerical_rank(const Eigen::MatrixXd& a, double factor = kRankFactor);

/// Orthonormal basis (as columns) of the numerical kernel of a.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double factor = kRankFactor);

/**
 * Matrix of a real-linear map on rows×cols quaternionic matrices, in the
 * flatten() coordinates. Column b is op(E_b) for the b-th real basis matrix.
 */
Eigen::MatrixXd real_operator(std::size_t rows, std::size_t cols,
                              const std::function<QMatrix(const QMatrix&)>& op);

}  // namespace qhr
