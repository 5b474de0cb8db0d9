#pragma once

#include <Eigen/Dense>

#include "fcpca/dataset.hpp"

namespace fcpca {

/// Functional PCA of a set of curves in coefficient space.
///
/// Eigenfunction rows are orthonormal in the L2 metric; eigenvalues are
/// sorted descending; scores(i,j) = <X_i - mean, f_j>.
struct FpcaResult {
    FunctionalDatum mean;          // K
    Eigen::MatrixXd eigenfunctions; // q x K, rows f_j
    Eigen::VectorXd eigenvalues;    // q, descending, all > 0
    Eigen::MatrixXd scores;         // N x q
    double retained_fraction = 0.0; // achieved share of total variance
};

/// Mean curve: column mean of the coefficient matrix.
FunctionalDatum mean_function(const FunctionalDataSet& data);

/// FPCA with variance-threshold truncation.
///
/// Solves the covariance-operator eigenproblem through the symmetric matrix
/// M^{1/2} G M^{1/2} with G the centered coefficient covariance, so that
/// f_j = M^{-1/2} u_j gives <f_j, f_k> = delta_jk exactly under the basis.
/// Eigenvalues below 1e-10 * lambda_1 are treated as zero; q is the smallest
/// count whose cumulative share reaches `var_threshold`. Each eigenfunction's
/// sign is fixed so its largest-magnitude coefficient is positive.
FpcaResult fpca(const FunctionalDataSet& data, double var_threshold);

/// Scores of (possibly new) curves against an existing decomposition.
Eigen::MatrixXd project_scores(const FunctionalDataSet& data, const FpcaResult& result);

} // namespace fcpca
