#pragma once

#include <Eigen/Dense>

#include "fcpca/dataset.hpp"

namespace fcpca {

/// Least-squares representation of raw series in a B-spline basis.
///
/// Row i of the result minimizes sum_k (samples(i,k) - X_i(t_k))^2 against
/// the shared design matrix. One normal-equations factorization is shared by
/// all rows; if cond(Phi'Phi) exceeds 1e12 a ridge of 1e-8*trace/K is added
/// once (with a warning on stderr) before giving up.
FunctionalDataSet smooth(const Eigen::MatrixXd& samples, const Eigen::VectorXd& time_points,
                         BasisPtr basis, int n_threads = 0);

namespace kernels {

/// Row-wise triangular solves C.row(i) = solve(A, rhs.row(i)'). The two
/// lanes produce bit-identical output; the serial one is the reference.
Eigen::MatrixXd solve_rows_serial(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& rhs);
Eigen::MatrixXd solve_rows_omp(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& rhs,
                               int n_threads);

} // namespace kernels

} // namespace fcpca
