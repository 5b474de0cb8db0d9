#include "fcpca/smoothing.hpp"

#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fcpca/threads.hpp"

namespace fcpca {

namespace kernels {

Eigen::MatrixXd solve_rows_serial(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& rhs) {
    Eigen::MatrixXd out(rhs.rows(), rhs.cols());
    for (Eigen::Index i = 0; i < rhs.rows(); ++i)
        out.row(i) = llt.solve(rhs.row(i).transpose()).transpose();
    return out;
}

Eigen::MatrixXd solve_rows_omp(const Eigen::LLT<Eigen::MatrixXd>& llt, const Eigen::MatrixXd& rhs,
                               int n_threads) {
    Eigen::MatrixXd out(rhs.rows(), rhs.cols());
    const Eigen::Index n = rhs.rows();
    const int nt = effective_threads(n_threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (Eigen::Index i = 0; i < n; ++i)
        out.row(i) = llt.solve(rhs.row(i).transpose()).transpose();
    (void)nt;
    return out;
}

} // namespace kernels

FunctionalDataSet smooth(const Eigen::MatrixXd& samples, const Eigen::VectorXd& time_points,
                         BasisPtr basis, int n_threads) {
    const Eigen::Index m = time_points.size();
    const int k = basis->size();
    if (samples.cols() != m)
        raise(ErrorKind::Dimension, "smooth: samples have " + std::to_string(samples.cols()) +
                                        " columns but the grid has " + std::to_string(m) + " points");
    if (m < k)
        raise(ErrorKind::InsufficientData, "smooth: underdetermined fit, " + std::to_string(m) +
                                               " grid points < " + std::to_string(k) + " basis functions");
    for (Eigen::Index i = 0; i + 1 < m; ++i)
        if (!(time_points[i] < time_points[i + 1]))
            raise(ErrorKind::InvalidArgument, "smooth: time grid must be strictly increasing");
    if (!basis->interval().contains(time_points[0]) || !basis->interval().contains(time_points[m - 1]))
        raise(ErrorKind::Domain, "smooth: time grid extends outside the basis interval");

    const Eigen::MatrixXd phi = basis->design_matrix(time_points);
    Eigen::MatrixXd a = phi.transpose() * phi;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    const double emax = es.eigenvalues().maxCoeff();
    double emin = es.eigenvalues().minCoeff();
    if (emin <= 0.0 || emax / emin > 1e12) {
        const double ridge = 1e-8 * a.trace() / k;
        std::cerr << "fcpca: warning: ill-conditioned smoothing system, adding ridge " << ridge << "\n";
        a += ridge * Eigen::MatrixXd::Identity(k, k);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(a);
        emin = es2.eigenvalues().minCoeff();
        if (emin <= 0.0 || es2.eigenvalues().maxCoeff() / emin > 1e12)
            raise(ErrorKind::IllConditioned, "smooth: design matrix rank-deficient beyond ridge repair");
    }

    Eigen::LLT<Eigen::MatrixXd> llt(a);
    const Eigen::MatrixXd rhs = samples * phi; // row i = (phi' y_i)'

    FunctionalDataSet out;
    out.basis = std::move(basis);
    out.coeffs = kernels::solve_rows_omp(llt, rhs, n_threads);
    return out;
}

} // namespace fcpca
