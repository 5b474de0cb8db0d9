#include "fcpca/fpca.hpp"

#include <cmath>

namespace fcpca {

FunctionalDatum mean_function(const FunctionalDataSet& data) {
    if (data.size() == 0) raise(ErrorKind::EmptyInput, "mean_function: empty dataset");
    return data.coeffs.colwise().mean().transpose();
}

FpcaResult fpca(const FunctionalDataSet& data, double var_threshold) {
    const Eigen::Index n = data.size();
    if (n < 2) raise(ErrorKind::InsufficientData, "fpca: need at least 2 curves, got " + std::to_string(n));
    if (!(var_threshold > 0.0 && var_threshold <= 1.0))
        raise(ErrorKind::InvalidArgument, "fpca: var_threshold must lie in (0, 1]");

    const BSplineBasis& basis = *data.basis;
    const Eigen::MatrixXd& m = basis.gram();

    FpcaResult res;
    res.mean = data.coeffs.colwise().mean().transpose();
    const Eigen::MatrixXd centered = data.coeffs.rowwise() - res.mean.transpose();
    const Eigen::MatrixXd cov = centered.transpose() * centered / double(n - 1);
    const Eigen::MatrixXd sym = basis.gram_sqrt() * cov * basis.gram_sqrt();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    const Eigen::VectorXd& evals_asc = es.eigenvalues();
    const Eigen::MatrixXd& evecs_asc = es.eigenvectors();
    const int k = basis.size();

    const double lambda_max = evals_asc[k - 1];
    // mean squared L2 magnitude of the curves, used as the degeneracy scale
    double scale = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) scale += data.coeffs.row(i) * m * data.coeffs.row(i).transpose();
    scale /= double(n);
    if (lambda_max <= 1e-20 * scale || lambda_max <= 0.0)
        raise(ErrorKind::DegenerateData, "fpca: covariance is (numerically) zero");

    const double cutoff = 1e-10 * lambda_max;
    std::vector<int> keep; // descending order
    for (int j = k - 1; j >= 0; --j)
        if (evals_asc[j] > cutoff) keep.push_back(j);

    const int n_pos = static_cast<int>(keep.size());
    Eigen::VectorXd lambdas(n_pos);
    for (int j = 0; j < n_pos; ++j) lambdas[j] = evals_asc[keep[j]];

    double total = lambdas.sum();
    int q = n_pos;
    double cum = 0.0;
    for (int j = 0; j < n_pos; ++j) {
        cum += lambdas[j];
        if (cum / total >= var_threshold) {
            q = j + 1;
            break;
        }
    }

    res.eigenvalues = lambdas.head(q);
    res.retained_fraction = res.eigenvalues.sum() / total;
    res.eigenfunctions.resize(q, k);
    for (int j = 0; j < q; ++j) {
        Eigen::VectorXd f = basis.gram_inv_sqrt() * evecs_asc.col(keep[j]);
        // deterministic sign: largest-magnitude coefficient made positive
        int arg = 0;
        f.cwiseAbs().maxCoeff(&arg);
        if (f[arg] < 0.0) f = -f;
        res.eigenfunctions.row(j) = f.transpose();
    }
    res.scores = centered * m * res.eigenfunctions.transpose();
    return res;
}

Eigen::MatrixXd project_scores(const FunctionalDataSet& data, const FpcaResult& result) {
    if (data.coeffs.cols() != result.mean.size() || data.basis->size() != result.mean.size())
        raise(ErrorKind::Dimension, "project_scores: basis mismatch between data and FPCA result");
    const Eigen::MatrixXd centered = data.coeffs.rowwise() - result.mean.transpose();
    return centered * data.basis->gram() * result.eigenfunctions.transpose();
}

} // namespace fcpca
