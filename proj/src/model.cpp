#include "fcpca/model.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fcpca/gram_schmidt.hpp"
#include "fcpca/threads.hpp"

namespace fcpca {

void Subspace::finalize() { cov_llt_.compute(lda_pooled_cov); }

namespace {

// Regularize the pooled covariance in place so its Cholesky is always usable:
// eps * (trace/d) * I with eps = 1e-8, escalated to 1e-4 if the condition
// number still exceeds 1e10.
void regularize_pooled(Eigen::MatrixXd& cov) {
    const int d = static_cast<int>(cov.rows());
    double tau = cov.trace() / d;
    if (!(tau > 0.0)) tau = 1.0; // fully degenerate scatter: fall back to identity scale
    const Eigen::MatrixXd base = cov;
    cov = base + 1e-8 * tau * Eigen::MatrixXd::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    const double emin = es.eigenvalues().minCoeff();
    if (emin <= 0.0 || es.eigenvalues().maxCoeff() / emin > 1e10)
        cov = base + 1e-4 * tau * Eigen::MatrixXd::Identity(d, d);
}

} // namespace

FcpcaModel fit(const FunctionalDataSet& train, const FitOptions& options) {
    const Eigen::Index n = train.size();
    if (n == 0) raise(ErrorKind::EmptyInput, "fit: empty training set");
    if (!train.labeled()) raise(ErrorKind::InvalidArgument, "fit: training data must be labeled");

    int c = 0;
    for (int l : train.labels) {
        if (l < 1) raise(ErrorKind::InvalidArgument, "fit: labels must be contiguous 1..c");
        c = std::max(c, l);
    }
    if (c < 2) raise(ErrorKind::InsufficientData, "fit: need at least 2 classes");

    std::vector<std::vector<int>> members(c);
    for (size_t i = 0; i < train.labels.size(); ++i) members[train.labels[i] - 1].push_back(static_cast<int>(i));
    for (int i = 0; i < c; ++i)
        if (members[i].size() < 2)
            raise(ErrorKind::InsufficientData,
                  "fit: class " + std::to_string(i + 1) + " has " + std::to_string(members[i].size()) +
                      " curves, need at least 2");

    const BSplineBasis& basis = *train.basis;
    const Eigen::MatrixXd& m = basis.gram();

    FcpcaModel model;
    model.basis = train.basis;
    model.grand_mean = train.coeffs.colwise().mean().transpose();

    std::vector<FunctionalDatum> class_means(c);
    for (int i = 0; i < c; ++i) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(basis.size());
        for (int r : members[i]) acc += train.coeffs.row(r);
        class_means[i] = (acc / double(members[i].size())).transpose();
    }

    // mean-difference augmentation: grand mean minus the first c-1 class means
    std::vector<FunctionalDatum> mean_diffs;
    for (int i = 0; i + 1 < c; ++i) mean_diffs.push_back(model.grand_mean - class_means[i]);

    model.subspaces.resize(c);
    for (int i = 0; i < c; ++i) {
        FpcaResult pca = fpca(train.rows(members[i]), options.var_threshold);
        const int q = static_cast<int>(pca.eigenvalues.size());

        std::vector<FunctionalDatum> augmented;
        augmented.reserve(q + c - 1);
        for (int j = 0; j < q; ++j) augmented.push_back(pca.eigenfunctions.row(j).transpose());
        for (const auto& g : mean_diffs) augmented.push_back(g);
        const std::vector<FunctionalDatum> ortho = gram_schmidt(augmented, basis, options.gs_tol);

        Subspace& sub = model.subspaces[i];
        sub.class_index = i + 1;
        sub.class_mean = class_means[i];
        sub.n_fpc = q;
        const int d = static_cast<int>(ortho.size());
        sub.features.resize(d, basis.size());
        for (int j = 0; j < d; ++j) sub.features.row(j) = ortho[j].transpose();

        // projections of all N training curves onto this subspace
        const Eigen::MatrixXd centered = train.coeffs.rowwise() - sub.class_mean.transpose();
        const Eigen::MatrixXd z = centered * m * sub.features.transpose(); // N x d

        sub.lda_means.resize(c, d);
        for (int l = 0; l < c; ++l) {
            Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(d);
            for (int r : members[l]) acc += z.row(r);
            sub.lda_means.row(l) = acc / double(members[l].size());
        }

        Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(d, d);
        for (int l = 0; l < c; ++l) {
            Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(d, d);
            for (int r : members[l]) {
                const Eigen::RowVectorXd dev = z.row(r) - sub.lda_means.row(l);
                scatter.noalias() += dev.transpose() * dev;
            }
            pooled += scatter / double(members[l].size() - 1);
        }
        pooled /= double(c);
        regularize_pooled(pooled);
        sub.lda_pooled_cov = pooled;
        sub.finalize();
    }

    model.priors = Eigen::VectorXd::Constant(c, 1.0 / c);
    if (options.priors == PriorMode::Empirical)
        for (int i = 0; i < c; ++i) model.priors[i] = double(members[i].size()) / double(n);
    return model;
}

Eigen::VectorXd posterior(const Eigen::VectorXd& v, const Subspace& subspace,
                          const Eigen::VectorXd& priors) {
    const int c = static_cast<int>(subspace.lda_means.rows());
    if (v.size() != subspace.dim())
        raise(ErrorKind::Dimension, "posterior: vector length " + std::to_string(v.size()) +
                                        " does not match subspace dimension " +
                                        std::to_string(subspace.dim()));
    Eigen::VectorXd logp(c);
    for (int l = 0; l < c; ++l) {
        const Eigen::VectorXd dev = v - subspace.lda_means.row(l).transpose();
        const double maha = dev.dot(subspace.cov_llt().solve(dev));
        logp[l] = -0.5 * maha + std::log(priors[l]);
    }
    // normalize in log space to dodge underflow at large Mahalanobis distances
    logp.array() -= logp.maxCoeff();
    Eigen::VectorXd p = logp.array().exp();
    return p / p.sum();
}

Prediction predict(const FcpcaModel& model, const FunctionalDatum& x) {
    const int c = model.class_count();
    if (x.size() != model.basis->size())
        raise(ErrorKind::Dimension, "predict: curve length does not match the model basis");

    Prediction out;
    out.per_subspace_posteriors.resize(c, c);
    double best_p = -1.0;
    int best_sub = 0, best_label = 0;
    const Eigen::MatrixXd& m = model.basis->gram();
    for (int i = 0; i < c; ++i) {
        const Subspace& sub = model.subspaces[i];
        const Eigen::VectorXd v = sub.features * (m * (x - sub.class_mean));
        const Eigen::VectorXd p = posterior(v, sub, model.priors);
        out.per_subspace_posteriors.row(i) = p.transpose();
        int k = 0;
        const double pk = p.maxCoeff(&k); // first maximum: smallest class index wins ties
        if (pk > best_p) {
            best_p = pk;
            best_sub = i;
            best_label = k;
        }
    }
    out.label = best_label + 1;
    out.winning_subspace = best_sub + 1;
    out.confidence = best_p;
    return out;
}

namespace kernels {

std::vector<Prediction> predict_rows_serial(const FcpcaModel& model, const FunctionalDataSet& data) {
    std::vector<Prediction> out(static_cast<size_t>(data.size()));
    for (Eigen::Index i = 0; i < data.size(); ++i) out[static_cast<size_t>(i)] = predict(model, data.curve(i));
    return out;
}

std::vector<Prediction> predict_rows_omp(const FcpcaModel& model, const FunctionalDataSet& data,
                                         int n_threads) {
    std::vector<Prediction> out(static_cast<size_t>(data.size()));
    const Eigen::Index n = data.size();
    const int nt = effective_threads(n_threads);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(nt)
#endif
    for (Eigen::Index i = 0; i < n; ++i) out[static_cast<size_t>(i)] = predict(model, data.curve(i));
    (void)nt;
    return out;
}

} // namespace kernels

BatchResult predict_batch(const FcpcaModel& model, const FunctionalDataSet& data, int n_threads) {
    if (data.size() == 0) raise(ErrorKind::EmptyInput, "predict_batch: empty batch");
    if (data.coeffs.cols() != model.basis->size())
        raise(ErrorKind::Dimension, "predict_batch: data basis does not match the model basis");

    BatchResult res;
    res.predictions = kernels::predict_rows_omp(model, data, n_threads);
    if (data.labeled()) {
        Eigen::Index correct = 0;
        for (Eigen::Index i = 0; i < data.size(); ++i)
            if (res.predictions[static_cast<size_t>(i)].label == data.labels[static_cast<size_t>(i)]) ++correct;
        res.accuracy = double(correct) / double(data.size());
    }
    return res;
}

} // namespace fcpca
