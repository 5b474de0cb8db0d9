#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fcpca/dataset.hpp"
#include "fcpca/fpca.hpp"

namespace fcpca {

enum class PriorMode { Equal, Empirical };

struct FitOptions {
    double var_threshold = 0.90; // per-class FPCA truncation
    PriorMode priors = PriorMode::Equal;
    double gs_tol = 1e-8; // zero-discarding tolerance in the orthonormalization
};

/// One class's feature subspace: its FPCA eigenfunctions followed by the
/// orthonormalized grand-minus-class mean-difference functions, plus the
/// LDA parameters estimated from the projections of all training curves.
struct Subspace {
    int class_index = 0;            // 1-based
    FunctionalDatum class_mean;     // K
    Eigen::MatrixXd features;       // d x K, rows orthonormal in L2
    int n_fpc = 0;                  // leading rows that are eigenfunctions (q_i)
    Eigen::MatrixXd lda_means;      // c x d, row l = eta_l
    Eigen::MatrixXd lda_pooled_cov; // d x d SPD after regularization

    int dim() const noexcept { return static_cast<int>(features.rows()); }

    /// Cached Cholesky of lda_pooled_cov; rebuilt after fit/deserialize.
    void finalize();
    const Eigen::LLT<Eigen::MatrixXd>& cov_llt() const { return cov_llt_; }

private:
    Eigen::LLT<Eigen::MatrixXd> cov_llt_;
};

struct FcpcaModel {
    BasisPtr basis;
    FunctionalDatum grand_mean;
    std::vector<Subspace> subspaces; // one per class, ordered 1..c
    Eigen::VectorXd priors;          // length c, sums to 1
    int series_length = 0;           // raw length the model was trained on (0 = unchecked)
    std::vector<long long> label_values; // original label of each class, when known

    int class_count() const noexcept { return static_cast<int>(subspaces.size()); }
};

struct Prediction {
    int label = 0;             // predicted class (1-based)
    int winning_subspace = 0;  // 1-based subspace index j
    double confidence = 0.0;   // p^(j)
    Eigen::MatrixXd per_subspace_posteriors; // c x c, row i = posterior in subspace i
};

struct BatchResult {
    std::vector<Prediction> predictions;
    double accuracy = -1.0; // fraction correct; -1 when the batch is unlabeled
};

/// Train on labeled curves: per-class FPCA, mean-difference augmentation,
/// Gram-Schmidt, then per-subspace LDA on the projections of all N curves.
FcpcaModel fit(const FunctionalDataSet& train, const FitOptions& options = {});

/// LDA posterior over classes for a projected coefficient vector.
Eigen::VectorXd posterior(const Eigen::VectorXd& v, const Subspace& subspace,
                          const Eigen::VectorXd& priors);

/// Classify one curve: best class within each subspace, then the subspace
/// with the largest maximum posterior wins. Ties break to the smaller index.
Prediction predict(const FcpcaModel& model, const FunctionalDatum& x);

BatchResult predict_batch(const FcpcaModel& model, const FunctionalDataSet& data, int n_threads = 0);

namespace kernels {
/// Serial reference for the batch-prediction loop (bit-identical to the
/// OpenMP lane used by predict_batch).
std::vector<Prediction> predict_rows_serial(const FcpcaModel& model, const FunctionalDataSet& data);
std::vector<Prediction> predict_rows_omp(const FcpcaModel& model, const FunctionalDataSet& data,
                                         int n_threads);
} // namespace kernels

} // namespace fcpca
