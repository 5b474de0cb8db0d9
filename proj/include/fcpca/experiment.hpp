#pragma once

#include <string>
#include <vector>

#include "fcpca/dataio.hpp"
#include "fcpca/dataset.hpp"
#include "fcpca/model.hpp"

namespace fcpca {

struct ExperimentOptions {
    int n_basis = 0; // 0 = min(20, series length)
    int order = 6;
    double var_threshold = 0.90;
    PriorMode priors = PriorMode::Equal;
    int k_folds = 10;
    int n_resamples = 100;
    uint64_t seed = 0;
    int jobs = 0;              // 0 = all cores
    bool record_runtime = false; // keep CSV bodies reproducible by default
    std::string method_name = "fcpca";

    std::string canonical() const; // stable string for config hashing
};

struct ExperimentSummary {
    std::vector<ResultRecord> records; // per fold/resample, plus the "mean" row
    std::vector<double> accuracies;    // per fold/resample, in index order
    double mean_accuracy = 0.0;
    double sd_accuracy = 0.0; // sample standard deviation over folds
};

/// Smooth once, then run stratified k-fold CV (fit on k-1 folds, score the
/// held-out fold). Folds execute on an OpenMP worker pool; record order is
/// by fold index regardless of scheduling.
ExperimentSummary cross_validate(const RawDataset& raw, const ExperimentOptions& options);

/// Bagnall-style resampling: resample 0 is the original split, later ones
/// redraw train/test preserving the per-class counts.
ExperimentSummary benchmark_resamples(const RawDataset& train, const RawDataset& test,
                                      const ExperimentOptions& options);

/// Smooth a raw dataset on the implied equally spaced [0,1] grid.
FunctionalDataSet smooth_raw(const RawDataset& raw, const ExperimentOptions& options);

} // namespace fcpca
