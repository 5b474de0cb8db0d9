#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fcpca/error.hpp"

namespace fcpca {

/// Raw (unsmoothed) series with labels remapped to contiguous 1..c.
/// `label_values[l-1]` is the original value that became class l.
struct RawDataset {
    Eigen::MatrixXd samples; // N x m
    std::vector<int> labels; // 1..c
    std::vector<long long> label_values;
    std::string name;

    Eigen::Index size() const noexcept { return samples.rows(); }
    Eigen::Index length() const noexcept { return samples.cols(); }
    int class_count() const noexcept { return static_cast<int>(label_values.size()); }
};

/// UCR-style delimited file: one series per line, label in the first column.
/// '\0' as delimiter auto-detects tab vs comma from the first line.
RawDataset load_delimited(const std::string& path, char delimiter = '\0');

/// Inverse of load_delimited; values printed with 17 significant digits so a
/// reload is bit-identical. Labels are written as the original values.
void save_delimited(const RawDataset& dataset, const std::string& path, char delimiter = '\t');

/// Concatenate a train/test pair under one consistent label remapping.
/// Returns the combined dataset and the original train size.
std::pair<RawDataset, int> merge_train_test(const RawDataset& train, const RawDataset& test);

/// Stratified k-fold partition: folds are disjoint, cover 0..n-1, and each
/// fold holds floor or ceil of n_l/k samples of every class l.
std::vector<std::vector<int>> make_kfold(int n, const std::vector<int>& labels, int k, uint64_t seed);

/// Train/test resamples preserving the original split's per-class counts.
/// Resample 0 is the original split (indices 0..n_train-1 against the rest).
std::vector<std::pair<std::vector<int>, std::vector<int>>>
make_resamples(const std::vector<int>& labels, int n_train, int n_resamples, uint64_t seed);

struct ResultRecord {
    std::string dataset;
    std::string method;
    std::string fold_id; // fold/resample index, or "mean" for the summary row
    double accuracy = 0.0;
    double runtime_seconds = 0.0;
    uint64_t seed = 0;
    std::string config_hash;
};

/// CSV with the fixed header
/// dataset,method,fold,accuracy,runtime_seconds,seed,config_hash.
/// Appends (header-checked) when the file already has content.
void write_results(const std::vector<ResultRecord>& rows, const std::string& path);
std::vector<ResultRecord> read_results(const std::string& path);

/// FNV-1a over a canonical config string, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical);

} // namespace fcpca
