#include "fcpca/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fcpca/smoothing.hpp"
#include "fcpca/threads.hpp"

namespace fcpca {

namespace {

double wall_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<double> summarize(ExperimentSummary& s) {
    const size_t n = s.accuracies.size();
    s.mean_accuracy = std::accumulate(s.accuracies.begin(), s.accuracies.end(), 0.0) / double(n);
    double ss = 0.0;
    for (double a : s.accuracies) ss += (a - s.mean_accuracy) * (a - s.mean_accuracy);
    s.sd_accuracy = n > 1 ? std::sqrt(ss / double(n - 1)) : 0.0;
    return s.accuracies;
}

} // namespace

std::string ExperimentOptions::canonical() const {
    std::ostringstream os;
    os << "n_basis=" << n_basis << ";order=" << order << ";threshold=" << var_threshold
       << ";priors=" << (priors == PriorMode::Equal ? "equal" : "empirical") << ";k=" << k_folds
       << ";resamples=" << n_resamples << ";seed=" << seed;
    return os.str();
}

FunctionalDataSet smooth_raw(const RawDataset& raw, const ExperimentOptions& options) {
    const Eigen::Index m = raw.length();
    const int k = options.n_basis > 0 ? options.n_basis : std::min<int>(20, static_cast<int>(m));
    BasisPtr basis = make_basis(k, options.order);
    const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(m, 0.0, 1.0);
    FunctionalDataSet data = smooth(raw.samples, grid, std::move(basis), options.jobs);
    data.labels = raw.labels;
    return data;
}

ExperimentSummary cross_validate(const RawDataset& raw, const ExperimentOptions& options) {
    if (options.k_folds < 2)
        raise(ErrorKind::InvalidArgument, "cross_validate: need at least 2 folds");

    const FunctionalDataSet data = smooth_raw(raw, options);
    const int n = static_cast<int>(data.size());
    const auto folds = make_kfold(n, data.labels, options.k_folds, options.seed);
    const int k = static_cast<int>(folds.size());

    FitOptions fit_opts;
    fit_opts.var_threshold = options.var_threshold;
    fit_opts.priors = options.priors;

    ExperimentSummary out;
    out.accuracies.assign(static_cast<size_t>(k), 0.0);
    std::vector<double> runtimes(static_cast<size_t>(k), 0.0);
    std::vector<std::string> errors(static_cast<size_t>(k));

    const int nt = effective_threads(options.jobs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int f = 0; f < k; ++f) {
        try {
            const double t0 = wall_seconds();
            std::vector<char> is_test(static_cast<size_t>(n), 0);
            for (int i : folds[static_cast<size_t>(f)]) is_test[static_cast<size_t>(i)] = 1;
            std::vector<int> train_idx;
            train_idx.reserve(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i)
                if (!is_test[static_cast<size_t>(i)]) train_idx.push_back(i);

            const FcpcaModel model = fit(data.rows(train_idx), fit_opts);
            const BatchResult batch = predict_batch(model, data.rows(folds[static_cast<size_t>(f)]), 1);
            out.accuracies[static_cast<size_t>(f)] = batch.accuracy;
            runtimes[static_cast<size_t>(f)] = wall_seconds() - t0;
        } catch (const Error& e) {
            errors[static_cast<size_t>(f)] = e.what();
        }
    }
    (void)nt;
    for (int f = 0; f < k; ++f)
        if (!errors[static_cast<size_t>(f)].empty())
            raise(ErrorKind::DegenerateData,
                  raw.name + " fold " + std::to_string(f) + ": " + errors[static_cast<size_t>(f)]);

    summarize(out);
    const std::string hash = config_hash(options.canonical());
    for (int f = 0; f < k; ++f)
        out.records.push_back({raw.name, options.method_name, std::to_string(f),
                               out.accuracies[static_cast<size_t>(f)],
                               options.record_runtime ? runtimes[static_cast<size_t>(f)] : 0.0,
                               options.seed, hash});
    out.records.push_back({raw.name, options.method_name, "mean", out.mean_accuracy, 0.0, options.seed, hash});
    return out;
}

ExperimentSummary benchmark_resamples(const RawDataset& train, const RawDataset& test,
                                      const ExperimentOptions& options) {
    auto [merged, n_train] = merge_train_test(train, test);
    const FunctionalDataSet data = smooth_raw(merged, options);
    const auto splits = make_resamples(merged.labels, n_train, options.n_resamples, options.seed);
    const int r = static_cast<int>(splits.size());

    FitOptions fit_opts;
    fit_opts.var_threshold = options.var_threshold;
    fit_opts.priors = options.priors;

    ExperimentSummary out;
    out.accuracies.assign(static_cast<size_t>(r), 0.0);
    std::vector<double> runtimes(static_cast<size_t>(r), 0.0);
    std::vector<std::string> errors(static_cast<size_t>(r));

    const int nt = effective_threads(options.jobs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
    for (int i = 0; i < r; ++i) {
        try {
            const double t0 = wall_seconds();
            const FcpcaModel model = fit(data.rows(splits[static_cast<size_t>(i)].first), fit_opts);
            const BatchResult batch = predict_batch(model, data.rows(splits[static_cast<size_t>(i)].second), 1);
            out.accuracies[static_cast<size_t>(i)] = batch.accuracy;
            runtimes[static_cast<size_t>(i)] = wall_seconds() - t0;
        } catch (const Error& e) {
            errors[static_cast<size_t>(i)] = e.what();
        }
    }
    (void)nt;
    for (int i = 0; i < r; ++i)
        if (!errors[static_cast<size_t>(i)].empty())
            raise(ErrorKind::DegenerateData,
                  merged.name + " resample " + std::to_string(i) + ": " + errors[static_cast<size_t>(i)]);

    summarize(out);
    const std::string hash = config_hash(options.canonical());
    for (int i = 0; i < r; ++i)
        out.records.push_back({merged.name, options.method_name, std::to_string(i),
                               out.accuracies[static_cast<size_t>(i)],
                               options.record_runtime ? runtimes[static_cast<size_t>(i)] : 0.0,
                               options.seed, hash});
    out.records.push_back({merged.name, options.method_name, "mean", out.mean_accuracy, 0.0, options.seed, hash});
    return out;
}

} // namespace fcpca
