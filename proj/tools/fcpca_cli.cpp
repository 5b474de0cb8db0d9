// fcpca: simulate / fit / predict / cv / benchmark front end.
//
// Exit codes: 0 ok, 64 usage, 65 data format, 70 numerical, 74 I/O.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "fcpca/experiment.hpp"
#include "fcpca/model_io.hpp"
#include "fcpca/simulate.hpp"
#include "fcpca/smoothing.hpp"

using namespace fcpca;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitFormat = 65;
constexpr int kExitNumeric = 70;
constexpr int kExitIo = 74;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidArgument: return kExitUsage;
    case ErrorKind::Format:
    case ErrorKind::Parse: return kExitFormat;
    case ErrorKind::Io: return kExitIo;
    default: return kExitNumeric;
    }
}

struct SharedOptions {
    int n_basis = 0; // 0 = min(20, series length)
    int order = 6;
    double threshold = 0.90;
    std::string priors = "equal";
    uint64_t seed = 0;
    int jobs = 0;
    bool record_runtime = false;

    ExperimentOptions experiment() const {
        ExperimentOptions opts;
        opts.n_basis = n_basis;
        opts.order = order;
        opts.var_threshold = threshold;
        opts.priors = priors == "empirical" ? PriorMode::Empirical : PriorMode::Equal;
        opts.seed = seed;
        opts.jobs = jobs;
        opts.record_runtime = record_runtime;
        return opts;
    }
};

void add_shared(CLI::App& app, SharedOptions& o) {
    app.add_option("--n-basis", o.n_basis, "basis functions (default: min(20, series length))")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--order", o.order, "B-spline order (degree + 1)")->check(CLI::PositiveNumber);
    app.add_option("--threshold", o.threshold, "per-class retained-variance threshold")
        ->check(CLI::Range(1e-6, 1.0));
    app.add_option("--priors", o.priors, "class priors")->check(CLI::IsMember({"equal", "empirical"}));
    app.add_option("--seed", o.seed, "master seed; all randomness derives from it");
    app.add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
    app.add_flag("--record-runtime", o.record_runtime,
                 "store measured fold runtimes in the CSV (breaks byte-reproducibility)");
}

void print_summary(const std::string& name, const ExperimentSummary& s, const char* unit) {
    std::printf("%s: accuracy %.3f (%.3f) over %zu %s\n", name.c_str(), s.mean_accuracy,
                s.sd_accuracy, s.accuracies.size(), unit);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional classwise principal component classifier"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "key=value file supplying the same options; flags win");

    SharedOptions shared;
    add_shared(app, shared);

    // --- simulate -----------------------------------------------------------
    auto* sim_cmd = app.add_subcommand("simulate", "generate a synthetic dataset in UCR layout");
    std::string sim_model, sim_out = ".";
    int sim_n = 0, sim_m = 100;
    double toy_shift = 1.0, gp3_noise = 1.0;
    bool bm_unit_scale = false;
    sim_cmd->add_option("model", sim_model, "dataset id (TOY, BMDD1..3, BMDV, BMDDV1..2, BMCP, GPDM1..2, GP3)")
        ->required();
    sim_cmd->add_option("-o,--out", sim_out, "output directory");
    sim_cmd->add_option("--n-per-class", sim_n, "curves per class (0 = model default)");
    sim_cmd->add_option("--m", sim_m, "grid points per curve");
    sim_cmd->add_option("--toy-shift", toy_shift, "phase shift of the second TOY class");
    sim_cmd->add_option("--gp3-noise-sd", gp3_noise, "GP3 white-noise standard deviation");
    sim_cmd->add_flag("--bm-unit-scale", bm_unit_scale,
                      "Brownian presets on the literal unit interval instead of unit-per-step");

    // --- cv -----------------------------------------------------------------
    auto* cv_cmd = app.add_subcommand("cv", "stratified k-fold cross-validation");
    std::string cv_data, cv_out;
    int cv_k = 10;
    cv_cmd->add_option("--data", cv_data, "labeled dataset file")->required();
    cv_cmd->add_option("--k", cv_k, "number of folds");
    cv_cmd->add_option("--out", cv_out, "results CSV (per-fold rows plus a mean row)");

    // --- benchmark ------------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("benchmark", "resampled train/test evaluation");
    std::string bm_train, bm_test, bm_out;
    int bm_resamples = 100;
    bench_cmd->add_option("--train", bm_train, "training split file")->required();
    bench_cmd->add_option("--test", bm_test, "test split file")->required();
    bench_cmd->add_option("--resamples", bm_resamples, "number of resampled splits");
    bench_cmd->add_option("--out", bm_out, "results CSV");

    // --- fit ------------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "train a model and save it");
    std::string fit_data, fit_out;
    fit_cmd->add_option("--data", fit_data, "labeled dataset file")->required();
    fit_cmd->add_option("--out", fit_out, "model file to write")->required();

    // --- predict ----------------------------------------------------------------
    auto* pred_cmd = app.add_subcommand("predict", "classify curves with a saved model");
    std::string pred_model, pred_data, pred_out;
    pred_cmd->add_option("--model", pred_model, "model file")->required();
    pred_cmd->add_option("--data", pred_data, "dataset file")->required();
    pred_cmd->add_option("--out", pred_out, "per-sample listing CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim_cmd->parsed()) {
            SimSpec spec;
            spec.model = parse_sim_model(sim_model);
            spec.n_per_class = sim_n;
            spec.m = sim_m;
            spec.seed = shared.seed;
            spec.toy_shift = toy_shift;
            spec.gp3_noise_sd = gp3_noise;
            spec.bm_step_scale = !bm_unit_scale;
            const SimData sim = generate(spec);

            RawDataset raw;
            raw.samples = sim.samples;
            raw.labels = sim.labels;
            raw.name = sim.name;
            int c = 0;
            for (int l : sim.labels) c = std::max(c, l);
            for (int l = 1; l <= c; ++l) raw.label_values.push_back(l);

            std::filesystem::create_directories(sim_out);
            const std::string path = (std::filesystem::path(sim_out) / (sim.name + ".tsv")).string();
            save_delimited(raw, path);
            std::printf("%s: N=%lld m=%lld c=%d -> %s\n", sim.name.c_str(),
                        static_cast<long long>(raw.size()), static_cast<long long>(raw.length()), c,
                        path.c_str());
        } else if (cv_cmd->parsed()) {
            if (cv_k < 2) raise(ErrorKind::InvalidArgument, "cv: --k must be at least 2");
            ExperimentOptions opts = shared.experiment();
            opts.k_folds = cv_k;
            const RawDataset raw = load_delimited(cv_data);
            const ExperimentSummary s = cross_validate(raw, opts);
            print_summary(raw.name, s, "folds");
            if (!cv_out.empty()) write_results(s.records, cv_out);
        } else if (bench_cmd->parsed()) {
            ExperimentOptions opts = shared.experiment();
            opts.n_resamples = bm_resamples;
            const RawDataset train = load_delimited(bm_train);
            const RawDataset test = load_delimited(bm_test);
            const ExperimentSummary s = benchmark_resamples(train, test, opts);
            print_summary(train.name, s, "resamples");
            if (!bm_out.empty()) write_results(s.records, bm_out);
        } else if (fit_cmd->parsed()) {
            const ExperimentOptions opts = shared.experiment();
            const RawDataset raw = load_delimited(fit_data);
            const FunctionalDataSet data = smooth_raw(raw, opts);
            FitOptions fit_opts;
            fit_opts.var_threshold = opts.var_threshold;
            fit_opts.priors = opts.priors;
            FcpcaModel model = fit(data, fit_opts);
            model.series_length = static_cast<int>(raw.length());
            model.label_values = raw.label_values;
            save_model(model, fit_out);
            std::printf("%s: fitted %d classes (K=%d) -> %s\n", raw.name.c_str(), model.class_count(),
                        model.basis->size(), fit_out.c_str());
        } else if (pred_cmd->parsed()) {
            const FcpcaModel model = load_model(pred_model);
            const RawDataset raw = load_delimited(pred_data);
            if (model.series_length > 0 && raw.length() != model.series_length)
                raise(ErrorKind::Dimension,
                      "predict: model expects series of length " + std::to_string(model.series_length) +
                          ", got " + std::to_string(raw.length()));
            const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(raw.length(), 0.0, 1.0);
            FunctionalDataSet data = smooth(raw.samples, grid, model.basis, shared.jobs);
            data.labels = raw.labels;
            const BatchResult res = predict_batch(model, data, shared.jobs);

            std::ofstream listing;
            if (!pred_out.empty()) {
                listing.open(pred_out);
                if (!listing) raise(ErrorKind::Io, "cannot open '" + pred_out + "' for writing");
                listing << "index,label,winning_subspace,confidence,true_label\n";
            }
            // compare in original label space; the file's own remapping may
            // differ from the model's when class sets diverge
            size_t correct = 0;
            for (size_t i = 0; i < res.predictions.size(); ++i) {
                const Prediction& p = res.predictions[i];
                const long long truth = raw.label_values[static_cast<size_t>(raw.labels[i] - 1)];
                const long long mapped = model.label_values.empty()
                                             ? p.label
                                             : model.label_values[static_cast<size_t>(p.label - 1)];
                if (mapped == truth) ++correct;
                std::printf("%zu\tlabel=%lld\tsubspace=%d\tconfidence=%.6f\n", i, mapped,
                            p.winning_subspace, p.confidence);
                if (listing)
                    listing << i << ',' << mapped << ',' << p.winning_subspace << ',' << p.confidence
                            << ',' << truth << '\n';
            }
            std::printf("accuracy %.3f on %zu labeled curves\n",
                        double(correct) / double(res.predictions.size()), res.predictions.size());
        }
    } catch (const Error& e) {
        std::cerr << "fcpca: error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "fcpca: error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return 0;
}
