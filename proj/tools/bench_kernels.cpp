// Timing harness for the parallel kernels against their serial references.
// Also asserts that both lanes produce bit-identical results.
#include <chrono>
#include <cstdio>

#include "fcpca/experiment.hpp"
#include "fcpca/model.hpp"
#include "fcpca/simulate.hpp"
#include "fcpca/smoothing.hpp"
#include "fcpca/threads.hpp"

using namespace fcpca;
using clock_type = std::chrono::steady_clock;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(clock_type::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-28s %10.3f ms %10.3f ms   x%.2f   %s\n", name, serial_s * 1e3, parallel_s * 1e3,
                serial_s / parallel_s, identical ? "bit-identical" : "MISMATCH");
}

} // namespace

int main() {
    const int threads = effective_threads(0);
    std::printf("kernel benchmark, %d thread(s)\n", threads);
    std::printf("%-28s %13s %13s %7s\n", "kernel", "serial", "openmp", "speedup");

    // row-wise least-squares solves (the smoothing hot loop)
    {
        const int n = 20000, m = 256, k = 20;
        Rng rng = make_rng(1, 1);
        const Eigen::MatrixXd samples = gen_brownian(n, m, 0.2, 1.0, rng);
        auto basis = make_basis(k, 6);
        const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(m, 0.0, 1.0);
        const Eigen::MatrixXd phi = basis->design_matrix(grid);
        const Eigen::MatrixXd a = phi.transpose() * phi;
        Eigen::LLT<Eigen::MatrixXd> llt(a);
        const Eigen::MatrixXd rhs = samples * phi;

        Eigen::MatrixXd out_serial, out_omp;
        const double ts = time_best_of(3, [&] { out_serial = kernels::solve_rows_serial(llt, rhs); });
        const double tp = time_best_of(3, [&] { out_omp = kernels::solve_rows_omp(llt, rhs, 0); });
        row("smoothing row solves", ts, tp, out_serial == out_omp);
    }

    // batch prediction
    {
        SimSpec spec;
        spec.model = SimModel::BMDD3;
        spec.n_per_class = 2000;
        spec.seed = 2;
        const SimData sim = generate(spec);
        const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(spec.m, 0.0, 1.0);
        FunctionalDataSet data = smooth(sim.samples, grid, make_basis(20, 6));
        data.labels = sim.labels;
        const FcpcaModel model = fit(data);

        std::vector<Prediction> out_serial, out_omp;
        const double ts = time_best_of(3, [&] { out_serial = kernels::predict_rows_serial(model, data); });
        const double tp = time_best_of(3, [&] { out_omp = kernels::predict_rows_omp(model, data, 0); });
        bool same = out_serial.size() == out_omp.size();
        for (size_t i = 0; same && i < out_serial.size(); ++i)
            same = out_serial[i].label == out_omp[i].label &&
                   out_serial[i].per_subspace_posteriors == out_omp[i].per_subspace_posteriors;
        row("batch prediction", ts, tp, same);
    }

    // whole cross-validation runs (fold-level parallelism)
    {
        SimSpec spec;
        spec.model = SimModel::GP3;
        spec.seed = 3;
        const SimData sim = generate(spec);
        RawDataset raw;
        raw.samples = sim.samples;
        raw.labels = sim.labels;
        raw.label_values = {1, 2, 3};
        raw.name = sim.name;

        ExperimentOptions opts;
        opts.seed = 5;
        ExperimentSummary s_serial, s_par;
        opts.jobs = 1;
        const double ts = time_best_of(2, [&] { s_serial = cross_validate(raw, opts); });
        opts.jobs = 0;
        const double tp = time_best_of(2, [&] { s_par = cross_validate(raw, opts); });
        row("10-fold cross-validation", ts, tp, s_serial.accuracies == s_par.accuracies);
    }
    return 0;
}
