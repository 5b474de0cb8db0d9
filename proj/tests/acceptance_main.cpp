// Acceptance suite: one criterion per --criterion index, one [PASS]/[FAIL]
// line per check. Exit status = number of failed checks.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fcpca/experiment.hpp"
#include "fcpca/gram_schmidt.hpp"
#include "fcpca/model_io.hpp"
#include "fcpca/simulate.hpp"
#include "fcpca/smoothing.hpp"
#include "oracles.hpp"

using namespace fcpca;

namespace {

int g_failures = 0;

void report(bool ok, const std::string& line) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", line.c_str());
    if (!ok) ++g_failures;
}

void report_skip(const std::string& line) { std::printf("[SKIP] %s\n", line.c_str()); }

std::string fmt(double v, int prec = 3) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    return buf;
}

RawDataset to_raw(const SimData& sim) {
    RawDataset raw;
    raw.samples = sim.samples;
    raw.labels = sim.labels;
    raw.name = sim.name;
    int c = 0;
    for (int l : sim.labels) c = std::max(c, l);
    for (int l = 1; l <= c; ++l) raw.label_values.push_back(l);
    return raw;
}

/// Mean 10-fold CV accuracy over seeds 0..9 with default settings.
double protocol_mean(SimModel model, int repetitions = 10) {
    double acc = 0.0;
    for (int seed = 0; seed < repetitions; ++seed) {
        SimSpec spec;
        spec.model = model;
        spec.seed = static_cast<uint64_t>(seed);
        ExperimentOptions opts;
        opts.seed = static_cast<uint64_t>(seed);
        acc += cross_validate(to_raw(generate(spec)), opts).mean_accuracy;
    }
    return acc / repetitions;
}

std::string read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

// ---------------------------------------------------------------------------

void criterion_1() {
    struct Row {
        SimModel model;
        double reference;
        double lo, hi;
    };
    const std::vector<Row> rows = {
        {SimModel::BMDD1, 0.752, 0.672, 0.832},  {SimModel::BMDD2, 0.900, 0.820, 0.980},
        {SimModel::BMDD3, 0.970, 0.900, 1.000},  {SimModel::BMDV, 0.609, 0.529, 0.689},
        {SimModel::BMDDV1, 0.679, 0.599, 0.759}, {SimModel::BMDDV2, 0.938, 0.858, 1.000},
        {SimModel::BMCP, 0.828, 0.748, 0.908},   {SimModel::GPDM1, 0.638, 0.558, 0.718},
        {SimModel::GPDM2, 0.553, 0.473, 0.633},  {SimModel::GP3, 0.632, 0.512, 0.752},
    };
    for (const Row& row : rows) {
        const double mean = protocol_mean(row.model);
        const double wide = protocol_mean(row.model, 40); // diagnostic only; the gate is 10 seeds
        report(mean >= row.lo && mean <= row.hi,
               "criterion 1: " + sim_model_name(row.model) + " 10-seed mean accuracy " + fmt(mean, 4) +
                   ", reference " + fmt(row.reference) + ", accepted [" + fmt(row.lo) + ", " +
                   fmt(row.hi) + "] (40-seed estimate " + fmt(wide, 4) + ")");
    }
}

void criterion_2() {
    const double a1 = protocol_mean(SimModel::BMDD1);
    const double a2 = protocol_mean(SimModel::BMDD2);
    const double a3 = protocol_mean(SimModel::BMDD3);
    report(a1 < a2 && a2 < a3, "criterion 2: drift-family ordering " + fmt(a1) + " < " + fmt(a2) +
                                   " < " + fmt(a3));
}

void criterion_3() {
    std::mt19937_64 seeds(1234);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int bad = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 8 + static_cast<int>(seeds() % 13); // K <= 20
        const int order = 3 + static_cast<int>(seeds() % 4);
        BSplineBasis basis(k, order);
        std::mt19937_64 rng(seeds());

        auto draw = [&](int count) {
            std::vector<FunctionalDatum> fns;
            for (int i = 0; i < count; ++i) {
                Eigen::VectorXd v(k);
                for (int j = 0; j < k; ++j) v[j] = gauss(rng);
                fns.push_back(v);
            }
            return fns;
        };
        const int p = 1 + static_cast<int>(seeds() % 5);
        const auto prefix = gram_schmidt(draw(p), basis);
        auto all = prefix;
        for (auto& f : draw(1 + static_cast<int>(seeds() % 5))) all.push_back(f);
        const auto out = gram_schmidt(all, basis);

        double dev = 0.0;
        if (out.size() < prefix.size()) dev = 1.0;
        else
            for (size_t i = 0; i < prefix.size(); ++i)
                dev = std::max(dev, (out[i] - prefix[i]).cwiseAbs().maxCoeff());
        worst = std::max(worst, dev);
        if (dev > 1e-10) ++bad;
    }
    report(bad == 0, "criterion 3: orthonormal prefixes preserved in 1000 trials (max deviation " +
                         fmt(worst, 14) + ", failures " + std::to_string(bad) + ")");
}

void criterion_4() {
    std::mt19937_64 seeds(777);
    int bad_val = 0, bad_vec = 0, checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 6 + static_cast<int>(seeds() % 15); // N <= 20
        const int m = 200;
        const int k = 8 + static_cast<int>(seeds() % 13);
        Rng rng(seeds());
        const Eigen::MatrixXd paths = gen_brownian(n, m, 0.0, 1.0, rng);
        const Eigen::VectorXd grid = Eigen::VectorXd::LinSpaced(m, 0.0, 1.0);
        const FunctionalDataSet data = smooth(paths, grid, make_basis(k, 6));
        const FpcaResult res = fpca(data, 1.0);

        Eigen::MatrixXd values(n, m);
        for (int i = 0; i < n; ++i) values.row(i) = data.basis->evaluate(data.curve(i), grid).transpose();
        const oracle::GridPca ref = oracle::grid_pca(values, 0.0, 1.0);

        const double total = res.eigenvalues.sum();
        for (int j = 0; j < res.eigenvalues.size(); ++j) {
            if (res.eigenvalues[j] < 0.01 * total) break;
            ++checked;
            if (std::abs(res.eigenvalues[j] - ref.eigenvalues[j]) > 0.02 * ref.eigenvalues[j]) ++bad_val;
            const Eigen::VectorXd f = data.basis->evaluate(res.eigenfunctions.row(j).transpose(), grid);
            if (std::abs(oracle::weighted_cosine(f, ref.eigenvectors.col(j), ref.weights)) < 0.99) ++bad_vec;
        }
    }
    report(bad_val == 0 && bad_vec == 0,
           "criterion 4: coefficient-space FPCA vs dense-grid PCA oracle on 50 datasets (" +
               std::to_string(checked) + " components >= 1% variance; eigenvalue misses " +
               std::to_string(bad_val) + ", alignment misses " + std::to_string(bad_vec) + ")");
}

void criterion_5() {
    std::mt19937_64 seeds(4242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    double worst = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        std::mt19937_64 rng(seeds());
        const int d = 2 + static_cast<int>(seeds() % 7);
        const int c = 2 + static_cast<int>(seeds() % 4);
        Eigen::MatrixXd a(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
        Subspace sub;
        sub.features = Eigen::MatrixXd::Identity(d, d);
        sub.lda_pooled_cov = a * a.transpose() + 0.3 * Eigen::MatrixXd::Identity(d, d);
        sub.lda_means.resize(c, d);
        for (int i = 0; i < c; ++i)
            for (int j = 0; j < d; ++j) sub.lda_means(i, j) = 4.0 * gauss(rng);
        sub.finalize();
        Eigen::VectorXd v(d);
        for (int j = 0; j < d; ++j) v[j] = 3.0 * gauss(rng);
        const Eigen::VectorXd priors = Eigen::VectorXd::Constant(c, 1.0 / c);

        const Eigen::VectorXd mine = posterior(v, sub, priors);
        const Eigen::VectorXd ref = oracle::gaussian_posterior(v, sub.lda_means, sub.lda_pooled_cov, priors);
        worst = std::max(worst, (mine - ref).cwiseAbs().maxCoeff());
        worst_sum = std::max(worst_sum, std::abs(mine.sum() - 1.0));
    }
    report(worst <= 1e-10 && worst_sum <= 1e-10,
           "criterion 5: posterior vs direct Gaussian-density oracle on 200 instances (max diff " +
               fmt(worst, 14) + ", max row-sum error " + fmt(worst_sum, 14) + ")");
}

void criterion_6() {
    bool ok = true;
    double worst_gram = 0.0;
    for (auto [k, order] : {std::pair{6, 3}, {10, 6}, {16, 6}, {20, 5}}) {
        BSplineBasis basis(k, order);
        const Eigen::MatrixXd ref =
            oracle::gram_by_quadrature(basis.knots(), order, k, 0.0, 1.0, 100000);
        worst_gram = std::max(worst_gram, (ref - basis.gram()).cwiseAbs().maxCoeff());
    }
    ok = ok && worst_gram <= 1e-10;
    report(worst_gram <= 1e-10,
           "criterion 6a: Gram matrices vs dense-quadrature oracle (max diff " + fmt(worst_gram, 14) + ")");

    BSplineBasis basis(14, 5);
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&] {
        Eigen::VectorXd v(14);
        for (int i = 0; i < 14; ++i) v[i] = gauss(rng);
        return v;
    };
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    bool geo_ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        const Eigen::VectorXd f = draw(), g = draw(), h = draw();
        const double a = coef(rng), b = coef(rng);
        const double lhs = basis.inner_product(a * f + b * g, h);
        const double rhs = a * basis.inner_product(f, h) + b * basis.inner_product(g, h);
        geo_ok = geo_ok && std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs));
        geo_ok = geo_ok &&
                 std::abs(basis.inner_product(f, g)) <= basis.l2_norm(f) * basis.l2_norm(g) + 1e-12;
        const double n2 = basis.l2_norm(f) * basis.l2_norm(f);
        geo_ok = geo_ok && std::abs(n2 - basis.inner_product(f, f)) <= 1e-12 * std::max(1.0, n2);
    }
    geo_ok = geo_ok && basis.l2_norm(Eigen::VectorXd::Zero(14)) == 0.0;
    report(geo_ok, "criterion 6b: bilinearity, Cauchy-Schwarz and norm identities on 500 draws");
}

void criterion_7() {
    // BM increment variance
    {
        Rng rng = make_rng(2025, 101);
        const int n = 10000, m = 50;
        const Eigen::MatrixXd x = gen_brownian(n, m, 0.5, 1.3, rng);
        const double dt = 1.0 / (m - 1);
        double mean_inc = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 1; k < m; ++k) mean_inc += x(i, k) - x(i, k - 1);
        mean_inc /= double(n) * (m - 1);
        double ss = 0.0;
        for (int i = 0; i < n; ++i)
            for (int k = 1; k < m; ++k) {
                const double d = x(i, k) - x(i, k - 1) - mean_inc;
                ss += d * d;
            }
        const double var = ss / (double(n) * (m - 1) - 1.0);
        const double want = 1.3 * 1.3 * dt;
        report(std::abs(var - want) <= 0.05 * want,
               "criterion 7a: BM increment variance " + fmt(var, 6) + " within 5% of " + fmt(want, 6));

        const double end_mean = x.col(m - 1).mean();
        report(std::abs(end_mean - 0.5) <= 3.0 * 1.3 / std::sqrt(double(n)),
               "criterion 7b: BM drift mean " + fmt(end_mean, 4) + " within the 3-sigma CI of 0.5");
    }
    // min(s,t) covariance at (0.3, 0.7)
    {
        Rng rng = make_rng(2025, 102);
        const Eigen::MatrixXd w = gen_gp_mean(10000, 11, GpMeanModel::GPDM1, 1, rng);
        const double m3 = w.col(3).mean(), m7 = w.col(7).mean();
        double cov = 0.0;
        for (int i = 0; i < 10000; ++i) cov += (w(i, 3) - m3) * (w(i, 7) - m7);
        cov /= 9999.0;
        report(std::abs(cov - 0.3) <= 0.05 * 0.3,
               "criterion 7c: empirical cov(X(0.3), X(0.7)) = " + fmt(cov, 4) + " within 5% of 0.3");
    }
}

void criterion_8() {
    const char* env = std::getenv("FCPCA_UCR_DIR");
    const std::string root = env ? env : "data/ucr";
    struct Row {
        std::string name;
        double reference;
    };
    const std::vector<Row> rows = {{"Beef", 0.782}, {"Car", 0.776}, {"ECGFiveDays", 0.908}};

    auto find_file = [&root](const std::string& name, const std::string& part) -> std::string {
        for (const char* ext : {".tsv", ".txt", ".csv"}) {
            for (const std::string candidate :
                 {root + "/" + name + "/" + name + "_" + part + ext, root + "/" + name + "_" + part + ext}) {
                if (std::filesystem::exists(candidate)) return candidate;
            }
        }
        return {};
    };

    for (const Row& row : rows) {
        const std::string train_path = find_file(row.name, "TRAIN");
        const std::string test_path = find_file(row.name, "TEST");
        if (train_path.empty() || test_path.empty()) {
            report_skip("criterion 8: " + row.name + " archive files not found under '" + root +
                        "' (set FCPCA_UCR_DIR to run)");
            continue;
        }
        const RawDataset train = load_delimited(train_path);
        const RawDataset test = load_delimited(test_path);
        ExperimentOptions opts;
        opts.n_resamples = 100;
        opts.seed = 0;
        const ExperimentSummary s = benchmark_resamples(train, test, opts);
        report(std::abs(s.mean_accuracy - row.reference) <= 0.06,
               "criterion 8: " + row.name + " 100-resample mean accuracy " + fmt(s.mean_accuracy) +
                   " vs reference " + fmt(row.reference) + " (tolerance 0.06)");
    }
}

void criterion_9() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fcpca-acceptance-determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    // library level: dataset files, result CSVs and model files
    SimSpec spec;
    spec.model = SimModel::BMDD3;
    spec.seed = 11;
    const SimData sim_a = generate(spec);
    const SimData sim_b = generate(spec);
    save_delimited(to_raw(sim_a), (dir / "a.tsv").string());
    save_delimited(to_raw(sim_b), (dir / "b.tsv").string());
    const bool sim_ok = read_bytes((dir / "a.tsv").string()) == read_bytes((dir / "b.tsv").string());
    report(sim_ok, "criterion 9a: regenerated dataset files are byte-identical");

    ExperimentOptions opts;
    opts.seed = 11;
    const RawDataset raw = load_delimited((dir / "a.tsv").string());
    write_results(cross_validate(raw, opts).records, (dir / "cv1.csv").string());
    write_results(cross_validate(raw, opts).records, (dir / "cv2.csv").string());
    report(read_bytes((dir / "cv1.csv").string()) == read_bytes((dir / "cv2.csv").string()),
           "criterion 9b: repeated cross-validation CSV bodies are byte-identical");

    ExperimentOptions fit_opts;
    const FunctionalDataSet data = smooth_raw(raw, fit_opts);
    save_model(fit(data), (dir / "m1.json").string());
    save_model(fit(data), (dir / "m2.json").string());
    report(read_bytes((dir / "m1.json").string()) == read_bytes((dir / "m2.json").string()),
           "criterion 9c: repeated fits produce byte-identical model files");

    // CLI level, when the binary location is provided
    const char* cli = std::getenv("FCPCA_CLI");
    if (!cli) {
        report_skip("criterion 9d: FCPCA_CLI not set; CLI-level determinism not exercised");
    } else {
        const std::string q = "\"" + std::string(cli) + "\"";
        auto run = [&](const std::string& args) {
            const std::string cmd = q + " " + args + " > /dev/null 2>&1";
            return std::system(cmd.c_str()) == 0;
        };
        bool ok = true;
        ok = ok && run("simulate BMDD2 --seed 5 -o " + (dir / "c1").string());
        ok = ok && run("simulate BMDD2 --seed 5 -o " + (dir / "c2").string());
        ok = ok && read_bytes((dir / "c1/BMDD2.tsv").string()) ==
                       read_bytes((dir / "c2/BMDD2.tsv").string());
        ok = ok && run("cv --data " + (dir / "c1/BMDD2.tsv").string() + " --seed 3 --out " +
                       (dir / "r1.csv").string());
        ok = ok && run("cv --data " + (dir / "c1/BMDD2.tsv").string() + " --seed 3 --out " +
                       (dir / "r2.csv").string());
        ok = ok && read_bytes((dir / "r1.csv").string()) == read_bytes((dir / "r2.csv").string());
        ok = ok && run("fit --data " + (dir / "c1/BMDD2.tsv").string() + " --out " +
                       (dir / "f1.json").string());
        ok = ok && run("fit --data " + (dir / "c1/BMDD2.tsv").string() + " --out " +
                       (dir / "f2.json").string());
        ok = ok && read_bytes((dir / "f1.json").string()) == read_bytes((dir / "f2.json").string());
        report(ok, "criterion 9d: CLI simulate/cv/fit reruns are byte-identical");
    }
    fs::remove_all(dir);
}

} // namespace

int main(int argc, char** argv) {
    int which = 0;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--criterion") which = std::atoi(argv[i + 1]);

    auto want = [&](int c) { return which == 0 || which == c; };
    if (want(1)) criterion_1();
    if (want(2)) criterion_2();
    if (want(3)) criterion_3();
    if (want(4)) criterion_4();
    if (want(5)) criterion_5();
    if (want(6)) criterion_6();
    if (want(7)) criterion_7();
    if (want(8)) criterion_8();
    if (want(9)) criterion_9();

    if (g_failures > 0) std::printf("%d acceptance check(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
