#include <doctest.h>

#include "fcpca/simulate.hpp"

using namespace fcpca;

TEST_CASE("brownian paths start at zero and reject bad parameters") {
    Rng rng = make_rng(1, 1);
    const Eigen::MatrixXd x = gen_brownian(50, 30, 0.7, 1.3, rng);
    CHECK(x.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(x.rows() == 50);
    CHECK(x.cols() == 30);
    Rng rng2 = make_rng(1, 2);
    CHECK_THROWS_AS(gen_brownian(5, 30, 0.0, 0.0, rng2), Error);
    CHECK_THROWS_AS(gen_brownian(5, 30, 0.0, -1.0, rng2), Error);
    CHECK_THROWS_AS(gen_brownian(5, 1, 0.0, 1.0, rng2), Error);
}

TEST_CASE("brownian drift and increment variance match the model") {
    const int n = 10000, m = 50;
    Rng rng = make_rng(2024, 3);
    const Eigen::MatrixXd x = gen_brownian(n, m, 0.5, 1.0, rng);

    const double end_mean = x.col(m - 1).mean();
    CHECK(std::abs(end_mean - 0.5) <= 3.0 / std::sqrt(double(n)));

    const double dt = 1.0 / (m - 1);
    double ss = 0.0, mean_inc = 0.0;
    const Eigen::Index count = Eigen::Index(n) * (m - 1);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k < m; ++k) mean_inc += x(i, k) - x(i, k - 1);
    mean_inc /= double(count);
    for (int i = 0; i < n; ++i)
        for (int k = 1; k < m; ++k) {
            const double d = x(i, k) - x(i, k - 1) - mean_inc;
            ss += d * d;
        }
    const double var = ss / double(count - 1);
    CHECK(std::abs(var - dt) <= 0.05 * dt);
}

TEST_CASE("change-point dataset layout and mean structure") {
    Rng rng = make_rng(9, 4);
    const SimData d = gen_bm_changepoint(50, rng);
    REQUIRE(d.samples.rows() == 60);
    int c1 = 0, c2 = 0;
    for (int l : d.labels) (l == 1 ? c1 : c2)++;
    CHECK(c1 == 30);
    CHECK(c2 == 30);

    // Monte Carlo over redraws: pure-BM curves have mean 0 at t=1, shifted
    // curves have mean 1 (the deterministic part is t), and the shift counts
    // per class are 20 and 10.
    const int reps = 4000;
    double pure_sum = 0.0, shift1_sum = 0.0, shift2_sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng rr = make_rng(555, 5, static_cast<uint64_t>(r));
        const SimData s = gen_bm_changepoint(20, rr);
        pure_sum += s.samples(4, 19);      // curve 5 of class 1: pure BM
        shift1_sum += s.samples(15, 19);   // curve 16 of class 1: shifted
        shift2_sum += s.samples(30 + 25, 19); // curve 26 of class 2: shifted
        if (r == 0) {
            for (int i = 0; i < 30; ++i) CHECK(s.labels[static_cast<size_t>(i)] == 1);
            for (int i = 30; i < 60; ++i) CHECK(s.labels[static_cast<size_t>(i)] == 2);
        }
    }
    const double ci = 3.0 / std::sqrt(double(reps)); // sd of X(1) is 1
    CHECK(std::abs(pure_sum / reps) <= ci);
    CHECK(std::abs(shift1_sum / reps - 1.0) <= ci);
    CHECK(std::abs(shift2_sum / reps - 1.0) <= ci);
}

TEST_CASE("gp mean models: endpoints, midpoint value, min covariance") {
    Rng rng = make_rng(7, 6);
    const Eigen::MatrixXd a = gen_gp_mean(3, 11, GpMeanModel::GPDM1, 2, rng);
    CHECK(a.col(0).cwiseAbs().maxCoeff() == 0.0); // t(1-t) vanishes and W(0)=0

    // GPDM2 class-2 mean at t=1/2 is 1/16
    const int reps = 10000;
    double mid = 0.0;
    for (int r = 0; r < reps; ++r) {
        Rng rr = make_rng(808, 7, static_cast<uint64_t>(r));
        const Eigen::MatrixXd x = gen_gp_mean(1, 11, GpMeanModel::GPDM2, 2, rr);
        mid += x(0, 5);
    }
    mid /= reps;
    const double sd_mid = std::sqrt(0.5);
    CHECK(std::abs(mid - 0.0625) <= 3.0 * sd_mid / std::sqrt(double(reps)));

    // empirical cov(X(0.3), X(0.7)) close to min(0.3, 0.7) = 0.3
    Rng rng3 = make_rng(33, 8);
    const Eigen::MatrixXd w = gen_gp_mean(10000, 11, GpMeanModel::GPDM1, 1, rng3);
    const double m3 = w.col(3).mean(), m7 = w.col(7).mean();
    double cov = 0.0;
    for (int i = 0; i < 10000; ++i) cov += (w(i, 3) - m3) * (w(i, 7) - m7);
    cov /= 9999.0;
    CHECK(std::abs(cov - 0.3) <= 0.05 * 0.3);

    CHECK_THROWS_AS(gen_gp_mean(2, 11, GpMeanModel::GPDM1, 3, rng3), Error);
}

TEST_CASE("gp3 mean surface and sinusoid coefficients") {
    // m^k at the boundary is exactly zero; with the noise switched off the
    // samples expose a_i directly at t = 1/2
    Rng rng = make_rng(11, 9);
    const SimData d = gen_gp3(3400, 3, rng, 0.0);
    REQUIRE(d.samples.rows() == 3 * 3400);
    CHECK(d.samples.col(0).cwiseAbs().maxCoeff() == 0.0);
    // at t=1 only a_i * sin(pi) remains, which is a_i * O(1e-16)
    CHECK(d.samples.col(2).cwiseAbs().maxCoeff() <= 1e-15);

    // class 1 at t=1/2: m^1(1/2) = (1/2)^6 = 0.015625 plus a_i
    const double m1_half = 0.015625;
    double a_mean = 0.0, a_ss = 0.0;
    const int n = 3400;
    for (int i = 0; i < n; ++i) a_mean += d.samples(i, 1) - m1_half;
    a_mean /= n;
    for (int i = 0; i < n; ++i) {
        const double dev = d.samples(i, 1) - m1_half - a_mean;
        a_ss += dev * dev;
    }
    const double a_sd = std::sqrt(a_ss / (n - 1));
    CHECK(std::abs(a_mean - 0.025) <= 3.0 * a_sd / std::sqrt(double(n)));
    CHECK(a_mean >= 0.0);
    CHECK(a_mean <= 0.05);
}

TEST_CASE("toy generator: class-1 level, coinciding means at shift 1, noise variance") {
    const int n = 10000;
    Rng rng = make_rng(21, 10);
    const SimData d = gen_toy(n, 5, rng, 1.0);

    // E X(0) = cos^2(0) = 1 for class 1
    const double lvl = d.samples.col(0).head(n).mean();
    const double sd = std::sqrt(0.07);
    CHECK(std::abs(lvl - 1.0) <= 3.0 * sd / std::sqrt(double(n)));

    // with shift 1 the cos^2 means coincide between classes at every point
    for (int j = 0; j < 5; ++j) {
        const double diff = d.samples.col(j).head(n).mean() - d.samples.col(j).tail(n).mean();
        CHECK(std::abs(diff) <= 3.0 * sd * std::sqrt(2.0 / double(n)));
    }

    // per-point sample variance near 0.07
    for (int j : {0, 2, 4}) {
        const double mean = d.samples.col(j).head(n).mean();
        double ss = 0.0;
        for (int i = 0; i < n; ++i) ss += (d.samples(i, j) - mean) * (d.samples(i, j) - mean);
        const double var = ss / (n - 1);
        CHECK(std::abs(var - 0.07) <= 0.05 * 0.07);
    }
}

TEST_CASE("presets are deterministic with class-independent streams") {
    for (const auto& [name, model] : sim_model_names()) {
        SimSpec spec;
        spec.model = model;
        spec.m = 40;
        spec.seed = 99;
        const SimData a = generate(spec);
        const SimData b = generate(spec);
        CHECK(a.samples == b.samples);
        CHECK(a.labels == b.labels);
        CHECK(a.name == name);

        spec.seed = 100;
        const SimData c = generate(spec);
        CHECK(a.samples != c.samples);

        // labels contiguous by class
        for (size_t i = 1; i < a.labels.size(); ++i) CHECK(a.labels[i] >= a.labels[i - 1]);
    }

    SimSpec spec;
    spec.model = SimModel::BMDD3;
    spec.seed = 7;
    const SimData d = generate(spec);
    CHECK(d.samples.rows() == 70);
    CHECK(d.samples.cols() == 100);
    CHECK(*std::max_element(d.labels.begin(), d.labels.end()) == 2);

    CHECK_THROWS_AS(parse_sim_model("NOPE"), Error);
    CHECK(parse_sim_model("GPDM2") == SimModel::GPDM2);
}
