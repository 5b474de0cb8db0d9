#include "fcpca/simulate.hpp"

#include <cmath>

namespace fcpca {

uint64_t mix_seed(uint64_t seed, uint64_t tag, uint64_t index) {
    // splitmix64 finalizer over the combined words
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1) + 0xbf58476d1ce4e5b9ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng make_rng(uint64_t seed, uint64_t tag, uint64_t index) { return Rng(mix_seed(seed, tag, index)); }

const std::vector<std::pair<std::string, SimModel>>& sim_model_names() {
    static const std::vector<std::pair<std::string, SimModel>> table = {
        {"TOY", SimModel::Toy},       {"BMDD1", SimModel::BMDD1}, {"BMDD2", SimModel::BMDD2},
        {"BMDD3", SimModel::BMDD3},   {"BMDV", SimModel::BMDV},   {"BMDDV1", SimModel::BMDDV1},
        {"BMDDV2", SimModel::BMDDV2}, {"BMCP", SimModel::BMCP},   {"GPDM1", SimModel::GPDM1},
        {"GPDM2", SimModel::GPDM2},   {"GP3", SimModel::GP3},
    };
    return table;
}

SimModel parse_sim_model(const std::string& name) {
    for (const auto& [id, model] : sim_model_names())
        if (id == name) return model;
    std::string valid;
    for (const auto& [id, model] : sim_model_names()) valid += (valid.empty() ? "" : ", ") + id;
    raise(ErrorKind::InvalidArgument, "unknown simulation model '" + name + "'; valid ids: " + valid);
}

std::string sim_model_name(SimModel model) {
    for (const auto& [id, m] : sim_model_names())
        if (m == model) return id;
    return "?";
}

Eigen::MatrixXd gen_brownian(int n, int m, double drift, double sigma, Rng& rng) {
    if (m < 2) raise(ErrorKind::InvalidArgument, "gen_brownian: need at least 2 grid points");
    if (!(sigma > 0.0)) raise(ErrorKind::InvalidArgument, "gen_brownian: sigma must be positive");
    const double dt = 1.0 / (m - 1);
    const double sd = sigma * std::sqrt(dt);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd x(n, m);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 0.0;
        double w = 0.0;
        for (int k = 1; k < m; ++k) {
            w += sd * gauss(rng);
            x(i, k) = drift * (k * dt) + w;
        }
    }
    return x;
}

SimData gen_bm_changepoint(int m, Rng& rng, double scale) {
    if (m < 2) raise(ErrorKind::InvalidArgument, "gen_bm_changepoint: need at least 2 grid points");
    const int per_class = 30;
    SimData out;
    out.name = "BMCP";
    out.samples.resize(2 * per_class, m);
    out.labels.assign(2 * per_class, 1);

    uint64_t class_seed[2] = {rng(), rng()};
    for (int k = 1; k <= 2; ++k) {
        Rng class_rng(class_seed[k - 1]);
        Eigen::MatrixXd y = gen_brownian(per_class, m, 0.0, std::sqrt(scale), class_rng);
        for (int i = 0; i < per_class; ++i) {
            const int row = (k - 1) * per_class + i;
            out.labels[row] = k;
            out.samples.row(row) = y.row(i);
            if (i + 1 > 10 * k) // change point: curves after index 10k gain mean t
                for (int j = 0; j < m; ++j) out.samples(row, j) += scale * (double(j) / (m - 1));
        }
    }
    return out;
}

Eigen::MatrixXd gen_gp_mean(int n, int m, GpMeanModel mean_id, int cls, Rng& rng) {
    if (cls != 1 && cls != 2) raise(ErrorKind::InvalidArgument, "gen_gp_mean: class must be 1 or 2");
    Eigen::MatrixXd x = gen_brownian(n, m, 0.0, 1.0, rng); // cov(s,t) = min(s,t)
    if (cls == 2) {
        for (int j = 0; j < m; ++j) {
            const double t = double(j) / (m - 1);
            const double base = t * (1.0 - t);
            const double mean = mean_id == GpMeanModel::GPDM1 ? base : base * base;
            x.col(j).array() += mean;
        }
    }
    return x;
}

SimData gen_gp3(int n_per_class, int m, Rng& rng, double noise_sd) {
    if (n_per_class < 1) raise(ErrorKind::InvalidArgument, "gen_gp3: n_per_class must be >= 1");
    SimData out;
    out.name = "GP3";
    out.samples.resize(3 * n_per_class, m);
    out.labels.assign(3 * n_per_class, 1);

    uint64_t class_seed[3] = {rng(), rng(), rng()};
    std::uniform_real_distribution<double> unif(0.0, 0.05);
    for (int k = 1; k <= 3; ++k) {
        Rng class_rng(class_seed[k - 1]);
        std::normal_distribution<double> gauss(0.0, 1.0);
        const double e1 = k / 5.0, e2 = 6.0 - k / 5.0;
        for (int i = 0; i < n_per_class; ++i) {
            const int row = (k - 1) * n_per_class + i;
            out.labels[row] = k;
            const double mu_i = unif(class_rng);
            const double a_i = mu_i + 0.02 * gauss(class_rng);
            for (int j = 0; j < m; ++j) {
                const double t = double(j) / (m - 1);
                const double mean = std::pow(t, e1) * std::pow(1.0 - t, e2);
                out.samples(row, j) = mean + a_i * std::sin(M_PI * t) + noise_sd * gauss(class_rng);
            }
        }
    }
    return out;
}

SimData gen_toy(int n_per_class, int m, Rng& rng, double shift) {
    if (n_per_class < 1) raise(ErrorKind::InvalidArgument, "gen_toy: n_per_class must be >= 1");
    SimData out;
    out.name = "TOY";
    out.samples.resize(2 * n_per_class, m);
    out.labels.assign(2 * n_per_class, 1);

    const double noise_sd = std::sqrt(0.07); // N(0, 0.07) read as variance
    uint64_t class_seed[2] = {rng(), rng()};
    for (int k = 1; k <= 2; ++k) {
        Rng class_rng(class_seed[k - 1]);
        std::normal_distribution<double> gauss(0.0, noise_sd);
        for (int i = 0; i < n_per_class; ++i) {
            const int row = (k - 1) * n_per_class + i;
            out.labels[row] = k;
            for (int j = 0; j < m; ++j) {
                const double t = double(j) / (m - 1);
                const double arg = k == 1 ? t : t - shift;
                const double c = std::cos(2.0 * M_PI * arg);
                out.samples(row, j) = c * c + gauss(class_rng);
            }
        }
    }
    return out;
}

namespace {

SimData bm_two_class(const SimSpec& spec, double drift2, double sigma2) {
    const int n = spec.n_per_class > 0 ? spec.n_per_class : 35;
    // Unit-variance increments per step match the reference results; they are
    // realized through the [0,1] generator via drift*(m-1), sigma*sqrt(m-1).
    const double horizon = spec.bm_step_scale ? double(spec.m - 1) : 1.0;
    SimData out;
    out.samples.resize(2 * n, spec.m);
    out.labels.assign(2 * n, 1);
    Rng r1 = make_rng(spec.seed, static_cast<uint64_t>(spec.model), 1);
    Rng r2 = make_rng(spec.seed, static_cast<uint64_t>(spec.model), 2);
    out.samples.topRows(n) = gen_brownian(n, spec.m, 0.0, std::sqrt(horizon), r1);
    out.samples.bottomRows(n) = gen_brownian(n, spec.m, drift2 * horizon, sigma2 * std::sqrt(horizon), r2);
    for (int i = 0; i < n; ++i) out.labels[n + i] = 2;
    return out;
}

} // namespace

SimData generate(const SimSpec& spec) {
    if (spec.m < 2) raise(ErrorKind::InvalidArgument, "generate: grid size must be >= 2");
    SimData out;
    switch (spec.model) {
    case SimModel::BMDD1: out = bm_two_class(spec, 0.1, 1.0); break;
    case SimModel::BMDD2: out = bm_two_class(spec, 0.3, 1.0); break;
    case SimModel::BMDD3: out = bm_two_class(spec, 0.5, 1.0); break;
    case SimModel::BMDV: out = bm_two_class(spec, 0.0, 0.5); break;
    case SimModel::BMDDV1: out = bm_two_class(spec, 0.1, 2.0); break;
    case SimModel::BMDDV2: out = bm_two_class(spec, 0.5, 2.0); break;
    case SimModel::BMCP: {
        if (spec.n_per_class != 0 && spec.n_per_class != 30)
            raise(ErrorKind::InvalidArgument, "BMCP is fixed at 30 curves per class");
        Rng rng = make_rng(spec.seed, static_cast<uint64_t>(spec.model));
        out = gen_bm_changepoint(spec.m, rng, spec.bm_step_scale ? double(spec.m - 1) : 1.0);
        break;
    }
    case SimModel::GPDM1:
    case SimModel::GPDM2: {
        const int n = spec.n_per_class > 0 ? spec.n_per_class : 35;
        const GpMeanModel id = spec.model == SimModel::GPDM1 ? GpMeanModel::GPDM1 : GpMeanModel::GPDM2;
        out.samples.resize(2 * n, spec.m);
        out.labels.assign(2 * n, 1);
        Rng r1 = make_rng(spec.seed, static_cast<uint64_t>(spec.model), 1);
        Rng r2 = make_rng(spec.seed, static_cast<uint64_t>(spec.model), 2);
        out.samples.topRows(n) = gen_gp_mean(n, spec.m, id, 1, r1);
        out.samples.bottomRows(n) = gen_gp_mean(n, spec.m, id, 2, r2);
        for (int i = 0; i < n; ++i) out.labels[n + i] = 2;
        break;
    }
    case SimModel::GP3: {
        Rng rng = make_rng(spec.seed, static_cast<uint64_t>(spec.model));
        out = gen_gp3(spec.n_per_class > 0 ? spec.n_per_class : 40, spec.m, rng, spec.gp3_noise_sd);
        break;
    }
    case SimModel::Toy: {
        Rng rng = make_rng(spec.seed, static_cast<uint64_t>(spec.model));
        out = gen_toy(spec.n_per_class > 0 ? spec.n_per_class : 15, spec.m, rng, spec.toy_shift);
        break;
    }
    }
    out.name = sim_model_name(spec.model);
    return out;
}

} // namespace fcpca
