#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fcpca/error.hpp"

namespace fcpca {

using Rng = std::mt19937_64;

/// Deterministic substream derivation: one engine per (seed, tag, index).
/// Distinct classes of one dataset get independent streams this way.
uint64_t mix_seed(uint64_t seed, uint64_t tag, uint64_t index = 0);
Rng make_rng(uint64_t seed, uint64_t tag, uint64_t index = 0);

enum class SimModel { Toy, BMDD1, BMDD2, BMDD3, BMDV, BMDDV1, BMDDV2, BMCP, GPDM1, GPDM2, GP3 };

const std::vector<std::pair<std::string, SimModel>>& sim_model_names();
SimModel parse_sim_model(const std::string& name); // InvalidArgument on unknown ids
std::string sim_model_name(SimModel model);

struct SimSpec {
    SimModel model = SimModel::BMDD1;
    int n_per_class = 0; // 0 = model default (BM 35, BMCP 30, GP3 40, Toy 15)
    int m = 100;         // grid size
    uint64_t seed = 0;
    double toy_shift = 1.0;     // the phase parameter of the second toy class
    double gp3_noise_sd = 1.0;  // white-noise scale switch
    bool bm_step_scale = true;  // unit-variance increments per grid step (see README)
};

struct SimData {
    Eigen::MatrixXd samples; // N x m, contiguous by class
    std::vector<int> labels; // 1..c
    std::string name;
};

/// Brownian motion with drift on [0,1]: X(t_k) = drift*t_k + sigma*W(t_k),
/// t_k = k/(m-1), W(0) = 0, increments N(0, dt).
Eigen::MatrixXd gen_brownian(int n, int m, double drift, double sigma, Rng& rng);

/// Two classes of 30 curves; within class k the first 10k curves are pure BM
/// and the rest carry the mean t (times `scale`, with the noise scaled to
/// match; scale = 1 reproduces the plain [0,1] model).
SimData gen_bm_changepoint(int m, Rng& rng, double scale = 1.0);

enum class GpMeanModel { GPDM1, GPDM2 };

/// Gaussian process with cov(s,t) = min(s,t); class 1 has mean 0, class 2
/// has mean t(1-t) (GPDM1) or t^2(1-t)^2 (GPDM2).
Eigen::MatrixXd gen_gp_mean(int n, int m, GpMeanModel mean_id, int cls, Rng& rng);

/// Three classes: m^k(t) + a_i sin(pi t) + eps, with m^k(t) = t^{k/5}(1-t)^{6-k/5},
/// a_i ~ N(mu_i, 0.02^2), mu_i ~ Unif(0, 0.05), eps i.i.d. N(0, noise_sd^2).
SimData gen_gp3(int n_per_class, int m, Rng& rng, double noise_sd = 1.0);

/// cos^2(2 pi t) vs cos^2(2 pi (t - shift)) plus N(0, 0.07) noise (variance 0.07).
SimData gen_toy(int n_per_class, int m, Rng& rng, double shift = 1.0);

/// Dispatch a full preset with per-class substreams derived from spec.seed.
SimData generate(const SimSpec& spec);

} // namespace fcpca
