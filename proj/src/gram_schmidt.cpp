#include "fcpca/gram_schmidt.hpp"

#include <cmath>

namespace fcpca {

std::vector<FunctionalDatum> gram_schmidt(const std::vector<FunctionalDatum>& functions,
                                          const BSplineBasis& basis, double tol) {
    if (functions.empty()) raise(ErrorKind::InvalidArgument, "gram_schmidt: empty input");
    for (const auto& f : functions)
        if (f.size() != basis.size())
            raise(ErrorKind::Dimension, "gram_schmidt: coefficient length mismatch with basis");

    std::vector<FunctionalDatum> out;
    out.reserve(functions.size());
    for (const auto& f : functions) {
        const double input_norm = basis.l2_norm(f);
        FunctionalDatum g = f;
        for (const auto& e : out) g -= basis.inner_product(g, e) * e;
        const double r = basis.l2_norm(g);
        if (r < tol * std::max(1.0, input_norm)) continue; // identically-zero residual: drop
        out.push_back(g / r);
    }
    if (out.empty())
        raise(ErrorKind::DegenerateData, "gram_schmidt: every input reduced to zero");

    double worst = 0.0;
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            worst = std::max(worst, std::abs(basis.inner_product(out[i], out[j])));
    if (worst > 1e-10) {
        // single refinement sweep; residuals stay near unit norm here
        for (size_t i = 0; i < out.size(); ++i) {
            FunctionalDatum g = out[i];
            for (size_t j = 0; j < i; ++j) g -= basis.inner_product(g, out[j]) * out[j];
            out[i] = g / basis.l2_norm(g);
        }
    }
    return out;
}

} // namespace fcpca
