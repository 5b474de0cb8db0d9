#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fcpca/bspline.hpp"

namespace fcpca {

/// A set of curves on one shared basis: row i of `coeffs` is curve i.
/// `labels` holds class indices in 1..c and may be empty for unlabeled data.
struct FunctionalDataSet {
    BasisPtr basis;
    Eigen::MatrixXd coeffs; // N x K
    std::vector<int> labels;

    Eigen::Index size() const noexcept { return coeffs.rows(); }
    bool labeled() const noexcept { return !labels.empty(); }

    FunctionalDatum curve(Eigen::Index i) const { return coeffs.row(i).transpose(); }

    /// Subset by row indices (labels carried along when present).
    FunctionalDataSet rows(const std::vector<int>& idx) const {
        FunctionalDataSet out;
        out.basis = basis;
        out.coeffs.resize(static_cast<Eigen::Index>(idx.size()), coeffs.cols());
        for (size_t r = 0; r < idx.size(); ++r) out.coeffs.row(static_cast<Eigen::Index>(r)) = coeffs.row(idx[r]);
        if (labeled()) {
            out.labels.reserve(idx.size());
            for (int i : idx) out.labels.push_back(labels[static_cast<size_t>(i)]);
        }
        return out;
    }
};

} // namespace fcpca
