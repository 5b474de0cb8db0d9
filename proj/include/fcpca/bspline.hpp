#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "fcpca/error.hpp"

namespace fcpca {

/// Closed interval carrying the common domain of all curves.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;

    double length() const noexcept { return hi - lo; }
    bool contains(double t, double slack = 1e-12) const noexcept {
        const double eps = slack * (hi - lo);
        return t >= lo - eps && t <= hi + eps;
    }
};

/// A curve is its coefficient vector against a BSplineBasis.
using FunctionalDatum = Eigen::VectorXd;

/// B-spline basis of a given order (= degree + 1) on an interval, with
/// uniformly spaced interior knots and boundary knots repeated `order`
/// times. The L2 Gram matrix M[j,k] = ∫ B_j B_k is assembled once per
/// knot span by Gauss-Legendre quadrature with `order` nodes, which is
/// exact for the degree-2(order-1) product polynomials. M^{1/2} and
/// M^{-1/2} are cached for the FPCA eigenproblem.
///
/// Immutable after construction; safe to share across threads.
class BSplineBasis {
public:
    BSplineBasis(int n_basis, int order, Interval interval = {});

    int size() const noexcept { return n_basis_; }
    int order() const noexcept { return order_; }
    const Interval& interval() const noexcept { return interval_; }
    const std::vector<double>& knots() const noexcept { return knots_; }

    const Eigen::MatrixXd& gram() const noexcept { return gram_; }
    const Eigen::MatrixXd& gram_sqrt() const noexcept { return gram_sqrt_; }
    const Eigen::MatrixXd& gram_inv_sqrt() const noexcept { return gram_inv_sqrt_; }

    /// Values of the `order` basis functions that are nonzero at t.
    /// Returns the index of the first one; `values` must hold `order` doubles.
    /// Throws Domain if t lies outside the interval.
    int nonzero_basis(double t, double* values) const;

    /// m x K matrix of all basis functions evaluated at the grid points.
    Eigen::MatrixXd design_matrix(const Eigen::VectorXd& grid) const;

    /// Pointwise values of the curve with the given coefficients.
    Eigen::VectorXd evaluate(const FunctionalDatum& coeffs, const Eigen::VectorXd& grid) const;

    /// Exact L2 inner product <f,g> = c_f' M c_g.
    double inner_product(const FunctionalDatum& f, const FunctionalDatum& g) const;

    /// L2 norm sqrt(<f,f>); tiny negative quadratic forms clamp to zero.
    double l2_norm(const FunctionalDatum& f) const;

private:
    int find_span(double t) const;

    int n_basis_ = 0;
    int order_ = 0;
    Interval interval_;
    std::vector<double> knots_; // n_basis + order entries, nondecreasing
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd gram_sqrt_;
    Eigen::MatrixXd gram_inv_sqrt_;
};

using BasisPtr = std::shared_ptr<const BSplineBasis>;

inline BasisPtr make_basis(int n_basis, int order, Interval interval = {}) {
    return std::make_shared<const BSplineBasis>(n_basis, order, interval);
}

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

} // namespace fcpca
