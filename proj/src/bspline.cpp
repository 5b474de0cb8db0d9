#include "fcpca/bspline.hpp"

#include <algorithm>
#include <cmath>

namespace fcpca {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Newton iteration on P_n, seeded with the Chebyshev-based estimate.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double pn = (n == 1) ? x : p1;
            const double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);
            if (n == 1) dp = 1.0;
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n == 1) {
        nodes[0] = 0.0;
        weights[0] = 2.0;
    }
}

BSplineBasis::BSplineBasis(int n_basis, int order, Interval interval)
    : n_basis_(n_basis), order_(order), interval_(interval) {
    if (order < 1) raise(ErrorKind::InvalidArgument, "spline order must be >= 1");
    if (n_basis < order)
        raise(ErrorKind::InvalidArgument, "invalid basis: n_basis (" + std::to_string(n_basis) +
                                              ") < order (" + std::to_string(order) + ")");
    if (!(interval.lo < interval.hi))
        raise(ErrorKind::InvalidArgument, "invalid interval: lo must be < hi");

    const int n_interior = n_basis - order;
    knots_.resize(n_basis + order);
    for (int i = 0; i < order; ++i) {
        knots_[i] = interval.lo;
        knots_[n_basis + order - 1 - i] = interval.hi;
    }
    const double step = interval.length() / (n_interior + 1);
    for (int j = 0; j < n_interior; ++j) knots_[order + j] = interval.lo + (j + 1) * step;

    // Gram assembly: loop nonempty spans, Gauss-Legendre with `order` nodes.
    std::vector<double> gl_x, gl_w, vals(order);
    gauss_legendre(order, gl_x, gl_w);
    gram_ = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (int s = order - 1; s < n_basis; ++s) {
        const double a = knots_[s], b = knots_[s + 1];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
        for (int g = 0; g < order; ++g) {
            const double t = mid + halfw * gl_x[g];
            const double w = gl_w[g] * halfw;
            const int first = nonzero_basis(t, vals.data());
            for (int i = 0; i < order; ++i)
                for (int j = i; j < order; ++j)
                    gram_(first + i, first + j) += w * vals[i] * vals[j];
        }
    }
    // computed once on the upper triangle, mirrored
    for (int i = 0; i < n_basis; ++i)
        for (int j = 0; j < i; ++j) gram_(i, j) = gram_(j, i);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
    if (es.eigenvalues().minCoeff() <= 0.0)
        raise(ErrorKind::InvalidArgument, "invalid basis: Gram matrix not positive definite");
    gram_sqrt_ = es.operatorSqrt();
    gram_inv_sqrt_ = es.operatorInverseSqrt();
}

int BSplineBasis::find_span(double t) const {
    if (t >= knots_[n_basis_]) return n_basis_ - 1;
    auto it = std::upper_bound(knots_.begin() + order_ - 1, knots_.begin() + n_basis_ + 1, t);
    int s = static_cast<int>(it - knots_.begin()) - 1;
    return std::clamp(s, order_ - 1, n_basis_ - 1);
}

int BSplineBasis::nonzero_basis(double t, double* values) const {
    if (!interval_.contains(t))
        raise(ErrorKind::Domain, "evaluation point " + std::to_string(t) + " outside interval [" +
                                     std::to_string(interval_.lo) + ", " + std::to_string(interval_.hi) + "]");
    t = std::clamp(t, interval_.lo, interval_.hi);
    const int s = find_span(t);
    const int p = order_ - 1;

    // iterative Cox-de Boor (all nonzero values in one sweep)
    std::vector<double> left(order_), right(order_);
    values[0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = t - knots_[s + 1 - j];
        right[j] = knots_[s + j] - t;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            const double denom = right[r + 1] + left[j - r];
            const double temp = denom != 0.0 ? values[r] / denom : 0.0;
            values[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        values[j] = saved;
    }
    return s - p;
}

Eigen::MatrixXd BSplineBasis::design_matrix(const Eigen::VectorXd& grid) const {
    Eigen::MatrixXd phi = Eigen::MatrixXd::Zero(grid.size(), n_basis_);
    std::vector<double> vals(order_);
    for (Eigen::Index r = 0; r < grid.size(); ++r) {
        const int first = nonzero_basis(grid[r], vals.data());
        for (int j = 0; j < order_; ++j) phi(r, first + j) = vals[j];
    }
    return phi;
}

Eigen::VectorXd BSplineBasis::evaluate(const FunctionalDatum& coeffs, const Eigen::VectorXd& grid) const {
    if (coeffs.size() != n_basis_)
        raise(ErrorKind::Dimension, "coefficient vector length " + std::to_string(coeffs.size()) +
                                        " does not match basis size " + std::to_string(n_basis_));
    Eigen::VectorXd out(grid.size());
    std::vector<double> vals(order_);
    for (Eigen::Index r = 0; r < grid.size(); ++r) {
        const int first = nonzero_basis(grid[r], vals.data());
        double acc = 0.0;
        for (int j = 0; j < order_; ++j) acc += coeffs[first + j] * vals[j];
        out[r] = acc;
    }
    return out;
}

double BSplineBasis::inner_product(const FunctionalDatum& f, const FunctionalDatum& g) const {
    if (f.size() != n_basis_ || g.size() != n_basis_)
        raise(ErrorKind::Dimension, "inner_product: coefficient length mismatch with basis");
    return f.dot(gram_ * g);
}

double BSplineBasis::l2_norm(const FunctionalDatum& f) const {
    const double q = inner_product(f, f);
    return q > 0.0 ? std::sqrt(q) : 0.0;
}

} // namespace fcpca
