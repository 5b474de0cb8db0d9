#pragma once

#include <vector>

#include "fcpca/bspline.hpp"

namespace fcpca {

/// Modified Gram-Schmidt in the L2 geometry of `basis`.
///
/// Inputs whose residual norm falls below tol * max(1, ||f||) are discarded,
/// so the output may be shorter than the input; order is preserved and the
/// span is unchanged. An already-orthonormal prefix passes through intact.
/// One re-orthogonalization sweep runs if any off-diagonal Gramian entry of
/// the first pass exceeds 1e-10.
std::vector<FunctionalDatum> gram_schmidt(const std::vector<FunctionalDatum>& functions,
                                          const BSplineBasis& basis, double tol = 1e-8);

} // namespace fcpca
