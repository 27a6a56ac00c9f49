#pragma once

#include <cstddef>
#include <vector>

#include "nsbfgs/eigen.hpp"
#include "nsbfgs/errors.hpp"
#include "nsbfgs/sym_matrix.hpp"
#include "nsbfgs/vector.hpp"

namespace nsbfgs {

// Numerical rank of span(vs): the number of singular values above
// tol * sigma_max. Singular values are taken as the square roots of the
// Gram-matrix eigenvalues, reusing the one symmetric eigensolver instead of a
// separate SVD; adequate at the sizes this library targets.
//
// Squaring halves the resolvable dynamic range: Gram eigenvalues of exactly
// dependent directions come out at ~eps * lambda_max, so ratios
// sigma/sigma_max below ~sqrt(n * eps) are indistinguishable from zero and
// are clamped. Use an extended-precision context when finer rank decisions
// are needed.
template <class S>
int rank_of_span(const std::vector<Vector<S>>& vs, const S& tol) {
    using std::sqrt;

    if (vs.empty()) throw DimensionError("rank_of_span: empty family");
    if (!(tol > S(0))) throw ConfigError("rank_of_span: tol must be positive");
    const std::size_t dim = vs[0].size();
    for (const auto& v : vs)
        if (v.size() != dim) throw DimensionError("rank_of_span: mixed dimensions");

    const std::size_t k = vs.size();
    SymMatrix<S> gram(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j <= i; ++j) gram.at(i, j) = dot(vs[i], vs[j]);

    const S eps = scalar_ops<S>::eps_of(gram.at(0, 0));
    const auto spec = sym_eigen(gram, S(1e4) * eps);

    const S lambda_max = spec.values.back();
    if (!(lambda_max > S(0))) return 0; // all-zero family

    const S lambda_floor = S(64 * static_cast<long>(dim)) * eps * lambda_max;
    const S lambda_cut = tol * tol * lambda_max;
    int rank = 0;
    for (const auto& lambda : spec.values) {
        if (lambda > lambda_floor && lambda > lambda_cut) ++rank;
    }
    return rank;
}

} // namespace nsbfgs
