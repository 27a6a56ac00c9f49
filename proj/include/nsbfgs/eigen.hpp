#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "nsbfgs/errors.hpp"
#include "nsbfgs/precision.hpp"
#include "nsbfgs/sym_matrix.hpp"
#include "nsbfgs/vector.hpp"

namespace nsbfgs {

// Eigenvalues sorted ascending, optionally with an orthonormal eigenvector
// per eigenvalue (vectors[j] belongs to values[j]).
template <class S>
struct Spectrum {
    std::vector<S> values;
    std::optional<std::vector<Vector<S>>> vectors;

    const S& min() const { return values.front(); }
    const S& max() const { return values.back(); }
};

// Symmetric eigensolver: cyclic Jacobi rotations. Precision-agnostic and
// accurate for symmetric matrices at any digit count, which is why it is used
// here instead of a tridiagonalization pipeline. Cost is O(n^3) per sweep;
// fine for the intended n <= ~200.
//
// Stops when the off-diagonal Frobenius norm falls to tol * ||M||_F. Throws
// ConvergenceError after 30 full sweeps (pathological input or a tolerance
// below what the scalar type can resolve).
template <class S>
Spectrum<S> sym_eigen(const SymMatrix<S>& m, const S& tol, bool want_vectors = false) {
    using std::abs;
    using std::sqrt;

    if (!(tol > S(0))) throw ConfigError("sym_eigen: tol must be positive");

    const std::size_t n = m.dim();
    // Dense working copy; rotations touch rows and columns.
    std::vector<S> a(n * n, S(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.at(i, j);

    std::vector<S> q; // eigenvector accumulator, row-major
    if (want_vectors) {
        q.assign(n * n, S(0));
        for (std::size_t i = 0; i < n; ++i) q[i * n + i] = S(1);
    }

    const S fro = m.frobenius_norm();
    const S stop = tol * fro;

    auto off_norm = [&]() {
        S acc = S(0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) acc += S(2) * a[i * n + j] * a[i * n + j];
        return sqrt(acc);
    };

    constexpr int kMaxSweeps = 30;
    bool converged = (n == 1) || !(off_norm() > stop);

    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const S apq = a[p * n + qq];
                if (apq == S(0)) continue;

                // Stable rotation parameters (Golub & Van Loan 8.4).
                const S theta = (a[qq * n + qq] - a[p * n + p]) / (S(2) * apq);
                S t;
                if (theta >= S(0))
                    t = S(1) / (theta + sqrt(theta * theta + S(1)));
                else
                    t = S(-1) / (-theta + sqrt(theta * theta + S(1)));
                const S c = S(1) / sqrt(t * t + S(1));
                const S s = t * c;
                const S tau = s / (S(1) + c);

                const S app = a[p * n + p];
                const S aqq2 = a[qq * n + qq];
                a[p * n + p] = app - t * apq;
                a[qq * n + qq] = aqq2 + t * apq;
                a[p * n + qq] = S(0);
                a[qq * n + p] = S(0);

                for (std::size_t r = 0; r < n; ++r) {
                    if (r != p && r != qq) {
                        const S arp = a[r * n + p];
                        const S arq = a[r * n + qq];
                        a[r * n + p] = a[p * n + r] = arp - s * (arq + tau * arp);
                        a[r * n + qq] = a[qq * n + r] = arq + s * (arp - tau * arq);
                    }
                    if (want_vectors) {
                        const S qrp = q[r * n + p];
                        const S qrq = q[r * n + qq];
                        q[r * n + p] = qrp - s * (qrq + tau * qrp);
                        q[r * n + qq] = qrq + s * (qrp - tau * qrq);
                    }
                }
            }
        }
        converged = !(off_norm() > stop);
    }

    if (!converged)
        throw ConvergenceError("sym_eigen: no convergence after 30 sweeps (n=" +
                               std::to_string(n) + ")");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });

    Spectrum<S> out;
    out.values.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.values.push_back(a[order[k] * n + order[k]]);

    if (want_vectors) {
        std::vector<Vector<S>> cols;
        cols.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            Vector<S> col(n);
            for (std::size_t r = 0; r < n; ++r) col[r] = q[r * n + order[k]];
            cols.push_back(std::move(col));
        }
        out.vectors = std::move(cols);
    }
    return out;
}

// Spectral norm of a symmetric matrix: largest |eigenvalue|.
template <class S>
S spectral_norm(const SymMatrix<S>& m, const S& tol) {
    using std::abs;
    const auto spec = sym_eigen(m, tol);
    S best = abs(spec.values.front());
    for (const auto& v : spec.values) {
        const S a = abs(v);
        if (a > best) best = a;
    }
    return best;
}

} // namespace nsbfgs
