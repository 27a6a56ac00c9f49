#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nsbfgs/errors.hpp"
#include "nsbfgs/piecewise.hpp"
#include "nsbfgs/precision.hpp"
#include "nsbfgs/rank.hpp"
#include "nsbfgs/vector.hpp"

namespace nsbfgs {

// Minimal-norm point of a convex hull plus the convex weights realizing it.
// residual_norm is the Euclidean norm of min_norm_point; duality_gap is the
// certificate max_i <w, w - p_i> at exit.
template <class S>
struct CriticalityCertificate {
    Vector<S> min_norm_point;
    std::vector<S> coefficients;
    S residual_norm;
    S duality_gap;
    bool converged = false;
    int iterations = 0;
};

// Pairwise Frank-Wolfe for the min-norm point of conv(points). Each step
// moves mass from the current worst vertex to the best one with an exact
// line search, so 1/2 ||w||^2 never increases. Stops once the duality gap
// max_i <w, w - p_i> drops to tol * (1 + ||w||^2); if the cap is hit first,
// the last (= best) iterate is returned with converged = false.
template <class S>
CriticalityCertificate<S> min_norm_convex_hull(const std::vector<Vector<S>>& points,
                                               const S& tol, int max_iter = 10000) {
    if (points.empty()) throw DimensionError("min_norm_convex_hull: empty point set");
    if (!(tol > S(0))) throw ConfigError("min_norm_convex_hull: tol must be positive");
    if (max_iter < 1) throw ConfigError("min_norm_convex_hull: max_iter must be >= 1");
    const std::size_t d = points[0].size();
    for (const auto& p : points)
        if (p.size() != d) throw DimensionError("min_norm_convex_hull: mixed dimensions");

    const std::size_t k = points.size();
    std::vector<S> alpha(k, S(0));

    // Start at the shortest vertex.
    std::size_t start = 0;
    S start_norm = dot(points[0], points[0]);
    for (std::size_t i = 1; i < k; ++i) {
        const S nn = dot(points[i], points[i]);
        if (nn < start_norm) {
            start_norm = nn;
            start = i;
        }
    }
    alpha[start] = S(1);

    auto combine = [&](const std::vector<S>& a) {
        Vector<S> w(d, points[0][0] - points[0][0]); // zero in the points' context
        for (std::size_t i = 0; i < k; ++i)
            if (!(a[i] == S(0))) w = axpy(w, a[i], points[i]);
        return w;
    };

    CriticalityCertificate<S> cert{Vector<S>(d), {}, S(0), S(0), false, 0};
    int it = 0;
    for (; it < max_iter; ++it) {
        const Vector<S> w = combine(alpha);
        const S ww = dot(w, w);

        std::size_t fw = 0, away = k;
        S g_fw{}, g_away{};
        for (std::size_t i = 0; i < k; ++i) {
            const S gi = dot(w, points[i]);
            if (i == 0 || gi < g_fw) {
                g_fw = gi;
                fw = i;
            }
            if (alpha[i] > S(0) && (away == k || gi > g_away)) {
                g_away = gi;
                away = i;
            }
        }

        const S gap = ww - g_fw;
        if (gap <= tol * (S(1) + ww)) {
            cert.converged = true;
            break;
        }

        const Vector<S> dir = points[fw] - points[away];
        const S dd = dot(dir, dir);
        if (!(dd > S(0))) break; // support degenerated onto the FW vertex

        S gamma = (g_away - g_fw) / dd;
        if (gamma > alpha[away]) gamma = alpha[away];
        alpha[fw] += gamma;
        alpha[away] -= gamma;
        if (alpha[away] < S(0)) alpha[away] = S(0);
    }

    // Tidy the weights so the certificate invariants hold exactly.
    S total = S(0);
    for (auto& a : alpha) {
        if (a < S(0)) a = S(0);
        total += a;
    }
    for (auto& a : alpha) a /= total;

    cert.min_norm_point = combine(alpha);
    cert.coefficients = std::move(alpha);
    cert.residual_norm = norm2(cert.min_norm_point);
    cert.iterations = it;
    {
        const S ww = dot(cert.min_norm_point, cert.min_norm_point);
        S g_min = dot(cert.min_norm_point, points[0]);
        for (std::size_t i = 1; i < k; ++i) {
            const S gi = dot(cert.min_norm_point, points[i]);
            if (gi < g_min) g_min = gi;
        }
        cert.duality_gap = ww - g_min;
        if (!cert.converged) cert.converged = cert.duality_gap <= tol * (S(1) + ww);
    }
    return cert;
}

// Clarke criticality test: 0 within crit_tol * (1 + max gradient norm) of the
// convex hull of the gradients active at x.
template <class S>
std::pair<bool, CriticalityCertificate<S>>
is_critical(const PiecewiseFunction<S>& f, const Vector<S>& x, const Tolerances<S>& tols) {
    const auto as = f.active_sets(x, tols.tie_tol, tols.grad_tol);
    std::vector<Vector<S>> grads;
    grads.reserve(as.active.size());
    for (int i : as.active) grads.push_back(f.selection(static_cast<std::size_t>(i)).gradient(x));

    auto cert = min_norm_convex_hull(grads, tols.hull_tol, tols.hull_max_iter);

    S max_norm = norm2(grads[0]);
    for (std::size_t i = 1; i < grads.size(); ++i) {
        const S n = norm2(grads[i]);
        if (n > max_norm) max_norm = n;
    }
    const bool critical = cert.residual_norm <= tols.crit_tol * (S(1) + max_norm);
    return {critical, std::move(cert)};
}

template <class S>
struct A2Check {
    bool holds = false;
    std::vector<S> weights;
    std::string diagnostic;
};

// Stability of the vanishing convex combination at x*: all m gradients carry
// strictly positive weight and are affinely independent. m > n+1 can never
// satisfy the affine-independence part.
template <class S>
A2Check<S> check_A2_1(const PiecewiseFunction<S>& f, const Vector<S>& x_star, const S& tol) {
    const std::size_t m = f.pieces();
    const std::size_t n = x_star.size();
    A2Check<S> out;
    if (m > n + 1) {
        out.diagnostic = "m > n+1: affine independence impossible";
        return out;
    }

    std::vector<Vector<S>> grads;
    grads.reserve(m);
    for (std::size_t i = 0; i < m; ++i) grads.push_back(f.selection(i).gradient(x_star));

    if (m >= 2) {
        std::vector<Vector<S>> diffs;
        diffs.reserve(m - 1);
        for (std::size_t i = 1; i < m; ++i) diffs.push_back(grads[i] - grads[0]);
        if (rank_of_span(diffs, tol) != static_cast<int>(m - 1)) {
            out.diagnostic = "gradients affinely dependent";
            return out;
        }
    }

    // Resolving the residual to `tol` needs a duality gap around tol^2.
    auto cert = min_norm_convex_hull(grads, tol * tol, 20000);
    if (!(cert.residual_norm <= tol)) {
        out.diagnostic = "0 not in the convex hull of the gradients";
        return out;
    }
    for (const auto& a : cert.coefficients)
        if (!(a >= tol)) {
            out.diagnostic = "a gradient carries (numerically) zero weight";
            return out;
        }

    out.holds = true;
    out.weights = std::move(cert.coefficients);
    return out;
}

// Orthonormal basis of span({g_i - g_0 : i >= 1}) via modified Gram-Schmidt
// with largest-residual pivoting; dim is the numerical rank of the family.
// The span does not depend on which gradient anchors the differences.
template <class S>
std::pair<std::vector<Vector<S>>, int>
nspace_basis(const std::vector<Vector<S>>& grads, const S& tol) {
    if (grads.empty()) throw DimensionError("nspace_basis: empty gradient family");
    if (!(tol > S(0))) throw ConfigError("nspace_basis: tol must be positive");
    if (grads.size() == 1) return {{}, 0};

    std::vector<Vector<S>> work;
    work.reserve(grads.size() - 1);
    for (std::size_t i = 1; i < grads.size(); ++i) work.push_back(grads[i] - grads[0]);

    S max_norm = norm2(work[0]);
    for (std::size_t i = 1; i < work.size(); ++i) {
        const S n = norm2(work[i]);
        if (n > max_norm) max_norm = n;
    }
    if (!(max_norm > S(0))) return {{}, 0};
    const S cutoff = tol * max_norm;

    std::vector<Vector<S>> basis;
    std::vector<bool> used(work.size(), false);
    for (;;) {
        std::size_t pick = work.size();
        S best{};
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            const S n = norm2(work[i]);
            if (pick == work.size() || n > best) {
                best = n;
                pick = i;
            }
        }
        if (pick == work.size() || !(best > cutoff)) break;

        used[pick] = true;
        Vector<S> q = (S(1) / best) * work[pick];
        for (std::size_t i = 0; i < work.size(); ++i) {
            if (used[i]) continue;
            work[i] = axpy(work[i], -dot(q, work[i]), q);
        }
        basis.push_back(std::move(q));
    }
    return {std::move(basis), static_cast<int>(basis.size())};
}

} // namespace nsbfgs
