#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nsbfgs/errors.hpp"
#include "nsbfgs/precision.hpp"
#include "nsbfgs/vector.hpp"

namespace nsbfgs {

// Symmetric matrix in packed lower-triangle storage; symmetry holds by
// construction since only one triangle exists.
template <class S>
class SymMatrix {
  public:
    explicit SymMatrix(std::size_t n) : n_(check_dim(n)), e_(n * (n + 1) / 2, S(0)) {}

    static SymMatrix identity(std::size_t n) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = S(1);
        return m;
    }

    static SymMatrix scaled_identity(std::size_t n, const S& c) {
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
        return m;
    }

    // Builds from a full row-major n*n array; throws if it is not symmetric.
    static SymMatrix from_rows(std::size_t n, const std::vector<S>& rows) {
        if (rows.size() != n * n) throw DimensionError("SymMatrix::from_rows: bad array size");
        SymMatrix m(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                if (rows[i * n + j] != rows[j * n + i])
                    throw DimensionError("SymMatrix::from_rows: array is not symmetric");
                m.at(i, j) = rows[i * n + j];
            }
        return m;
    }

    std::size_t dim() const { return n_; }

    const S& at(std::size_t i, std::size_t j) const { return e_[index(i, j)]; }
    S& at(std::size_t i, std::size_t j) { return e_[index(i, j)]; }

    const std::vector<S>& packed() const { return e_; }

    S trace() const {
        S acc = at(0, 0);
        for (std::size_t i = 1; i < n_; ++i) acc += at(i, i);
        return acc;
    }

    S frobenius_norm() const {
        using std::sqrt;
        S acc = S(0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) acc += at(i, j) * at(i, j);
        return sqrt(acc);
    }

    bool all_finite() const {
        for (const auto& v : e_)
            if (!scalar_ops<S>::finite(v)) return false;
        return true;
    }

  private:
    static std::size_t check_dim(std::size_t n) {
        if (n == 0) throw DimensionError("SymMatrix: dimension must be positive");
        return n;
    }

    std::size_t index(std::size_t i, std::size_t j) const {
        if (i < j) std::swap(i, j);
        return i * (i + 1) / 2 + j;
    }

    std::size_t n_;
    std::vector<S> e_;
};

template <class S>
Vector<S> mat_vec(const SymMatrix<S>& m, const Vector<S>& v) {
    if (m.dim() != v.size())
        throw DimensionError("mat_vec: matrix dim " + std::to_string(m.dim()) +
                             " vs vector dim " + std::to_string(v.size()));
    require_same_precision(m.at(0, 0), v[0], "mat_vec");
    Vector<S> out(v.size());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        S acc = m.at(i, 0) * v[0];
        for (std::size_t j = 1; j < m.dim(); ++j) acc += m.at(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

} // namespace nsbfgs
