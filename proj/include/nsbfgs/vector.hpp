#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "nsbfgs/errors.hpp"
#include "nsbfgs/precision.hpp"

namespace nsbfgs {

// Dense column vector over scalar S (double or mpfloat).
template <class S>
class Vector {
  public:
    explicit Vector(std::size_t n) : e_(check_size(n), S(0)) {}
    Vector(std::size_t n, const S& fill) : e_(check_size(n), fill) {}
    explicit Vector(std::vector<S> entries) : e_(std::move(entries)) { check_size(e_.size()); }
    Vector(std::initializer_list<S> entries) : e_(entries) { check_size(e_.size()); }

    static Vector from_doubles(const std::vector<double>& v) {
        std::vector<S> e;
        e.reserve(v.size());
        for (double d : v) e.push_back(scalar_ops<S>::from_double(d));
        return Vector(std::move(e));
    }

    std::size_t size() const { return e_.size(); }
    const S& operator[](std::size_t i) const { return e_[i]; }
    S& operator[](std::size_t i) { return e_[i]; }
    const std::vector<S>& entries() const { return e_; }

    auto begin() const { return e_.begin(); }
    auto end() const { return e_.end(); }

    bool all_finite() const {
        for (const auto& v : e_)
            if (!scalar_ops<S>::finite(v)) return false;
        return true;
    }

  private:
    static std::size_t check_size(std::size_t n) {
        if (n == 0) throw DimensionError("Vector: length must be positive");
        return n;
    }

    std::vector<S> e_;
};

namespace detail {
template <class S>
void require_same_dim(const Vector<S>& a, const Vector<S>& b, const char* where) {
    if (a.size() != b.size())
        throw DimensionError(std::string(where) + ": dimension mismatch (" +
                             std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    require_same_precision(a[0], b[0], where);
}
} // namespace detail

template <class S>
S dot(const Vector<S>& a, const Vector<S>& b) {
    detail::require_same_dim(a, b, "dot");
    S acc = a[0] * b[0];
    for (std::size_t i = 1; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <class S>
S norm2(const Vector<S>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

template <class S>
Vector<S> operator+(const Vector<S>& a, const Vector<S>& b) {
    detail::require_same_dim(a, b, "vector add");
    Vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

template <class S>
Vector<S> operator-(const Vector<S>& a, const Vector<S>& b) {
    detail::require_same_dim(a, b, "vector sub");
    Vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

template <class S>
Vector<S> operator*(const S& c, const Vector<S>& a) {
    Vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

template <class S>
Vector<S> operator-(const Vector<S>& a) {
    Vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

// a + c*b
template <class S>
Vector<S> axpy(const Vector<S>& a, const S& c, const Vector<S>& b) {
    detail::require_same_dim(a, b, "axpy");
    Vector<S> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
    return out;
}

} // namespace nsbfgs
