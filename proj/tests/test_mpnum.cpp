#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <lapacke.h>

#include "nsbfgs/eigen.hpp"
#include "nsbfgs/precision.hpp"
#include "nsbfgs/rank.hpp"
#include "nsbfgs/rng.hpp"
#include "nsbfgs/sym_matrix.hpp"
#include "nsbfgs/vector.hpp"

using namespace nsbfgs;

namespace {

SymMatrix<double> random_sym(Rng& rng, std::size_t n, double scale = 1.0) {
    SymMatrix<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.at(i, j) = scale * rng.normal();
    return m;
}

// Independent reference for eigenvalues at machine precision.
std::vector<double> lapack_eigenvalues(const SymMatrix<double>& m) {
    const int n = static_cast<int>(m.dim());
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m.at(i, j);
    std::vector<double> w(n);
    const int info = LAPACKE_dsyev(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data());
    REQUIRE(info == 0);
    return w;
}

} // namespace

TEST_CASE("PrecisionContext validation") {
    CHECK_THROWS_AS(PrecisionContext::extended(16), ConfigError);
    CHECK_NOTHROW(PrecisionContext::extended(32));
    CHECK(PrecisionContext::machine().is_machine());
}

TEST_CASE("mixing precision contexts in one operation is an error") {
    ContextGuard outer(PrecisionContext::extended(64));
    Vector<mpfloat> a{mpfloat(1), mpfloat(2)};
    Vector<mpfloat> b(2);
    {
        ContextGuard inner(PrecisionContext::extended(128));
        b = Vector<mpfloat>{mpfloat(3), mpfloat(4)};
    }
    CHECK_THROWS_AS(dot(a, b), PrecisionMismatchError);
    CHECK_THROWS_AS(a + b, PrecisionMismatchError);
}

TEST_CASE("mat_vec basics") {
    auto I = SymMatrix<double>::identity(2);
    Vector<double> v{1.0, 2.0};
    auto r = mat_vec(I, v);
    CHECK(r[0] == 1.0);
    CHECK(r[1] == 2.0);

    SymMatrix<double> z(2);
    auto zr = mat_vec(z, v);
    CHECK(zr[0] == 0.0);
    CHECK(zr[1] == 0.0);

    SymMatrix<double> m(2);
    m.at(0, 0) = 2.0;
    m.at(1, 1) = 2.0;
    m.at(1, 0) = 1.0;
    auto mv = mat_vec(m, Vector<double>{1.0, 1.0});
    CHECK(mv[0] == doctest::Approx(3.0));
    CHECK(mv[1] == doctest::Approx(3.0));

    Vector<double> w{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(mat_vec(m, w), DimensionError);
}

TEST_CASE("sym_eigen on fixed matrices") {
    SUBCASE("diagonal") {
        SymMatrix<double> d(3);
        d.at(0, 0) = 3.0;
        d.at(1, 1) = 1.0;
        d.at(2, 2) = 2.0;
        auto s = sym_eigen(d, 1e-14);
        REQUIRE(s.values.size() == 3);
        CHECK(s.values[0] == doctest::Approx(1.0));
        CHECK(s.values[1] == doctest::Approx(2.0));
        CHECK(s.values[2] == doctest::Approx(3.0));
    }
    SUBCASE("identity") {
        auto s = sym_eigen(SymMatrix<double>::identity(5), 1e-14);
        for (double v : s.values) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("2x2 analytic") {
        // [[2,1],[1,2]] has characteristic roots 1 and 3.
        SymMatrix<double> m(2);
        m.at(0, 0) = 2.0;
        m.at(1, 1) = 2.0;
        m.at(1, 0) = 1.0;
        auto s = sym_eigen(m, 1e-14, true);
        CHECK(s.values[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(s.values[1] == doctest::Approx(3.0).epsilon(1e-12));
        REQUIRE(s.vectors.has_value());
        // M q = lambda q
        for (int k = 0; k < 2; ++k) {
            auto mq = mat_vec(m, (*s.vectors)[k]);
            for (int i = 0; i < 2; ++i)
                CHECK(mq[i] == doctest::Approx(s.values[k] * (*s.vectors)[k][i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("sym_eigen matches LAPACK on random matrices, n <= 20") {
    Rng rng(7001);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform01() * 19);
        auto m = random_sym(rng, n);
        auto mine = sym_eigen(m, 1e-14);
        auto ref = lapack_eigenvalues(m);
        REQUIRE(mine.values.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            const double scale = std::max(1.0, std::abs(ref[i]));
            CHECK(std::abs(mine.values[i] - ref[i]) / scale < 1e-10);
        }
    }
}

TEST_CASE("sym_eigen shift and trace identities") {
    Rng rng(7002);
    for (int trial = 0; trial < 10; ++trial) {
        auto m = random_sym(rng, 8);
        auto s0 = sym_eigen(m, 1e-14);

        const double eps = 1e-6;
        SymMatrix<double> shifted = m;
        for (std::size_t i = 0; i < 8; ++i) shifted.at(i, i) += eps;
        auto s1 = sym_eigen(shifted, 1e-14);
        for (std::size_t i = 0; i < 8; ++i)
            CHECK(s1.values[i] == doctest::Approx(s0.values[i] + eps).epsilon(1e-9));

        double sum = 0.0;
        for (double v : s0.values) sum += v;
        CHECK(std::abs(sum - m.trace()) <= 1e-12 * m.frobenius_norm() + 1e-13);
    }
}

TEST_CASE("sym_eigen eigenvector residual within tolerance") {
    Rng rng(7003);
    auto m = random_sym(rng, 12);
    const double tol = 1e-13;
    auto s = sym_eigen(m, tol, true);
    const double fro = scalar_ops<double>::to_double(m.frobenius_norm());
    for (std::size_t k = 0; k < 12; ++k) {
        auto mq = mat_vec(m, (*s.vectors)[k]);
        for (std::size_t i = 0; i < 12; ++i)
            CHECK(std::abs(mq[i] - s.values[k] * (*s.vectors)[k][i]) <= tol * fro * 10);
    }
    // Q^T Q = I
    for (std::size_t a = 0; a < 12; ++a)
        for (std::size_t b = 0; b < 12; ++b) {
            const double d = dot((*s.vectors)[a], (*s.vectors)[b]);
            CHECK(std::abs(d - (a == b ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("sym_eigen at extended precision") {
    ContextGuard guard(PrecisionContext::extended(64));
    SymMatrix<mpfloat> m(2);
    m.at(0, 0) = mpfloat(2);
    m.at(1, 1) = mpfloat(2);
    m.at(1, 0) = mpfloat(1);
    auto s = sym_eigen(m, scalar_ops<mpfloat>::pow10(mpfloat(-54)));
    using std::abs;
    CHECK(abs(s.values[0] - 1) < scalar_ops<mpfloat>::pow10(mpfloat(-50)));
    CHECK(abs(s.values[1] - 3) < scalar_ops<mpfloat>::pow10(mpfloat(-50)));
}

TEST_CASE("rank_of_span basics") {
    const double tol = 1e-10;
    SUBCASE("collinear") {
        std::vector<Vector<double>> vs{Vector<double>{1.0, 0.0}, Vector<double>{2.0, 0.0}};
        CHECK(rank_of_span(vs, tol) == 1);
    }
    SUBCASE("zero family") {
        std::vector<Vector<double>> vs{Vector<double>{0.0, 0.0}};
        CHECK(rank_of_span(vs, tol) == 0);
    }
    SUBCASE("hand row reduction gives 2") {
        std::vector<Vector<double>> vs{Vector<double>{-2.0, 0.0}, Vector<double>{-1.0, 1.0}};
        CHECK(rank_of_span(vs, tol) == 2);
    }
}

TEST_CASE("rank_of_span invariant under permutation and scaling") {
    Rng rng(7004);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 6;
        const std::size_t k = 4;
        std::vector<Vector<double>> vs;
        // Build a family with a planted rank deficiency.
        Vector<double> base = Vector<double>::from_doubles(rng.normals(n));
        vs.push_back(base);
        vs.push_back(Vector<double>::from_doubles(rng.normals(n)));
        vs.push_back(axpy(vs[0], 2.5, vs[1])); // dependent
        vs.push_back(Vector<double>::from_doubles(rng.normals(n)));
        REQUIRE(vs.size() == k);

        const int r0 = rank_of_span(vs, 1e-10);
        CHECK(r0 == 3);

        std::vector<Vector<double>> scaled = vs;
        const double scales[4] = {3.0, -0.5, 7.0, -2.0};
        for (std::size_t i = 0; i < k; ++i) scaled[i] = scales[i] * scaled[i];
        std::reverse(scaled.begin(), scaled.end());
        CHECK(rank_of_span(scaled, 1e-10) == r0);
    }
}

TEST_CASE("finiteness guard") {
    CHECK_THROWS_AS(ensure_finite(std::numeric_limits<double>::infinity(), "value"),
                    NonFiniteError);
    CHECK(ensure_finite(1.5, "value") == 1.5);
}
