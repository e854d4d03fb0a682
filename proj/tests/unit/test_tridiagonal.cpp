#include <doctest.h>

#include "ratingfbp/tridiagonal.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace ratingfbp;

namespace {

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(const TridiagonalSystem& s)
{
    const std::size_t n = s.size();
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0)
            a[i][i - 1] = s.lower[i];
        a[i][i] = s.diag[i];
        if (i + 1 < n)
            a[i][i + 1] = s.upper[i];
        a[i][n] = s.rhs[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        std::swap(a[c], a[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k <= n; ++k)
                a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double acc = a[i][n];
        for (std::size_t k = i + 1; k < n; ++k)
            acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side")
{
    TridiagonalSystem s(5);
    for (std::size_t i = 0; i < 5; ++i) {
        s.diag[i] = 1.0;
        s.rhs[i] = static_cast<double>(i) - 1.5;
    }
    CHECK(thomas_solve(s) == s.rhs);
}

TEST_CASE("hand-computed 2x2 system")
{
    TridiagonalSystem s(2);
    s.diag = {2.0, 2.0};
    s.upper = {-1.0, 0.0};
    s.lower = {0.0, -1.0};
    s.rhs = {1.0, 1.0};
    const auto x = thomas_solve(s);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("single row")
{
    TridiagonalSystem s(1);
    s.diag = {4.0};
    s.rhs = {2.0};
    CHECK(thomas_solve(s)[0] == 0.5);
}

TEST_CASE("random dominant systems match dense elimination")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        TridiagonalSystem s(50);
        for (std::size_t i = 0; i < 50; ++i) {
            s.lower[i] = i > 0 ? u(rng) : 0.0;
            s.upper[i] = i < 49 ? u(rng) : 0.0;
            s.diag[i] = std::abs(s.lower[i]) + std::abs(s.upper[i]) + 0.5 + std::abs(u(rng));
            s.rhs[i] = 10.0 * u(rng);
        }
        const auto x = thomas_solve(s);
        const auto ref = dense_solve(s);
        for (std::size_t i = 0; i < 50; ++i)
            CHECK(std::abs(x[i] - ref[i]) < 1e-12);
    }
}

TEST_CASE("zero pivot is reported with its row")
{
    TridiagonalSystem s(3);
    s.diag = {1.0, 1.0, 1.0};
    s.upper = {1.0, 0.0, 0.0};
    s.lower = {0.0, 1.0, 0.0};
    s.rhs = {1.0, 1.0, 1.0};
    try {
        thomas_solve(s);
        FAIL("expected ZeroPivotError");
    } catch (const ZeroPivotError& e) {
        CHECK(e.row() == 1);
    }
}

TEST_CASE("span interface reuses caller storage")
{
    TridiagonalSystem s(4);
    s.diag = {3.0, 3.0, 3.0, 3.0};
    s.lower = {0.0, -1.0, -1.0, -1.0};
    s.upper = {-1.0, -1.0, -1.0, 0.0};
    s.rhs = {2.0, 1.0, 1.0, 2.0};
    std::vector<double> x(4), scratch(4);
    thomas_solve(s.lower, s.diag, s.upper, s.rhs, x, scratch);
    for (double v : x)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}
