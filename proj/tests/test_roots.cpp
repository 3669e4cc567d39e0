#include <doctest.h>

#include "kap/error.hpp"
#include "kap/roots.hpp"

#include <cmath>
#include <random>

using namespace kap;
using cd = std::complex<double>;

TEST_CASE("quadratic m^2 + 1") {
    auto rs = roots_univar({1.0, 0.0, 1.0}, 1e-10);
    REQUIRE(rs.roots.size() == 2);
    CHECK(std::abs(rs.roots[0].value - cd(0, -1)) < 1e-12);
    CHECK(std::abs(rs.roots[1].value - cd(0, 1)) < 1e-12);
}

TEST_CASE("degree zero errors") {
    CHECK_THROWS_WITH_AS(roots_univar({2.0}, 1e-10), doctest::Contains("DegreeZero"), Error);
    CHECK_THROWS_AS(roots_univar({}, 1e-10), Error);
    CHECK_THROWS_AS(roots_univar({5.0, 0.0}, 1e-10), Error); // constant after stripping
}

TEST_CASE("m^6 + 1 has unit roots") {
    std::vector<cd> c(7, 0.0);
    c[0] = 1.0;
    c[6] = 1.0;
    auto rs = roots_univar(c, 1e-10);
    REQUIRE(rs.roots.size() == 6);
    for (const auto& r : rs.roots) {
        CHECK(std::abs(std::abs(r.value) - 1.0) < 1e-12);
        CHECK(std::abs(std::pow(r.value, 6) + 1.0) < 1e-10);
    }
}

TEST_CASE("roots at the origin") {
    // x^2 (x - 1)
    auto rs = roots_univar({0.0, 0.0, -1.0, 1.0}, 1e-10);
    REQUIRE(rs.roots.size() == 3);
    int zeros = 0;
    for (const auto& r : rs.roots)
        if (std::abs(r.value) == 0.0) ++zeros;
    CHECK(zeros == 2);
}

TEST_CASE("random polynomials re-expand") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> coef(-9, 9);
    std::uniform_int_distribution<int> degd(2, 8);
    for (int trial = 0; trial < 25; ++trial) {
        int deg = degd(rng);
        std::vector<cd> c((size_t)deg + 1);
        for (auto& x : c) x = (double)coef(rng);
        while (std::abs(c.back()) == 0.0) c.back() = (double)coef(rng);
        ComplexRootSet rs;
        try {
            rs = roots_univar(c, 1e-7);
        } catch (const Error&) {
            continue; // may strip to degree < 1
        }
        // re-expand prod (x - r_i) * lc
        std::vector<cd> out{c.back()};
        for (const auto& r : rs.roots) {
            std::vector<cd> next(out.size() + 1, 0.0);
            for (size_t i = 0; i < out.size(); ++i) {
                next[i + 1] += out[i];
                next[i] -= out[i] * r.value;
            }
            out = next;
        }
        double maxc = 0;
        for (const auto& x : c) maxc = std::max(maxc, std::abs(x));
        for (size_t i = 0; i < c.size() && i < out.size(); ++i)
            CHECK(std::abs(out[i] - c[i]) / maxc < 1e-8);
    }
}

TEST_CASE("residual scale convention") {
    auto rs = roots_univar({-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1e8}, 1e-8);
    for (const auto& r : rs.roots) CHECK(r.residual < 1e-8);
}
