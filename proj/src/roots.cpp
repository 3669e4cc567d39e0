#include "kap/roots.hpp"
#include "kap/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kap {

namespace {

constexpr int kMaxSweeps = 200;

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> x) {
    std::complex<double> s = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
    return s;
}

} // namespace

ComplexRootSet roots_univar(std::vector<std::complex<double>> coeffs, double tol) {
    while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2)
        throw Error(Errc::DegreeZero, "polynomial has no roots to find");

    ComplexRootSet out;
    // exact roots at the origin
    size_t zero_roots = 0;
    while (zero_roots + 1 < coeffs.size() && coeffs[zero_roots] == 0.0) ++zero_roots;
    if (zero_roots > 0) coeffs.erase(coeffs.begin(), coeffs.begin() + (long)zero_roots);

    size_t deg = coeffs.size() - 1;
    std::vector<std::complex<double>> deriv(deg);
    for (size_t i = 1; i <= deg; ++i) deriv[i - 1] = coeffs[i] * (double)i;

    double maxc = 0;
    for (const auto& c : coeffs) maxc = std::max(maxc, std::abs(c));

    std::vector<std::complex<double>> z(deg);
    if (deg >= 1) {
        double radius = 1.0;
        for (size_t i = 0; i < deg; ++i)
            radius = std::max(radius, 1.0 + std::abs(coeffs[i] / coeffs[deg]));
        for (size_t k = 0; k < deg; ++k) {
            double ang = 2.0 * std::numbers::pi * (double)k / (double)deg + 0.4;
            z[k] = radius * std::complex<double>(std::cos(ang), std::sin(ang));
        }
    }

    int sweeps = 0;
    for (; sweeps < kMaxSweeps; ++sweeps) {
        double max_step = 0;
        for (size_t k = 0; k < deg; ++k) {
            std::complex<double> p = horner(coeffs, z[k]);
            if (p == 0.0) continue;
            std::complex<double> dp = horner(deriv, z[k]);
            if (dp == 0.0) {
                z[k] += 1e-8 * (1.0 + std::abs(z[k]));
                max_step = 1;
                continue;
            }
            std::complex<double> newton = p / dp;
            std::complex<double> sum = 0;
            for (size_t j = 0; j < deg; ++j) {
                if (j == k) continue;
                std::complex<double> d = z[k] - z[j];
                if (d == 0.0) d = 1e-14;
                sum += 1.0 / d;
            }
            std::complex<double> denom = 1.0 - newton * sum;
            std::complex<double> w = (denom == 0.0) ? newton : newton / denom;
            z[k] -= w;
            max_step = std::max(max_step, std::abs(w) / (1.0 + std::abs(z[k])));
        }
        if (max_step < 1e-15) break;
    }
    out.iterations = sweeps;

    for (size_t i = 0; i < zero_roots; ++i)
        out.roots.push_back({{0.0, 0.0}, 0.0, 1});
    double worst = 0;
    for (size_t k = 0; k < deg; ++k) {
        double scale = maxc * std::pow(std::max(1.0, std::abs(z[k])), (double)deg);
        double res = std::abs(horner(coeffs, z[k])) / scale;
        worst = std::max(worst, res);
        out.roots.push_back({z[k], res, 1});
    }
    if (worst > tol) {
        std::ostringstream os;
        os << "Aberth residual " << worst << " > tol " << tol << " after " << sweeps << " sweeps";
        throw Error(Errc::NonConvergence, os.str());
    }

    std::sort(out.roots.begin(), out.roots.end(), [](const RootRec& a, const RootRec& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    // multiplicity hints from clustering
    for (size_t i = 0; i < out.roots.size(); ++i) {
        int count = 1;
        for (size_t j = 0; j < out.roots.size(); ++j) {
            if (j == i) continue;
            double eps = 1e-6 * (1.0 + std::abs(out.roots[i].value));
            if (std::abs(out.roots[i].value - out.roots[j].value) < eps) ++count;
        }
        out.roots[i].multiplicity_hint = count;
    }
    return out;
}

} // namespace kap
