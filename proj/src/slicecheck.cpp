#include "kap/slicecheck.hpp"
#include "kap/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace kap {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

SliceResult slice_roots(const IntPoly2& a, double eta0, double root_tol) {
    SliceResult r;
    r.eta0 = eta0;
    if (a.is_zero()) throw Error(Errc::DegenerateSlice, "zero polynomial");
    std::complex<double> l0(std::cos(eta0), std::sin(eta0));
    int dm = a.degree_m();
    std::vector<std::complex<double>> coeffs((size_t)dm + 1, 0.0);
    double magsum = 0;
    for (const auto& [k, c] : a.terms()) {
        double cd = c.get_d();
        magsum += std::abs(cd);
        std::complex<double> lp = 1.0;
        for (int i = 0; i < k.second; ++i) lp *= l0;
        coeffs[(size_t)k.first] += cd * lp;
    }
    double eps = 1e-12 * std::max(1.0, magsum);
    bool all_zero = std::all_of(coeffs.begin(), coeffs.end(),
                                [&](const std::complex<double>& c) { return std::abs(c) < eps; });
    if (all_zero) {
        // (l - e^{i eta0}) divides A: the whole m-line lies on the curve
        r.identically_zero = true;
        r.min_unit_distance = 0.0;
        r.witness_root = {1.0, 0.0};
        return r;
    }
    while (coeffs.size() > 1 && std::abs(coeffs.back()) < eps) coeffs.pop_back();
    if (coeffs.size() == 1) {
        r.min_unit_distance = std::numeric_limits<double>::infinity();
        r.n_roots = 0;
        return r;
    }
    ComplexRootSet roots = roots_univar(coeffs, root_tol);
    r.n_roots = (int)roots.roots.size();
    r.min_unit_distance = std::numeric_limits<double>::infinity();
    for (const auto& rr : roots.roots) {
        double d = std::abs(std::abs(rr.value) - 1.0);
        if (d < r.min_unit_distance) {
            r.min_unit_distance = d;
            r.witness_root = rr.value;
            r.witness_residual = rr.residual;
        }
    }
    return r;
}

SliceReport check_all_slices(const IntPoly2& a, int n, double tol) {
    if (n < 4) throw Error(Errc::BadConfig, "slice grid must have N >= 4");
    SliceReport rep;
    rep.tol = tol;
    rep.pass = true;
    for (int k = 0; k < n; ++k) {
        double eta0 = kTwoPi * k / n;
        SliceResult sr = slice_roots(a, eta0);
        if (!(sr.min_unit_distance < tol)) rep.pass = false;
        rep.slices.push_back(sr);
    }
    return rep;
}

bool deg_m_nonzero(const APolyResult& a) { return a.a_poly.degree_m() >= 1; }

CrossValidation cross_validate(const IntPoly2& a, const PillowSet& s, double tol) {
    CrossValidation cv;
    cv.tol = tol;
    double band = std::max(s.delta, 1e-9);
    for (const auto& p : s.points) {
        if (circ_dist(p.eta, 0.0) <= band) continue;
        ++cv.total;
        std::complex<double> m(std::cos(p.theta), std::sin(p.theta));
        std::complex<double> l(std::cos(p.eta), std::sin(p.eta));
        double v = std::abs(a.eval(m, l)) / a.eval_scale(m, l);
        if (v > tol) {
            ++cv.flagged;
            cv.flagged_points.push_back(p);
        }
    }
    cv.pass = cv.total == 0 || (double)cv.flagged / (double)cv.total < 0.01;
    return cv;
}

std::string slice_report_to_csv(const SliceReport& r) {
    std::string out;
    char buf[256];
    for (const auto& s : r.slices) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", s.eta0,
                      s.min_unit_distance, s.witness_root.real(), s.witness_root.imag());
        out += buf;
    }
    return out;
}

} // namespace kap
