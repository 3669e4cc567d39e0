#pragma once

#include "kap/intpoly2.hpp"
#include "kap/pillowcase.hpp"
#include "kap/repsys.hpp"
#include "kap/roots.hpp"

#include <complex>
#include <string>
#include <vector>

namespace kap {

struct SliceResult {
    double eta0 = 0;
    double min_unit_distance = 0;       // min over roots of ||m| - 1|; +inf if no roots
    std::complex<double> witness_root;  // root attaining the minimum
    double witness_residual = 0;
    bool identically_zero = false;      // the slice polynomial vanished
    int n_roots = 0;
};

struct SliceReport {
    std::vector<SliceResult> slices;
    double tol = 0;
    bool pass = false; // every slice has min ||root|-1| < tol
};

// Substitute l = e^{i eta0} and report how close the m-roots come to the
// unit circle. A constant nonzero slice has no roots (distance +inf); an
// identically vanishing slice trivially meets the circle (distance 0).
SliceResult slice_roots(const IntPoly2& a, double eta0, double root_tol = 1e-7);

SliceReport check_all_slices(const IntPoly2& a, int n, double tol);

bool deg_m_nonzero(const APolyResult& a);

struct CrossValidation {
    int total = 0;    // points with eta off the abelian line
    int flagged = 0;  // points where |A| / scale exceeded tol
    std::vector<PillowPoint> flagged_points; // 0-dimensional component candidates
    double tol = 0;
    bool pass = false; // flagged fraction < 1%
};

CrossValidation cross_validate(const IntPoly2& a, const PillowSet& s, double tol);

std::string slice_report_to_csv(const SliceReport& r);

} // namespace kap
