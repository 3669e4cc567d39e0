#pragma once

#include <complex>
#include <vector>

namespace kap {

struct RootRec {
    std::complex<double> value;
    double residual = 0.0;        // |P(value)| / (max|c| * max(1,|value|)^deg)
    int multiplicity_hint = 1;
};

struct ComplexRootSet {
    std::vector<RootRec> roots; // sorted by (real, imag)
    int iterations = 0;
};

// All complex roots of sum_i coeffs[i] x^i by simultaneous Aberth-Ehrlich
// iteration; deterministic initialization on a circle of radius
// 1 + max|c_i/c_deg|. Throws DegreeZero / NonConvergence.
ComplexRootSet roots_univar(std::vector<std::complex<double>> coeffs, double tol);

} // namespace kap
