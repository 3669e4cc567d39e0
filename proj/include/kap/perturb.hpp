#pragma once

#include "kap/pillowcase.hpp"
#include "kap/shear.hpp"

#include <array>
#include <string>
#include <vector>

namespace kap {

// Sampling-robust separation certificate between the sheared set and the
// (0,pi)-translate: passes iff margin > 2*delta*(1 + lipschitz).
struct Certificate {
    double margin = 0;
    double delta = 0;
    double lipschitz = 0;
    bool pass = false;
    std::string context;
};

// Chain of angle relations at a glued critical point:
//   eta_-1 = eta_0,  theta_-1 - theta_0 = f1'(eta_0)
//   (theta^_0, eta^_0) = +-(theta_0, eta_0)
//   theta^_0 = theta_1,  eta^_0 - eta_1 = f2'(theta_1)
// with the convention f' = -g.
struct CriticalMatch {
    double theta_m1, eta_m1;
    double theta_0, eta_0;
    double theta_h0, eta_h0;
    double theta_1, eta_1;
    int sign_branch; // +1 or -1
    double residual;
};

struct AvoidancePlan {
    ShearFn g1, g2;
    Certificate cert;
};

// T := (S + (g1,*)) + (*,g2) against U := S + (0,pi); margin is the minimum
// torus max-metric distance over pairs (pi when either set is empty).
Certificate check_certificate(const PillowSet& s, const ShearFn& g1, const ShearFn& g2);

// Choose odd 2pi-periodic shears so the transformed set avoids S + (0,pi),
// by largest-gap selection per band. |g2| < pi/2 always. Throws
// Error(Infeasible) when a point sits at (k pi, +-pi) or no gap survives.
AvoidancePlan plan_finite_avoidance(const PillowSet& s, const std::string& context = "");

// Five-segment corridor path construction. S_K is the (0,-pi)-translate of
// the pillowcase image; eta0 in [pi, 2pi) (smaller values are reflected).
// Returns g with the graph inside the widened corridor; *margin_out gets the
// verified clearance. Throws SliceBlocked / CorridorTooNarrow.
ShearFn plan_slice_path(const PillowSet& s_k, double eta0, double* margin_out = nullptr);

// Path segments c1..c5 for rendering and tests: axis-aligned segments
// {(x0,y0),(x1,y1)}.
std::vector<std::array<double, 4>> slice_path_segments(double eta0);

std::vector<CriticalMatch> enumerate_critical_points(const PillowSet& p1,
                                                     const PillowSet& p2,
                                                     const ShearFn& g1, const ShearFn& g2,
                                                     double tol);

} // namespace kap
