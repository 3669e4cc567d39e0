#pragma once

#include "kap/presentation.hpp"
#include "kap/shear.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace kap {

struct Quat {
    double w = 1, x = 0, y = 0, z = 0;

    Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y + y * o.w + z * o.x - x * o.z,
                w * o.z + z * o.w + x * o.y - y * o.x};
    }
    Quat conj() const { return {w, -x, -y, -z}; }
    double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
    double dist_id() const {
        return std::sqrt((w - 1) * (w - 1) + x * x + y * y + z * z);
    }
};

Quat quat_word(const Word& word, const std::vector<Quat>& gens);

// Boundary-holonomy angle pair with a solution witness.
struct PillowPoint {
    double theta = 0;
    double eta = 0;
    std::vector<Quat> witness; // one quaternion per generator; empty if transformed
    double residual = 0;
};

struct PillowSet {
    std::vector<PillowPoint> points; // sorted by (theta, eta)
    int theta_grid = 0;
    double delta = 0; // declared sampling resolution
    std::string label;

    static PillowSet from_points(std::vector<PillowPoint> pts, double delta,
                                 const std::string& label, int theta_grid = 0);
};

double wrap_2pi(double a);                       // into [0, 2pi)
double circ_dist(double a, double b);            // distance on R/2piZ
double torus_dist(double t1, double e1, double t2, double e2); // max metric

// All boundary angle pairs at meridian angle theta, including the abelian
// point (theta, 0). Bisection on a signed relator defect over the
// conjugation slice; general presentations fall back to a coarse
// grid-plus-descent search.
std::vector<PillowPoint> su2_solve_slice(const KnotPresentation& p, double theta,
                                         int n_seeds, double tol);

PillowSet compute_pillowcase(const KnotPresentation& p, int n_theta, double tol);

// Independent solver: real Riley-parameter roots at m = e^{i theta}.
PillowSet compute_pillowcase_riley(const KnotPresentation& p, int n_theta, double tol);

PillowSet pillow_translate(const PillowSet& s, double a, double b);

enum class ShearAxis { ThetaByEta, EtaByTheta };
PillowSet pillow_shear(const PillowSet& s, const ShearFn& h, ShearAxis axis);

// (theta, eta) -> (-theta, -eta)
PillowSet pillow_negate(const PillowSet& s);

double hausdorff(const PillowSet& a, const PillowSet& b);

struct SymmetryReport {
    double dist_translation = 0; // S vs S + (pi, 0)
    double dist_negation = 0;    // S vs -S
    bool pass = false;
    double delta = 0;
};
SymmetryReport check_symmetries(const PillowSet& s, double delta);

std::string pillowset_to_csv(const PillowSet& s);
PillowSet pillowset_from_csv(const std::string& text, const std::string& label = "csv");
std::string pillowset_to_json(const PillowSet& s, bool witnesses);

} // namespace kap
