#include "kap/perturb.hpp"
#include "kap/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace kap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pm(double a) { return std::remainder(a, kTwoPi); }

// fold a value into [-pi/2, pi/2) modulo pi
double fold_mod_pi(double v) {
    double r = std::fmod(v, kPi);
    if (r < -kPi / 2) r += kPi;
    if (r >= kPi / 2) r -= kPi;
    return r;
}

// planner geometry: gap that splits groups, ramp width, clearance kept to
// forbidden values, theta radius within which eta-levels constrain
constexpr double kGroupGap = 0.25;
constexpr double kRamp = 0.08;
constexpr double kClear = 0.03;
constexpr double kGuard = 0.5;

struct Band {
    double lo = 0, hi = 0;            // coordinate interval in [0, pi]
    std::vector<double> forbidden;    // values to keep clear of
    std::vector<std::pair<double, double>> blocked; // intervals to avoid entirely
    double value = 0;
};

// Partition sorted coordinates into bands broken at gaps > kGroupGap. Each
// band spans [first, last] of its member coordinates; the shear takes one
// constant value on each band, so members see their chosen value exactly.
std::vector<Band> make_bands(std::vector<double> coords) {
    std::sort(coords.begin(), coords.end());
    std::vector<Band> out;
    for (double x : coords) {
        if (out.empty() || x - out.back().hi > kGroupGap) {
            Band b;
            b.lo = b.hi = x;
            out.push_back(b);
        } else {
            out.back().hi = x;
        }
    }
    return out;
}

Band* band_of(std::vector<Band>& bands, double x) {
    for (auto& b : bands)
        if (x >= b.lo - 1e-12 && x <= b.hi + 1e-12) return &b;
    return nullptr;
}

// Largest free piece of [lo, hi] minus blocked intervals, split at forbidden
// values; midpoint of the largest piece, ties toward the smallest midpoint.
bool pick_value(const Band& band, double lo, double hi, double& out) {
    std::vector<std::pair<double, double>> free{{lo, hi}};
    for (const auto& [a, b] : band.blocked) {
        std::vector<std::pair<double, double>> next;
        for (const auto& [x, y] : free) {
            if (b <= x || a >= y) {
                next.push_back({x, y});
                continue;
            }
            if (a > x) next.push_back({x, a});
            if (b < y) next.push_back({b, y});
        }
        free = next;
    }
    double best_len = -1, best_mid = 0;
    for (const auto& [x, y] : free) {
        std::vector<double> cuts{x, y};
        for (double v : band.forbidden)
            if (v > x && v < y) cuts.push_back(v);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double len = cuts[i + 1] - cuts[i];
            double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            if (len > best_len + 1e-15 ||
                (std::abs(len - best_len) <= 1e-15 && mid < best_mid)) {
                best_len = len;
                best_mid = mid;
            }
        }
    }
    if (best_len <= 2 * kClear) return false;
    out = best_mid;
    return true;
}

bool zero_allowed(const Band& band) {
    for (const auto& [a, b] : band.blocked)
        if (a < 0 && b > 0) return false;
    for (double f : band.forbidden)
        if (std::abs(f) < kClear) return false;
    return true;
}

// Emit plateau knots for the bands; bands pinned against an endpoint must
// carry value zero (checked by the caller).
ShearFn bands_to_shear(const std::vector<Band>& bands) {
    std::vector<std::pair<double, double>> knots;
    for (const auto& b : bands) {
        double lo = std::max(0.0, b.lo - 1e-9), hi = std::min(kPi, b.hi + 1e-9);
        if (b.value == 0.0) continue;
        if (lo - kRamp > 0) knots.push_back({lo - kRamp, 0.0});
        knots.push_back({std::max(lo, 1e-9), b.value});
        knots.push_back({std::min(hi, kPi - 1e-9), b.value});
        if (hi + kRamp < kPi) knots.push_back({hi + kRamp, 0.0});
    }
    return ShearFn::from_knots(std::move(knots));
}

} // namespace

Certificate check_certificate(const PillowSet& s, const ShearFn& g1, const ShearFn& g2) {
    PillowSet t = pillow_shear(pillow_shear(s, g1, ShearAxis::ThetaByEta), g2,
                               ShearAxis::EtaByTheta);
    PillowSet u = pillow_translate(s, 0.0, kPi);
    Certificate cert;
    cert.delta = s.delta;
    cert.lipschitz = std::max(g1.lipschitz(), g2.lipschitz());
    cert.context = "sheared " + s.label + " vs its (0,pi) translate";
    if (t.points.empty() || u.points.empty()) {
        cert.margin = kPi; // torus max-metric diameter
        cert.pass = true;
        return cert;
    }
    double margin = 1e300;
    for (const auto& a : t.points)
        for (const auto& b : u.points)
            margin = std::min(margin, torus_dist(a.theta, a.eta, b.theta, b.eta));
    cert.margin = margin;
    cert.pass = margin > 2.0 * cert.delta * (1.0 + cert.lipschitz);
    return cert;
}

AvoidancePlan plan_finite_avoidance(const PillowSet& s, const std::string& context) {
    const double line_eps = 1e-9;

    // hypothesis: no point at (k pi, +-pi)
    {
        std::vector<std::string> blockers;
        for (const auto& p : s.points)
            for (double kth : {0.0, kPi})
                if (torus_dist(p.theta, p.eta, kth, kPi) < line_eps) {
                    std::ostringstream os;
                    os << "(" << p.theta << ", " << p.eta << ")";
                    blockers.push_back(os.str());
                }
        if (!blockers.empty()) {
            std::string msg = "points at (k pi, pi):";
            for (const auto& b : blockers) msg += " " + b;
            throw Error(Errc::Infeasible, msg + (context.empty() ? "" : " [" + context + "]"));
        }
    }

    std::vector<const PillowPoint*> offline;
    for (const auto& p : s.points)
        if (circ_dist(p.eta, 0.0) > line_eps) offline.push_back(&p);

    // ---- phase 1: g1 = theta-shift by eta; shifted points leave theta = k pi
    auto fold_eta = [](double eta) { return eta <= kPi ? eta : kTwoPi - eta; };
    std::vector<double> coords1;
    for (const auto* p : offline) coords1.push_back(fold_eta(p->eta));
    auto bands1 = make_bands(coords1);
    for (const auto* p : offline) {
        Band* b = band_of(bands1, fold_eta(p->eta));
        if (!b) continue;
        // need theta + g1(eta) != 0 (mod pi); on the mirrored half the odd
        // extension flips the sign of the value
        double f = p->eta <= kPi ? fold_mod_pi(-p->theta) : fold_mod_pi(p->theta);
        b->forbidden.push_back(f);
    }
    for (auto& b : bands1) {
        bool pinned = b.lo < kRamp || b.hi > kPi - kRamp;
        if (pinned) {
            if (!zero_allowed(b))
                throw Error(Errc::Infeasible,
                            "band at eta in [" + std::to_string(b.lo) + ", " +
                                std::to_string(b.hi) +
                                "] is pinned to zero but zero is not clear" +
                                (context.empty() ? "" : " [" + context + "]"));
            b.value = 0;
            continue;
        }
        if (!pick_value(b, -kPi / 2 + 0.05, kPi / 2 - 0.05, b.value))
            throw Error(Errc::Infeasible,
                        "no free gap for g1 on eta band [" + std::to_string(b.lo) + ", " +
                            std::to_string(b.hi) + "]");
    }
    ShearFn g1 = bands_to_shear(bands1);

    // ---- phase 2: g2 = eta-shift by theta; separate from S + (0, pi)
    PillowSet t1 = pillow_shear(s, g1, ShearAxis::ThetaByEta);
    PillowSet u = pillow_translate(s, 0.0, kPi);
    std::vector<const PillowPoint*> t1_off, u_off;
    for (const auto& p : t1.points)
        if (circ_dist(p.eta, 0.0) > line_eps) t1_off.push_back(&p);
    for (const auto& p : u.points)
        if (circ_dist(p.eta, kPi) > line_eps) u_off.push_back(&p);

    auto fold_theta = [](double th) { return th <= kPi ? th : kTwoPi - th; };
    std::vector<double> coords2;
    for (const auto* p : t1_off) coords2.push_back(fold_theta(p->theta));
    for (const auto* p : u_off) coords2.push_back(fold_theta(p->theta));
    auto bands2 = make_bands(coords2);

    for (const auto* p : t1_off) {
        Band* b = band_of(bands2, fold_theta(p->theta));
        if (!b) continue;
        bool mirrored = p->theta > kPi;
        // eta + g2(theta) must avoid every nearby eta-level of U
        for (const auto& uq : u.points) {
            if (circ_dist(uq.theta, p->theta) > kGuard) continue;
            double d = wrap_pm(uq.eta - p->eta);
            b->forbidden.push_back(mirrored ? -d : d);
        }
    }
    for (const auto* p : u_off) {
        Band* b = band_of(bands2, fold_theta(p->theta));
        if (!b) continue;
        bool mirrored = p->theta > kPi;
        double lev = wrap_pm(p->eta);
        if (mirrored) lev = -lev;
        if (std::abs(lev) > kPi / 2 + 0.2) continue; // unreachable by |g2| < pi/2
        if (std::abs(lev) < kClear)
            throw Error(Errc::Infeasible,
                        "translated point at eta ~ 0 sits on the abelian image near theta=" +
                            std::to_string(p->theta));
        // the band plateau and its ramps sweep [0, value]; the value may not
        // reach past this level on its own side of zero
        if (lev > 0)
            b->blocked.push_back({lev - kClear, kPi});
        else
            b->blocked.push_back({-kPi, lev + kClear});
    }
    for (auto& b : bands2) {
        bool pinned = b.lo < kRamp || b.hi > kPi - kRamp;
        if (pinned) {
            if (!zero_allowed(b))
                throw Error(Errc::Infeasible,
                            "band at theta in [" + std::to_string(b.lo) + ", " +
                                std::to_string(b.hi) + "] is pinned to zero but zero is not clear");
            b.value = 0;
            continue;
        }
        if (!pick_value(b, -kPi / 2 + 0.05, kPi / 2 - 0.05, b.value))
            throw Error(Errc::Infeasible,
                        "no free gap for g2 on theta band [" + std::to_string(b.lo) + ", " +
                            std::to_string(b.hi) + "]");
    }
    ShearFn g2 = bands_to_shear(bands2);

    AvoidancePlan plan;
    plan.g1 = g1;
    plan.g2 = g2;
    plan.cert = check_certificate(s, g1, g2);
    if (!context.empty()) plan.cert.context += " [" + context + "]";
    return plan;
}

std::vector<std::array<double, 4>> slice_path_segments(double eta0) {
    double h = eta0 - kPi; // in [0, pi)
    return {
        {0.0, h, kPi, h},      // c1
        {-kPi, -h, 0.0, -h},   // c2
        {0.0, -h, 0.0, h},     // c3
        {kPi, 0.0, kPi, h},    // c4
        {-kPi, -h, -kPi, 0.0}, // c5
    };
}

namespace {

// torus max-metric distance from a point to an axis-aligned segment
double dist_to_segment(double px, double py, const std::array<double, 4>& seg) {
    auto interval_dist = [](double v, double a, double b) {
        if (a > b) std::swap(a, b);
        double best = 1e300;
        for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
            double w = v + shift;
            if (w >= a && w <= b) return 0.0;
            best = std::min(best, std::min(std::abs(w - a), std::abs(w - b)));
        }
        return best;
    };
    if (seg[1] == seg[3]) // horizontal
        return std::max(interval_dist(px, seg[0], seg[2]), circ_dist(py, seg[1]));
    return std::max(circ_dist(px, seg[0]), interval_dist(py, seg[1], seg[3]));
}

} // namespace

ShearFn plan_slice_path(const PillowSet& s_k, double eta0, double* margin_out) {
    eta0 = wrap_2pi(eta0);
    if (eta0 < kPi) eta0 = kTwoPi - eta0; // handled by the +- symmetry
    double delta = std::max(s_k.delta, 1e-9);
    double h = eta0 - kPi;

    for (const auto& p : s_k.points) {
        if (circ_dist(p.eta, h) < delta || circ_dist(p.eta, -h) < delta) {
            std::ostringstream os;
            os << "S_K point (" << p.theta << ", " << p.eta
               << ") meets the circle eta = " << h;
            throw Error(Errc::SliceBlocked, os.str());
        }
    }
    auto segs = slice_path_segments(eta0);
    double w = kPi;
    for (const auto& p : s_k.points) {
        double d = 1e300;
        for (const auto& seg : segs) d = std::min(d, dist_to_segment(p.theta, p.eta, seg));
        w = std::min(w, d);
    }
    if (w < 2 * delta)
        throw Error(Errc::CorridorTooNarrow,
                    "corridor half-width " + std::to_string(w) + " < 2*delta");
    double wprime = std::min(w / 2, 0.45);
    if (margin_out) *margin_out = w - wprime;
    if (h == 0.0) return ShearFn();
    return ShearFn::from_knots({{wprime, h}, {kPi - wprime, h}});
}

std::vector<CriticalMatch> enumerate_critical_points(const PillowSet& p1,
                                                     const PillowSet& p2,
                                                     const ShearFn& g1, const ShearFn& g2,
                                                     double tol) {
    PillowSet u = pillow_translate(p2, 0.0, kPi);
    std::vector<CriticalMatch> out;
    for (const auto& x : p1.points) {
        double eta0 = x.eta;
        double theta0 = wrap_2pi(x.theta + g1.eval(x.eta)); // theta_-1 - theta_0 = -g1
        for (int sgn : {+1, -1}) {
            double th_h = sgn > 0 ? theta0 : wrap_2pi(-theta0);
            double et_h = sgn > 0 ? eta0 : wrap_2pi(-eta0);
            double theta1 = th_h;
            double eta1 = wrap_2pi(et_h + g2.eval(theta1)); // eta^_0 - eta_1 = -g2
            for (const auto& y : u.points) {
                double d = torus_dist(theta1, eta1, y.theta, y.eta);
                if (d <= tol) {
                    CriticalMatch m;
                    m.theta_m1 = x.theta;
                    m.eta_m1 = x.eta;
                    m.theta_0 = theta0;
                    m.eta_0 = eta0;
                    m.theta_h0 = th_h;
                    m.eta_h0 = et_h;
                    m.theta_1 = y.theta;
                    m.eta_1 = y.eta;
                    m.sign_branch = sgn;
                    m.residual = d;
                    out.push_back(m);
                }
            }
        }
    }
    return out;
}

} // namespace kap
