#include "kap/pillowcase.hpp"
#include "kap/error.hpp"
#include "kap/repsys.hpp"
#include "kap/roots.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

namespace kap {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_pm(double a) { return std::remainder(a, kTwoPi); } // into [-pi, pi]
} // namespace

double wrap_2pi(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0) r += kTwoPi;
    if (r >= kTwoPi) r = 0;
    return r;
}

double circ_dist(double a, double b) { return std::abs(wrap_pm(a - b)); }

double torus_dist(double t1, double e1, double t2, double e2) {
    return std::max(circ_dist(t1, t2), circ_dist(e1, e2));
}

Quat quat_word(const Word& word, const std::vector<Quat>& gens) {
    Quat q;
    for (int g : word) {
        const Quat& x = gens[(size_t)(std::abs(g) - 1)];
        q = q * (g > 0 ? x : x.conj());
    }
    return q;
}

PillowSet PillowSet::from_points(std::vector<PillowPoint> pts, double delta,
                                 const std::string& label, int theta_grid) {
    PillowSet s;
    s.points = std::move(pts);
    s.delta = delta;
    s.theta_grid = theta_grid;
    s.label = label;
    std::sort(s.points.begin(), s.points.end(), [](const PillowPoint& a, const PillowPoint& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.eta < b.eta;
    });
    return s;
}

namespace {

struct ConjRelator {
    Word w;      // conjugating word
    int ga = 1;  // signed letter conjugated by w
    int gb = 2;  // signed target letter
};

// Try to see the relator (up to rotation) as  w ga w^-1 gb^-1 = 1,
// i.e. rho(w ga w^-1) = rho(gb).
bool match_conj_relator(const Word& rel, ConjRelator& out) {
    Word r = free_reduce(rel);
    if (r.size() < 2) return false;
    for (size_t rot = 0; rot < r.size(); ++rot) {
        Word rr;
        rr.insert(rr.end(), r.begin() + (long)rot, r.end());
        rr.insert(rr.end(), r.begin(), r.begin() + (long)rot);
        rr = free_reduce(rr);
        if (rr.size() < 2) continue;
        int last = rr.back();
        Word u(rr.begin(), rr.end() - 1);
        Word conj;
        int letter = 0;
        if (!as_conjugated_letter(u, conj, letter)) continue;
        out.w = conj;
        out.ga = letter;
        out.gb = -last;
        return true;
    }
    return false;
}

struct SliceSolver {
    const KnotPresentation& p;
    double c, s;
    ConjRelator cr;
    bool have_cr = false;

    SliceSolver(const KnotPresentation& pres, double theta)
        : p(pres), c(std::cos(theta)), s(std::sin(theta)) {
        for (const auto& r : p.relators)
            if (match_conj_relator(r, cr)) {
                have_cr = true;
                break;
            }
    }

    std::vector<Quat> gens_at(double psi) const {
        Quat A{c, s, 0, 0};
        Quat B{c, s * std::cos(psi), s * std::sin(psi), 0};
        return {A, B};
    }

    // signed in-plane angle mismatch between the conjugated meridian axis and
    // the target axis; vanishes at every representation (and possibly at
    // configurations whose axis still sticks out of the plane, which the
    // relator-defect acceptance filters out)
    double mismatch(double psi) const {
        auto gens = gens_at(psi);
        Quat W = quat_word(cr.w, gens);
        int a_idx = std::abs(cr.ga) - 1;
        Quat axis_a = a_idx == 0 ? Quat{0, 1, 0, 0}
                                 : Quat{0, std::cos(psi), std::sin(psi), 0};
        if (cr.ga < 0) axis_a = {0, -axis_a.x, -axis_a.y, -axis_a.z};
        Quat u = W * axis_a * W.conj();
        int b_idx = std::abs(cr.gb) - 1;
        double sb = cr.gb > 0 ? 1.0 : -1.0;
        double vx = b_idx == 0 ? sb : sb * std::cos(psi);
        double vy = b_idx == 0 ? 0.0 : sb * std::sin(psi);
        return wrap_pm(std::atan2(u.y, u.x) - std::atan2(vy, vx));
    }

    double relator_defect(double psi) const {
        auto gens = gens_at(psi);
        double d = 0;
        for (const auto& r : p.relators) d = std::max(d, quat_word(r, gens).dist_id());
        return d;
    }

    double axis_gap(double psi) const {
        auto gens = gens_at(psi);
        Quat W = quat_word(cr.w, gens);
        int a_idx = std::abs(cr.ga) - 1;
        Quat axis_a = a_idx == 0 ? Quat{0, 1, 0, 0}
                                 : Quat{0, std::cos(psi), std::sin(psi), 0};
        if (cr.ga < 0) axis_a = {0, -axis_a.x, -axis_a.y, -axis_a.z};
        Quat u = W * axis_a * W.conj();
        int b_idx = std::abs(cr.gb) - 1;
        double sb = cr.gb > 0 ? 1.0 : -1.0;
        double vx = b_idx == 0 ? sb : sb * std::cos(psi);
        double vy = b_idx == 0 ? 0.0 : sb * std::sin(psi);
        double dx = u.x - vx, dy = u.y - vy, dz = u.z;
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    }
};

PillowPoint point_from_witness(const KnotPresentation& p, double theta,
                               const std::vector<Quat>& gens, double defect) {
    Quat L = quat_word(p.longitude, gens);
    double off = std::hypot(L.y, L.z);
    double eta = std::atan2(L.x, L.w);
    PillowPoint pt;
    pt.theta = wrap_2pi(theta);
    pt.eta = wrap_2pi(eta);
    pt.witness = gens;
    pt.residual = std::max(defect, off);
    return pt;
}

PillowPoint abelian_point(const KnotPresentation& p, double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    std::vector<Quat> gens((size_t)p.generator_count, Quat{c, s, 0, 0});
    PillowPoint pt;
    pt.theta = wrap_2pi(theta);
    pt.eta = 0.0;
    pt.witness = gens;
    pt.residual = 0.0;
    return pt;
}

// grid seeding plus Levenberg-Marquardt refinement for presentations that
// resist reduction to two generators; best effort
std::vector<PillowPoint> fallback_multi_gen(const KnotPresentation& p, double theta,
                                            int n_seeds, double tol) {
    int n = p.generator_count;
    std::vector<PillowPoint> out{abelian_point(p, theta)};
    double c = std::cos(theta), s = std::sin(theta);
    if (std::abs(s) < 1e-9 || n < 2 || p.relators.empty()) return out;
    int dims = 1 + 2 * std::max(0, n - 2);
    auto build = [&](const std::vector<double>& x) {
        std::vector<Quat> gens;
        gens.push_back({c, s, 0, 0});
        gens.push_back({c, s * std::cos(x[0]), s * std::sin(x[0]), 0});
        for (int g = 2; g < n; ++g) {
            double a = x[(size_t)(1 + 2 * (g - 2))], b = x[(size_t)(2 + 2 * (g - 2))];
            gens.push_back({c, s * std::cos(a), s * std::sin(a) * std::cos(b),
                            s * std::sin(a) * std::sin(b)});
        }
        return gens;
    };
    // residual vector: the four identity-defect components per relator
    size_t n_res = 4 * p.relators.size();
    auto residuals = [&](const std::vector<double>& x, std::vector<double>& f) {
        auto gens = build(x);
        f.resize(n_res);
        size_t i = 0;
        for (const auto& r : p.relators) {
            Quat q = quat_word(r, gens);
            f[i++] = q.w - 1;
            f[i++] = q.x;
            f[i++] = q.y;
            f[i++] = q.z;
        }
    };
    auto sumsq = [](const std::vector<double>& f) {
        double t = 0;
        for (double v : f) t += v * v;
        return t;
    };
    auto refine = [&](std::vector<double> x) {
        std::vector<double> f, ftrial, xtrial;
        residuals(x, f);
        double cost = sumsq(f);
        double lambda = 1e-3;
        std::vector<std::vector<double>> J(n_res, std::vector<double>((size_t)dims));
        for (int it = 0; it < 80 && cost > 1e-30; ++it) {
            const double h = 1e-7;
            for (int d = 0; d < dims; ++d) {
                auto xp = x;
                xp[(size_t)d] += h;
                residuals(xp, ftrial);
                for (size_t i = 0; i < n_res; ++i)
                    J[i][(size_t)d] = (ftrial[i] - f[i]) / h;
            }
            // normal equations with Levenberg damping
            std::vector<std::vector<double>> A((size_t)dims,
                                               std::vector<double>((size_t)dims + 1, 0.0));
            for (int a = 0; a < dims; ++a) {
                for (int b = 0; b < dims; ++b)
                    for (size_t i = 0; i < n_res; ++i)
                        A[(size_t)a][(size_t)b] += J[i][(size_t)a] * J[i][(size_t)b];
                A[(size_t)a][(size_t)a] *= 1.0 + lambda;
                A[(size_t)a][(size_t)a] += 1e-14;
                for (size_t i = 0; i < n_res; ++i)
                    A[(size_t)a][(size_t)dims] -= J[i][(size_t)a] * f[i];
            }
            // gaussian elimination
            bool singular = false;
            for (int col = 0; col < dims && !singular; ++col) {
                int piv = col;
                for (int r2 = col + 1; r2 < dims; ++r2)
                    if (std::abs(A[(size_t)r2][(size_t)col]) >
                        std::abs(A[(size_t)piv][(size_t)col]))
                        piv = r2;
                if (std::abs(A[(size_t)piv][(size_t)col]) < 1e-300) {
                    singular = true;
                    break;
                }
                std::swap(A[(size_t)col], A[(size_t)piv]);
                for (int r2 = col + 1; r2 < dims; ++r2) {
                    double fac = A[(size_t)r2][(size_t)col] / A[(size_t)col][(size_t)col];
                    for (int cc = col; cc <= dims; ++cc)
                        A[(size_t)r2][(size_t)cc] -= fac * A[(size_t)col][(size_t)cc];
                }
            }
            if (singular) break;
            std::vector<double> step((size_t)dims);
            for (int r2 = dims - 1; r2 >= 0; --r2) {
                double v = A[(size_t)r2][(size_t)dims];
                for (int cc = r2 + 1; cc < dims; ++cc)
                    v -= A[(size_t)r2][(size_t)cc] * step[(size_t)cc];
                step[(size_t)r2] = v / A[(size_t)r2][(size_t)r2];
            }
            xtrial = x;
            for (int d = 0; d < dims; ++d) xtrial[(size_t)d] += step[(size_t)d];
            residuals(xtrial, ftrial);
            double ctrial = sumsq(ftrial);
            if (ctrial < cost) {
                x = xtrial;
                f = ftrial;
                cost = ctrial;
                lambda = std::max(lambda / 3, 1e-12);
            } else {
                lambda *= 4;
                if (lambda > 1e8) break;
            }
        }
        return std::pair<std::vector<double>, double>{x, cost};
    };

    int g = std::max(4, (int)std::round(std::pow((double)std::max(n_seeds, 64),
                                                 1.0 / (double)dims)));
    long total = 1;
    for (int d = 0; d < dims; ++d) {
        total *= g;
        if (total > 20000) {
            g = std::max(3, g - 1);
            break;
        }
    }
    std::vector<double> x((size_t)dims);
    std::function<void(int)> scan = [&](int d) {
        if (d == dims) {
            auto [y, cost] = refine(x);
            if (cost < tol * tol) {
                auto gens = build(y);
                PillowPoint pt = point_from_witness(p, theta, gens, std::sqrt(cost));
                for (const auto& seen : out)
                    if (torus_dist(pt.theta, pt.eta, seen.theta, seen.eta) < 1e-6) return;
                out.push_back(std::move(pt));
            }
            return;
        }
        for (int i = 0; i < g; ++i) {
            x[(size_t)d] = (d == 0 ? kPi : kTwoPi) * (i + 0.5) / g;
            scan(d + 1);
        }
    };
    scan(0);
    std::sort(out.begin(), out.end(),
              [](const PillowPoint& a, const PillowPoint& b) { return a.eta < b.eta; });
    return out;
}

} // namespace

std::vector<PillowPoint> su2_solve_slice(const KnotPresentation& pres, double theta,
                                         int n_seeds, double tol) {
    KnotPresentation p = pres;
    bool reduced = true;
    try {
        p = meridianize(pres);
    } catch (const Error&) {
        reduced = false;
    }
    if (!reduced) {
        // reduce as far as possible first; the grid search pays per generator
        KnotPresentation partial = pres;
        try {
            partial = tietze_reduce_best_effort(pres);
        } catch (const Error&) {
        }
        return fallback_multi_gen(partial, theta, n_seeds, tol);
    }

    std::vector<PillowPoint> out{abelian_point(p, theta)};
    double s = std::sin(theta);
    if (p.generator_count < 2 || p.relators.empty() || std::abs(s) < 1e-9) return out;

    SliceSolver solver(p, theta);
    if (!solver.have_cr) return fallback_multi_gen(p, theta, n_seeds, tol);

    int n = std::max(n_seeds, 64);
    std::vector<double> psi_found;
    auto accept = [&](double psi, bool from_bisection = false) {
        for (double q : psi_found)
            if (std::abs(q - psi) < 1e-7) return;
        double defect = solver.relator_defect(psi);
        if (defect > tol) {
            // a fully converged sign change sitting on the axis but stuck
            // above tolerance is bisection stagnation, not a miss
            if (from_bisection && solver.axis_gap(psi) < std::sqrt(tol))
                throw Error(Errc::ToleranceNotMet,
                            "slice refinement stagnated at psi=" + std::to_string(psi) +
                                " with defect " + std::to_string(defect));
            return;
        }
        psi_found.push_back(psi);
        out.push_back(point_from_witness(p, theta, solver.gens_at(psi), defect));
    };

    double prev_mis = solver.mismatch(0.0 + kPi / n * 1e-3);
    double prev_psi = kPi / n * 1e-3;
    double sqrt_tol = std::sqrt(tol);
    for (int k = 1; k <= n; ++k) {
        double psi = kPi * k / n;
        if (k == n) psi -= kPi / n * 1e-3;
        double mis = solver.mismatch(psi);
        if (prev_mis * mis < 0 && std::abs(prev_mis) < 1.2 && std::abs(mis) < 1.2) {
            double a = prev_psi, b = psi, fa = prev_mis;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (a + b);
                double fm = solver.mismatch(mid);
                if (fa * fm <= 0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            accept(0.5 * (a + b), true);
        } else if (std::abs(mis) >= 1.2 || std::abs(prev_mis) >= 1.2) {
            // possible branch wrap; check for a genuine zero via the axis gap
            double gap = solver.axis_gap(0.5 * (prev_psi + psi));
            if (gap < sqrt_tol) {
                // golden-section minimization of the axis gap
                double a = prev_psi, b = psi;
                double phi = (std::sqrt(5.0) - 1) / 2;
                double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
                double f1 = solver.axis_gap(x1), f2 = solver.axis_gap(x2);
                for (int it = 0; it < 120; ++it) {
                    if (f1 < f2) {
                        b = x2; x2 = x1; f2 = f1;
                        x1 = b - phi * (b - a);
                        f1 = solver.axis_gap(x1);
                    } else {
                        a = x1; x1 = x2; f1 = f2;
                        x2 = a + phi * (b - a);
                        f2 = solver.axis_gap(x2);
                    }
                }
                accept(0.5 * (a + b));
            }
        }
        // tangential-zero fallback: local minimum of the axis gap below sqrt(tol)
        double gap_here = solver.axis_gap(psi);
        if (gap_here < sqrt_tol && std::abs(mis) < 1.2) {
            double a = std::max(0.0, psi - kPi / n), b = std::min(kPi, psi + kPi / n);
            double phi = (std::sqrt(5.0) - 1) / 2;
            double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
            double f1 = solver.axis_gap(x1), f2 = solver.axis_gap(x2);
            for (int it = 0; it < 120; ++it) {
                if (f1 < f2) {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - phi * (b - a);
                    f1 = solver.axis_gap(x1);
                } else {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + phi * (b - a);
                    f2 = solver.axis_gap(x2);
                }
            }
            accept(0.5 * (a + b));
        }
        prev_mis = mis;
        prev_psi = psi;
    }
    std::sort(out.begin(), out.end(), [](const PillowPoint& a, const PillowPoint& b) {
        return a.eta < b.eta;
    });
    return out;
}

namespace {

int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 4 : (int)std::min(hw, 8u);
    if (const char* env = std::getenv("PILLOWCASE_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

Quat mirror_witness(const Quat& q) { return {q.w, -q.x, q.y, -q.z}; }

PillowSet assemble(std::vector<std::vector<PillowPoint>> per_slice, int n_theta,
                   const std::string& label) {
    std::vector<PillowPoint> all;
    for (auto& v : per_slice)
        for (auto& pt : v) all.push_back(std::move(pt));
    // symmetrize under (theta, eta) -> (-theta, -eta)
    size_t base = all.size();
    for (size_t i = 0; i < base; ++i) {
        PillowPoint q = all[i];
        q.theta = wrap_2pi(-q.theta);
        q.eta = wrap_2pi(-q.eta);
        for (auto& w : q.witness) w = mirror_witness(w);
        all.push_back(std::move(q));
    }
    std::sort(all.begin(), all.end(), [](const PillowPoint& a, const PillowPoint& b) {
        if (a.theta != b.theta) return a.theta < b.theta;
        return a.eta < b.eta;
    });
    double delta = kTwoPi / n_theta;
    std::vector<PillowPoint> kept;
    for (auto& pt : all) {
        bool dup = false;
        for (const auto& k : kept) {
            if (torus_dist(pt.theta, pt.eta, k.theta, k.eta) < delta / 2) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(std::move(pt));
    }
    PillowSet s;
    s.points = std::move(kept);
    s.theta_grid = n_theta;
    s.delta = delta;
    s.label = label;
    return s;
}

} // namespace

PillowSet compute_pillowcase(const KnotPresentation& p, int n_theta, double tol) {
    if (n_theta < 8) throw Error(Errc::BadConfig, "n_theta must be >= 8");
    KnotPresentation q = p;
    try {
        q = meridianize(p);
    } catch (const Error&) {
        // slice solver falls back per slice
    }
    std::vector<std::vector<PillowPoint>> per_slice((size_t)n_theta);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    int n_threads = thread_budget();
    auto work = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= n_theta || failed.load()) return;
            double theta = kTwoPi * k / n_theta;
            try {
                per_slice[(size_t)k] = su2_solve_slice(q, theta, 1024, tol);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return assemble(std::move(per_slice), n_theta, p.label);
}

PillowSet compute_pillowcase_riley(const KnotPresentation& p, int n_theta, double tol) {
    if (n_theta < 8) throw Error(Errc::BadConfig, "n_theta must be >= 8");
    KnotPresentation q = meridianize(p);
    RepSystem sys = rep_system_riley(q);
    std::vector<std::vector<PillowPoint>> per_slice((size_t)n_theta);
    std::vector<MPoly> tcoeffs;
    if (!sys.equations.empty()) tcoeffs = sys.equations[0].coeffs_in("t");

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto work = [&]() {
        for (;;) {
            int k = next.fetch_add(1);
            if (k >= n_theta || failed.load()) return;
            double theta = kTwoPi * k / n_theta;
            try {
                std::vector<PillowPoint> pts{abelian_point(q, theta)};
                double c = std::cos(theta), s = std::sin(theta);
                if (tcoeffs.size() >= 2 && std::abs(s) > 1e-9) {
                    std::complex<double> m0(c, s);
                    std::vector<std::complex<double>> coeffs;
                    for (const auto& cf : tcoeffs) coeffs.push_back(cf.eval({{"m", m0}}));
                    ComplexRootSet roots;
                    bool ok = true;
                    try {
                        roots = roots_univar(coeffs, 1e-7);
                    } catch (const Error&) {
                        ok = false;
                    }
                    if (ok) {
                        for (const auto& rr : roots.roots) {
                            std::complex<double> t0 = rr.value;
                            if (std::abs(t0.imag()) > 1e-6 * (1.0 + std::abs(t0))) continue;
                            double tr = t0.real();
                            double band = 4 * s * s;
                            if (tr <= 1e-9 || tr >= band - 1e-9) continue;
                            double cpsi = 1.0 - tr / (2 * s * s);
                            if (std::abs(cpsi) > 1.0) cpsi = cpsi > 0 ? 1.0 : -1.0;
                            double psi = std::acos(cpsi);
                            Quat A{c, s, 0, 0};
                            Quat B{c, s * std::cos(psi), s * std::sin(psi), 0};
                            std::vector<Quat> gens{A, B};
                            double defect = 0;
                            for (const auto& r : q.relators)
                                defect = std::max(defect, quat_word(r, gens).dist_id());
                            if (defect > std::sqrt(tol)) continue;
                            pts.push_back(point_from_witness(q, theta, gens, defect));
                        }
                    }
                }
                per_slice[(size_t)k] = std::move(pts);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    int n_threads = thread_budget();
    std::vector<std::thread> pool;
    for (int i = 1; i < n_threads; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return assemble(std::move(per_slice), n_theta, p.label + " (riley)");
}

PillowSet pillow_translate(const PillowSet& s, double a, double b) {
    std::vector<PillowPoint> pts;
    pts.reserve(s.points.size());
    for (const auto& p : s.points) {
        PillowPoint q;
        q.theta = wrap_2pi(p.theta + a);
        q.eta = wrap_2pi(p.eta + b);
        q.residual = p.residual;
        pts.push_back(q); // witnesses dropped: transformed sets are geometric
    }
    return PillowSet::from_points(std::move(pts), s.delta,
                                  s.label + " + (" + std::to_string(a) + "," +
                                      std::to_string(b) + ")",
                                  s.theta_grid);
}

PillowSet pillow_shear(const PillowSet& s, const ShearFn& h, ShearAxis axis) {
    std::vector<PillowPoint> pts;
    pts.reserve(s.points.size());
    for (const auto& p : s.points) {
        PillowPoint q;
        if (axis == ShearAxis::ThetaByEta) {
            q.theta = wrap_2pi(p.theta + h.eval(p.eta));
            q.eta = p.eta;
        } else {
            q.theta = p.theta;
            q.eta = wrap_2pi(p.eta + h.eval(p.theta));
        }
        q.residual = p.residual;
        pts.push_back(q);
    }
    return PillowSet::from_points(std::move(pts), s.delta, s.label + " sheared",
                                  s.theta_grid);
}

PillowSet pillow_negate(const PillowSet& s) {
    std::vector<PillowPoint> pts;
    pts.reserve(s.points.size());
    for (const auto& p : s.points) {
        PillowPoint q;
        q.theta = wrap_2pi(-p.theta);
        q.eta = wrap_2pi(-p.eta);
        q.residual = p.residual;
        pts.push_back(q);
    }
    return PillowSet::from_points(std::move(pts), s.delta, "-" + s.label, s.theta_grid);
}

double hausdorff(const PillowSet& a, const PillowSet& b) {
    if (a.points.empty() && b.points.empty()) return 0;
    if (a.points.empty() || b.points.empty()) return kPi;
    auto one_sided = [](const PillowSet& x, const PillowSet& y) {
        double worst = 0;
        for (const auto& p : x.points) {
            double best = 1e300;
            for (const auto& q : y.points)
                best = std::min(best, torus_dist(p.theta, p.eta, q.theta, q.eta));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

SymmetryReport check_symmetries(const PillowSet& s, double delta) {
    SymmetryReport r;
    r.delta = delta;
    r.dist_translation = hausdorff(s, pillow_translate(s, kPi, 0.0));
    r.dist_negation = hausdorff(s, pillow_negate(s));
    r.pass = r.dist_translation < delta && r.dist_negation < delta;
    return r;
}

std::string pillowset_to_csv(const PillowSet& s) {
    std::string out;
    char buf[128];
    for (const auto& p : s.points) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", p.theta, p.eta, p.residual);
        out += buf;
    }
    return out;
}

PillowSet pillowset_from_csv(const std::string& text, const std::string& label) {
    std::vector<PillowPoint> pts;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        PillowPoint p;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &p.theta, &p.eta, &p.residual) < 2)
            throw Error(Errc::IoError, "bad pillowcase CSV line: " + line);
        p.theta = wrap_2pi(p.theta);
        p.eta = wrap_2pi(p.eta);
        pts.push_back(p);
    }
    return PillowSet::from_points(std::move(pts), 0.0, label);
}

std::string pillowset_to_json(const PillowSet& s, bool witnesses) {
    std::ostringstream os;
    os << "{\n  \"label\": \"" << s.label << "\",\n";
    os << "  \"n_theta\": " << s.theta_grid << ",\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", s.delta);
    os << "  \"delta\": " << buf << ",\n  \"points\": [\n";
    for (size_t i = 0; i < s.points.size(); ++i) {
        const auto& p = s.points[i];
        char b2[256];
        std::snprintf(b2, sizeof(b2), "    {\"theta\": %.17g, \"eta\": %.17g, \"residual\": %.17g",
                      p.theta, p.eta, p.residual);
        os << b2;
        if (witnesses && !p.witness.empty()) {
            os << ", \"witness\": [";
            for (size_t j = 0; j < p.witness.size(); ++j) {
                const auto& q = p.witness[j];
                char b3[256];
                std::snprintf(b3, sizeof(b3), "[%.17g, %.17g, %.17g, %.17g]", q.w, q.x, q.y, q.z);
                os << (j ? ", " : "") << b3;
            }
            os << "]";
        }
        os << (i + 1 < s.points.size() ? "},\n" : "}\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

} // namespace kap
