#include "oracle.hpp"

#include "kap/error.hpp"
#include "kap/roots.hpp"

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <vector>

namespace kap::testing {

namespace {

constexpr int kPrec = 512;

struct MpC {
    mpf_class re{0, kPrec}, im{0, kPrec};

    MpC() = default;
    MpC(double r, double i = 0) : re(r, kPrec), im(i, kPrec) {}
    MpC(const mpf_class& r) : re(r), im(0, kPrec) {}

    MpC operator+(const MpC& o) const {
        MpC x;
        x.re = re + o.re;
        x.im = im + o.im;
        return x;
    }
    MpC operator-(const MpC& o) const {
        MpC x;
        x.re = re - o.re;
        x.im = im - o.im;
        return x;
    }
    MpC operator*(const MpC& o) const {
        MpC x;
        x.re = re * o.re - im * o.im;
        x.im = re * o.im + im * o.re;
        return x;
    }
    MpC operator/(const MpC& o) const {
        mpf_class d = o.re * o.re + o.im * o.im;
        MpC x;
        x.re = (re * o.re + im * o.im) / d;
        x.im = (im * o.re - re * o.im) / d;
        return x;
    }
    double abs_approx() const {
        double r = re.get_d(), i = im.get_d();
        return std::sqrt(r * r + i * i);
    }
};

MpC poly_eval(const std::vector<mpf_class>& c, const MpC& x) {
    MpC s;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        s = s * x;
        s.re += *it;
    }
    return s;
}

MpC poly_eval_deriv(const std::vector<mpf_class>& c, const MpC& x) {
    MpC s;
    for (size_t k = c.size(); k-- > 1;) {
        s = s * x;
        s.re += c[k] * (double)k;
    }
    return s;
}

mpq_class eval_int_poly(const MPoly& p, const mpq_class& m0) {
    return p.eval(std::map<std::string, mpq_class>{{"m", m0}});
}

} // namespace

IntPoly2 oracle_raw_eliminant(const RepSystem& s) {
    if (s.equations.empty()) {
        // abelian: l * den - num with no t anywhere
        MPoly el = MPoly::var("l") * s.longitude_den - s.longitude_num;
        return IntPoly2::from_mpoly(el);
    }
    const MPoly& f = s.equations[0];
    int dt_f = f.degree("t");
    auto f_coeffs = f.coeffs_in("t"); // polys in m
    auto num_coeffs = s.longitude_num.coeffs_in("t");
    int dt_g = (int)num_coeffs.size() - 1;
    if (dt_f < 1) throw std::runtime_error("oracle: primary equation has no t");

    int degm_f = 0, degm_g = 0;
    for (const auto& c : f_coeffs) degm_f = std::max(degm_f, c.degree("m"));
    for (const auto& c : num_coeffs) degm_g = std::max(degm_g, c.degree("m"));
    degm_g = std::max(degm_g, s.longitude_den.degree("m"));
    int degm_bound = dt_f * degm_g + std::max(dt_g, 0) * degm_f;
    int n_nodes = degm_bound + 1;

    std::vector<mpf_class> nodes;
    std::vector<std::vector<MpC>> values; // per node: l-coefficients
    size_t l_len = (size_t)dt_f + 1;      // deg_l(res) <= deg_t(f)

    long m_int = 2;
    while ((int)nodes.size() < n_nodes) {
        mpq_class m0(m_int);
        ++m_int;
        // skip nodes where a leading coefficient vanishes (degree drop)
        if (eval_int_poly(f_coeffs.back(), m0) == 0) continue;
        if (dt_g >= 1 && eval_int_poly(num_coeffs.back(), m0) == 0) continue;

        // solve f(m0, t) = 0 to high precision
        std::vector<mpf_class> fc;
        std::vector<std::complex<double>> fcd;
        for (const auto& c : f_coeffs) {
            mpq_class v = eval_int_poly(c, m0);
            fc.push_back(mpf_class(v, kPrec));
            fcd.push_back(v.get_d());
        }
        ComplexRootSet seeds = roots_univar(fcd, 1e-5);
        std::vector<MpC> roots;
        for (const auto& r : seeds.roots) {
            MpC t(r.value.real(), r.value.imag());
            for (int it = 0; it < 40; ++it) {
                MpC fv = poly_eval(fc, t);
                MpC dv = poly_eval_deriv(fc, t);
                if (dv.abs_approx() == 0) break;
                MpC step = fv / dv;
                t = t - step;
                if (step.abs_approx() < 1e-80 * (1 + t.abs_approx())) break;
            }
            roots.push_back(t);
        }

        // assemble lc^{deg_t g} * prod_j (l*den - num(t_j)) as a poly in l
        mpq_class den_q = eval_int_poly(s.longitude_den, m0);
        mpf_class den(den_q, kPrec);
        std::vector<MpC> poly_l{MpC(1.0)};
        for (const auto& t : roots) {
            MpC numv;
            for (auto it = num_coeffs.rbegin(); it != num_coeffs.rend(); ++it) {
                numv = numv * t;
                mpq_class cv = eval_int_poly(*it, m0);
                numv.re += mpf_class(cv, kPrec);
            }
            // multiply poly_l by (den * l - numv)
            std::vector<MpC> next(poly_l.size() + 1);
            for (size_t i = 0; i < poly_l.size(); ++i) {
                next[i + 1] = next[i + 1] + poly_l[i] * MpC(den);
                next[i] = next[i] - poly_l[i] * numv;
            }
            poly_l = next;
        }
        mpq_class lcq = eval_int_poly(f_coeffs.back(), m0);
        int lc_pow = std::max(dt_g, 0);
        MpC scale(mpf_class(lcq, kPrec));
        MpC factor(1.0);
        for (int i = 0; i < lc_pow; ++i) factor = factor * scale;
        for (auto& c : poly_l) c = c * factor;

        poly_l.resize(l_len);
        nodes.push_back(mpf_class(mpq_class(m_int - 1), kPrec));
        values.push_back(poly_l);
    }

    // Newton divided differences per l-power, expanded to monomial basis
    std::map<IntPoly2::Key, mpz_class> terms;
    for (size_t lp = 0; lp < l_len; ++lp) {
        size_t n = nodes.size();
        std::vector<MpC> dd(n);
        for (size_t i = 0; i < n; ++i) dd[i] = values[i][lp];
        for (size_t k = 1; k < n; ++k)
            for (size_t i = n - 1; i >= k; --i) {
                MpC diff = dd[i] - dd[i - 1];
                mpf_class dx = nodes[i] - nodes[i - k];
                dd[i].re = diff.re / dx;
                dd[i].im = diff.im / dx;
                if (i == k) break;
            }
        // fold Newton form into monomial coefficients
        std::vector<MpC> mono{dd[n - 1]};
        for (size_t k = n - 1; k-- > 0;) {
            std::vector<MpC> next(mono.size() + 1);
            for (size_t i = 0; i < mono.size(); ++i) {
                next[i + 1] = next[i + 1] + mono[i];
                MpC shift = mono[i];
                shift.re = shift.re * nodes[k];
                shift.im = shift.im * nodes[k];
                next[i] = next[i] - shift;
            }
            next[0] = next[0] + dd[k];
            mono = next;
        }
        for (size_t dm = 0; dm < mono.size(); ++dm) {
            if (std::abs(mono[dm].im.get_d()) > 1e-6)
                throw std::runtime_error("oracle: interpolated coefficient not real");
            mpf_class half(0.5, kPrec);
            mpf_class shifted = mono[dm].re + (mono[dm].re >= 0 ? half : -half);
            mpz_class rounded(shifted);
            mpf_class err = mono[dm].re - mpf_class(rounded, kPrec);
            if (std::abs(err.get_d()) > 1e-6)
                throw std::runtime_error("oracle: coefficient failed integer recognition");
            if (rounded != 0) terms[{(int)dm, (int)lp}] = rounded;
        }
    }
    return IntPoly2::from_terms(std::move(terms));
}

APolyResult oracle_apoly(const RepSystem& s) {
    IntPoly2 raw = oracle_raw_eliminant(s);
    return prune_eliminant(std::move(raw), s, {"oracle raw eliminant"});
}

} // namespace kap::testing
