#include "kap/repsys.hpp"
#include "kap/error.hpp"
#include "kap/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace kap {

namespace {

// 2x2 matrix over Z[m,t] together with a power of m as denominator:
// the group element is entries / m^den.
struct ScaledMat {
    MPoly e[4]; // row major
    int den = 0;
};

MPoly mvar() { return MPoly::var("m"); }
MPoly tvar() { return MPoly::var("t"); }

ScaledMat gen_matrix(int signed_gen) {
    MPoly m = mvar(), t = tvar();
    MPoly m2 = m * m;
    ScaledMat r;
    r.den = 1;
    int g = std::abs(signed_gen);
    bool inv = signed_gen < 0;
    if (g == 1) {
        if (!inv) {
            r.e[0] = m2; r.e[1] = m;
            r.e[2] = MPoly(); r.e[3] = MPoly::constant(1);
        } else {
            r.e[0] = MPoly::constant(1); r.e[1] = -m;
            r.e[2] = MPoly(); r.e[3] = m2;
        }
    } else {
        if (!inv) {
            r.e[0] = m2; r.e[1] = MPoly();
            r.e[2] = t * m; r.e[3] = MPoly::constant(1);
        } else {
            r.e[0] = MPoly::constant(1); r.e[1] = MPoly();
            r.e[2] = -(t * m); r.e[3] = m2;
        }
    }
    return r;
}

int m_valuation(const MPoly& p) {
    if (p.is_zero()) return 1 << 20;
    auto it = std::find(p.vars().begin(), p.vars().end(), std::string("m"));
    if (it == p.vars().end()) return 0;
    size_t idx = (size_t)(it - p.vars().begin());
    int v = 1 << 20;
    for (const auto& [mon, c] : p.terms()) v = std::min(v, mon[idx]);
    return v;
}

MPoly shift_m(const MPoly& p, int k) {
    if (k == 0 || p.is_zero()) return p;
    auto cs = p.coeffs_in("m");
    MPoly out;
    MPoly m = mvar();
    for (size_t i = 0; i < cs.size(); ++i) {
        int e = (int)i + k;
        out = out + cs[i] * m.pow(e);
    }
    return out;
}

ScaledMat mat_mul(const ScaledMat& a, const ScaledMat& b) {
    ScaledMat r;
    r.den = a.den + b.den;
    r.e[0] = a.e[0] * b.e[0] + a.e[1] * b.e[2];
    r.e[1] = a.e[0] * b.e[1] + a.e[1] * b.e[3];
    r.e[2] = a.e[2] * b.e[0] + a.e[3] * b.e[2];
    r.e[3] = a.e[2] * b.e[1] + a.e[3] * b.e[3];
    // drop common powers of m to keep entries small
    int v = r.den;
    for (const auto& p : r.e) v = std::min(v, m_valuation(p));
    if (v > 0) {
        for (auto& p : r.e) p = shift_m(p, -v);
        r.den -= v;
    }
    return r;
}

ScaledMat eval_word(const Word& w) {
    ScaledMat r;
    r.e[0] = MPoly::constant(1);
    r.e[3] = MPoly::constant(1);
    r.den = 0;
    for (int g : w) r = mat_mul(r, gen_matrix(g));
    return r;
}

MPoly strip_m_monomial(const MPoly& p) {
    int v = m_valuation(p);
    return v > 0 ? shift_m(p, -v) : p;
}

// torus relator pattern x^a y^-b (contiguous blocks, either order/sign)
bool detect_torus_relator(const Word& r, long& a, long& b) {
    if (r.size() < 4) return false;
    size_t i = 0;
    int g1 = r[0];
    while (i < r.size() && r[i] == g1) ++i;
    if (i == r.size()) return false;
    int g2 = r[i];
    size_t j = i;
    while (j < r.size() && r[j] == g2) ++j;
    if (j != r.size()) return false;
    if (std::abs(g1) == std::abs(g2)) return false;
    long c1 = (long)i, c2 = (long)(r.size() - i);
    // want opposite signs: x^a y^-b up to overall inversion and swap
    if ((g1 > 0) == (g2 > 0)) return false;
    a = c1;
    b = c2;
    return a >= 2 && b >= 2;
}

} // namespace

std::array<std::complex<double>, 4> riley_matrix_at(int generator, bool inverse,
                                                    std::complex<double> m,
                                                    std::complex<double> t) {
    std::complex<double> mi = 1.0 / m;
    if (generator == 1) {
        if (!inverse) return {m, 1.0, 0.0, mi};
        return {mi, -1.0, 0.0, m};
    }
    if (!inverse) return {m, 0.0, t, mi};
    return {mi, 0.0, -t, m};
}

std::array<std::complex<double>, 4> riley_word_at(const Word& w, std::complex<double> m,
                                                  std::complex<double> t) {
    std::array<std::complex<double>, 4> r{1.0, 0.0, 0.0, 1.0};
    for (int g : w) {
        auto x = riley_matrix_at(std::abs(g), g < 0, m, t);
        std::array<std::complex<double>, 4> n;
        n[0] = r[0] * x[0] + r[1] * x[2];
        n[1] = r[0] * x[1] + r[1] * x[3];
        n[2] = r[2] * x[0] + r[3] * x[2];
        n[3] = r[2] * x[1] + r[3] * x[3];
        r = n;
    }
    return r;
}

KnotPresentation tietze_reduce_best_effort(const KnotPresentation& input) {
    KnotPresentation p = input;
    p.validate();
    size_t total_len_guard = 200000;
    bool progress = true;
    while (p.generator_count > 2 && progress) {
        progress = false;
        for (size_t ri = 0; ri < p.relators.size(); ++ri) {
            const Word r = free_reduce(p.relators[ri]);
            if (r.empty()) {
                p.relators.erase(p.relators.begin() + (long)ri);
                progress = true;
                break;
            }
            // find a generator occurring exactly once
            int chosen = 0;
            size_t pos = 0;
            for (size_t i = 0; i < r.size() && chosen == 0; ++i) {
                int g = std::abs(r[i]);
                int count = 0;
                for (int x : r)
                    if (std::abs(x) == g) ++count;
                if (count == 1) {
                    chosen = g;
                    pos = i;
                }
            }
            if (chosen == 0) continue;
            // r = u g^s v  =>  g^s = u^-1 v^-1
            Word u(r.begin(), r.begin() + (long)pos);
            Word v(r.begin() + (long)pos + 1, r.end());
            Word rep = word_concat(word_inverse(u), word_inverse(v));
            if (r[pos] < 0) rep = word_inverse(rep);
            // substitute, drop relator and generator
            std::vector<Word> new_rels;
            size_t total = 0;
            for (size_t j = 0; j < p.relators.size(); ++j) {
                if (j == ri) continue;
                Word w = substitute(p.relators[j], chosen, rep);
                total += w.size();
                if (!w.empty()) new_rels.push_back(renumber_after_removal(w, chosen));
            }
            if (total > total_len_guard)
                throw Error(Errc::UnsupportedPresentation, "Tietze reduction blow-up");
            p.relators = new_rels;
            p.meridian = renumber_after_removal(substitute(p.meridian, chosen, rep), chosen);
            p.longitude = renumber_after_removal(substitute(p.longitude, chosen, rep), chosen);
            p.generator_count -= 1;
            progress = true;
            break;
        }
    }
    // drop trivial relators
    {
        std::vector<Word> rels;
        for (auto& r : p.relators) {
            Word w = free_reduce(r);
            if (!w.empty()) rels.push_back(w);
        }
        p.relators = rels;
    }
    p.validate();
    return p;
}

KnotPresentation meridianize(const KnotPresentation& input) {
    // torus normal form: rewrite through the two-bridge presentation
    {
        KnotPresentation p = input;
        p.validate();
        if (p.generator_count == 2 && p.relators.size() == 1) {
            long a = 0, b = 0;
            if (detect_torus_relator(p.relators[0], a, b)) {
                long pp = a, qq = b;
                if (pp > qq) std::swap(pp, qq);
                if (pp != 2)
                    throw Error(Errc::UnsupportedPresentation,
                                "torus knot with min(p,q) > 2 is not generated by two meridians");
                KnotPresentation tb = presentation_two_bridge(TwoBridgeKnot::make(qq, 1));
                tb.label = input.label + " (reduced to two-bridge " + std::to_string(qq) + "/1)";
                return tb;
            }
        }
    }

    KnotPresentation p = tietze_reduce_best_effort(input);
    if (p.generator_count > 2)
        throw Error(Errc::UnsupportedPresentation,
                    "could not reduce to 2 generators (" + std::to_string(p.generator_count) +
                        " remain)");

    // normalize the meridian to the literal first generator
    Word mer = free_reduce(p.meridian);
    Word conj;
    int letter = 0;
    if (!as_conjugated_letter(mer, conj, letter))
        throw Error(Errc::UnsupportedPresentation, "meridian is not a conjugated generator");
    if (!conj.empty()) {
        // conjugate the whole presentation by conj^-1
        for (auto& r : p.relators) r = word_concat(word_concat(word_inverse(conj), r), conj);
        p.meridian = Word{letter};
        p.longitude = word_concat(word_concat(word_inverse(conj), p.longitude), conj);
    } else {
        p.meridian = Word{letter};
    }
    if (letter < 0) {
        // invert that generator everywhere
        int g = -letter;
        for (auto& r : p.relators)
            for (auto& x : r)
                if (std::abs(x) == g) x = -x;
        for (auto& x : p.meridian)
            if (std::abs(x) == g) x = -x;
        for (auto& x : p.longitude)
            if (std::abs(x) == g) x = -x;
        letter = g;
    }
    if (letter != 1 && p.generator_count >= 2) {
        // swap generator labels 1 <-> letter
        auto swap_in = [&](Word& w) {
            for (auto& x : w) {
                int g = std::abs(x);
                int s = x > 0 ? 1 : -1;
                if (g == 1) x = s * letter;
                else if (g == letter) x = s * 1;
            }
        };
        for (auto& r : p.relators) swap_in(r);
        swap_in(p.meridian);
        swap_in(p.longitude);
    }
    p.validate();
    if (p.generator_count == 2) {
        if (p.h1 != std::vector<long>{1, 1})
            throw Error(Errc::UnsupportedPresentation, "generators are not both meridians");
    }
    return p;
}

RepSystem rep_system_riley(const KnotPresentation& pres) {
    KnotPresentation p = pres;
    p.validate();
    if (p.generator_count < 1 || p.generator_count > 2)
        throw Error(Errc::WrongGeneratorCount,
                    "Riley system needs 1 or 2 generators, got " +
                        std::to_string(p.generator_count));
    if (p.generator_count == 2 && p.h1 != std::vector<long>{1, 1})
        throw Error(Errc::WrongGeneratorCount, "both generators must be meridians");
    if (p.meridian != Word{1})
        throw Error(Errc::WrongGeneratorCount, "meridian must be the first generator");

    RepSystem s;
    s.presentation_label = p.label;
    s.presentation = p;
    s.variables = p.generator_count == 2 ? std::vector<std::string>{"m", "t"}
                                         : std::vector<std::string>{"m"};

    MPoly m = mvar();
    for (const auto& rel : p.relators) {
        ScaledMat M = eval_word(rel);
        MPoly md = m.pow(M.den);
        MPoly eqs[4] = {M.e[0] - md, M.e[1], M.e[2], M.e[3] - md};
        for (auto& e : eqs) {
            if (e.is_zero()) continue;
            s.entry_equations.push_back(strip_m_monomial(e.primitive_integer()));
        }
    }
    if (!s.entry_equations.empty()) {
        MPoly g;
        for (const auto& e : s.entry_equations) g = mpoly_gcd(g, e);
        g = strip_m_monomial(g);
        if (!g.is_constant()) {
            s.equations.push_back(g);
        } else {
            // no common factor: fall back to the two smallest entry equations
            std::vector<MPoly> sorted = s.entry_equations;
            std::sort(sorted.begin(), sorted.end(), [](const MPoly& a, const MPoly& b) {
                if (a.degree("t") != b.degree("t")) return a.degree("t") < b.degree("t");
                return a.total_degree() < b.total_degree();
            });
            s.equations.push_back(sorted[0]);
            if (sorted.size() > 1) s.equations.push_back(sorted[1]);
        }
    }

    ScaledMat L = eval_word(p.longitude);
    s.longitude_num = L.e[0];
    s.longitude_den = m.pow(L.den);
    if (s.longitude_den.is_zero())
        throw Error(Errc::DenominatorIdenticallyZero, "longitude denominator vanished");
    return s;
}

std::vector<RepWitness> sample_witnesses(const RepSystem& s, int n_samples, double tol) {
    std::vector<RepWitness> out;
    if (s.equations.empty()) return out;
    const MPoly& primary = s.equations[0];
    if (primary.degree("t") < 1) return out;
    // fixed generic meridian samples away from the unit circle and from roots of unity
    static const std::complex<double> table[] = {
        {1.31, 0.41}, {0.73, -0.52}, {1.11, 0.87}, {0.57, 0.34},
        {1.62, -0.23}, {0.91, 0.66}, {1.23, -0.74}, {0.67, -0.88},
    };
    int n_avail = (int)(sizeof(table) / sizeof(table[0]));
    for (int i = 0; i < std::min(n_samples, n_avail); ++i) {
        std::complex<double> m0 = table[i];
        auto tc = primary.coeffs_in("t");
        std::vector<std::complex<double>> coeffs;
        for (const auto& c : tc) coeffs.push_back(c.eval({{"m", m0}}));
        ComplexRootSet roots;
        try {
            roots = roots_univar(coeffs, 1e-6);
        } catch (const Error&) {
            continue;
        }
        for (const auto& r : roots.roots) {
            std::complex<double> t0 = r.value;
            double defect = 0;
            for (const auto& rel : s.presentation.relators) {
                auto M = riley_word_at(rel, m0, t0);
                defect = std::max({defect, std::abs(M[0] - 1.0), std::abs(M[1]),
                                   std::abs(M[2]), std::abs(M[3] - 1.0)});
            }
            if (defect > tol) continue;
            std::complex<double> den = s.longitude_den.eval(
                std::map<std::string, std::complex<double>>{{"m", m0}, {"t", t0}});
            if (std::abs(den) < 1e-12) continue;
            std::complex<double> num = s.longitude_num.eval(
                std::map<std::string, std::complex<double>>{{"m", m0}, {"t", t0}});
            out.push_back({m0, t0, num / den, defect});
        }
    }
    return out;
}

std::string APolyResult::factored_str() const {
    if (nontrivial_factor.is_one()) return "l - 1";
    return "(l - 1) * (" + nontrivial_factor.str() + ")";
}

IntPoly2 raw_eliminant(const RepSystem& s, std::vector<std::string>* diagnostics) {
    MPoly l = MPoly::var("l");
    MPoly el = l * s.longitude_den - s.longitude_num;
    std::vector<std::string> local;
    auto& diag = diagnostics ? *diagnostics : local;

    MPoly raw;
    if (s.equations.empty()) {
        if (el.degree("t") > 0)
            throw Error(Errc::EmptySystem, "no relator equation but longitude depends on t");
        raw = el;
        diag.push_back("abelian system: longitude equation used directly");
    } else {
        const MPoly& primary = s.equations[0];
        if (primary.degree("t") > 64)
            throw Error(Errc::EliminationOverflow,
                        "t-degree " + std::to_string(primary.degree("t")) + " exceeds guard");
        if (primary.degree("t") < 1)
            throw Error(Errc::EmptySystem, "relator equation independent of t");
        if (el.degree("t") < 1) {
            raw = el;
            diag.push_back("longitude equation independent of t");
        } else {
            raw = mpoly_resultant(primary, el, "t");
            diag.push_back("resultant of " + primary.str() + " with longitude equation");
        }
    }
    if (raw.is_zero())
        throw Error(Errc::EmptySystem, "elimination produced the zero polynomial");
    return IntPoly2::from_mpoly(raw);
}

APolyResult prune_eliminant(IntPoly2 P, const RepSystem& s,
                            std::vector<std::string> diagnostics) {
    APolyResult res;
    res.diagnostics = std::move(diagnostics);

    // prune m^k monomial content
    {
        int vm = P.degree_m();
        for (const auto& [k, c] : P.terms()) vm = std::min(vm, k.first);
        if (vm > 0) {
            std::map<IntPoly2::Key, mpz_class> t2;
            for (const auto& [k, c] : P.terms()) t2[{k.first - vm, k.second}] = c;
            P = IntPoly2::from_terms(t2);
            res.diagnostics.push_back("removed monomial factor m^" + std::to_string(vm));
        }
    }
    // prune factors with no l-dependence (content in Z[m])
    {
        MPoly q = P.to_mpoly();
        MPoly cont = q.content_in("l");
        if (!cont.is_constant()) {
            auto d = MPoly::exact_div(q, cont);
            if (d) {
                P = IntPoly2::from_mpoly(*d);
                res.diagnostics.push_back("removed l-free content " + cont.str());
            }
        }
    }
    // squarefree part
    {
        IntPoly2 sf = squarefree(P);
        if (!(sf == P.normalized()))
            res.diagnostics.push_back("took squarefree part");
        P = sf;
    }
    // split off (l-1) if present
    IntPoly2 lminus1 = IntPoly2::monomial(1, 0, 1) + IntPoly2::constant(-1);
    auto [quot, had_l1] = divide_out(P, lminus1);
    IntPoly2 body = had_l1 ? quot : P;
    if (had_l1) res.diagnostics.push_back("(l-1) already present in eliminant");

    // witness-based pruning: the remaining factor must vanish on at least one
    // sampled representation witness
    auto wits = sample_witnesses(s);
    if (!wits.empty() && !body.is_one()) {
        int on_curve = 0;
        for (const auto& w : wits) {
            double v = std::abs(body.eval(w.m, w.l)) / body.eval_scale(w.m, w.l);
            if (v < 1e-6) ++on_curve;
        }
        if (on_curve == 0) {
            res.diagnostics.push_back("pruned non-witnessed factor " + body.str());
            body = IntPoly2::constant(1);
        } else {
            res.diagnostics.push_back("witness check passed on " + std::to_string(on_curve) +
                                      "/" + std::to_string(wits.size()) + " witnesses");
        }
        if (on_curve > 0 && on_curve < (int)wits.size())
            res.diagnostics.push_back(
                std::to_string(wits.size() - on_curve) +
                " witness(es) off the curve: 0-dimensional component candidates");
    }

    res.nontrivial_factor = body.normalized();
    res.a_poly = (res.nontrivial_factor * lminus1).normalized();
    if (!had_l1) res.diagnostics.push_back("appended reducible factor (l-1)");
    return res;
}

APolyResult eliminate_to_apoly(const RepSystem& s) {
    std::vector<std::string> diag;
    IntPoly2 raw = raw_eliminant(s, &diag);
    return prune_eliminant(std::move(raw), s, std::move(diag));
}

APolyResult apoly(const KnotPresentation& p) {
    KnotPresentation q = meridianize(p);
    RepSystem s = rep_system_riley(q);
    return eliminate_to_apoly(s);
}

} // namespace kap
