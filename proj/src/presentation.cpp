#include "kap/presentation.hpp"
#include "kap/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace kap {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::MalformedFraction: return "MalformedFraction";
        case Errc::EvenP: return "EvenP";
        case Errc::NotCoprime: return "NotCoprime";
        case Errc::MultiComponentLink: return "MultiComponentLink";
        case Errc::EmptyWord: return "EmptyWord";
        case Errc::BadPresentation: return "BadPresentation";
        case Errc::UnknownVariable: return "UnknownVariable";
        case Errc::ZeroInput: return "ZeroInput";
        case Errc::DegreeZero: return "DegreeZero";
        case Errc::NonConvergence: return "NonConvergence";
        case Errc::WrongGeneratorCount: return "WrongGeneratorCount";
        case Errc::DenominatorIdenticallyZero: return "DenominatorIdenticallyZero";
        case Errc::EliminationOverflow: return "EliminationOverflow";
        case Errc::EmptySystem: return "EmptySystem";
        case Errc::UnsupportedPresentation: return "UnsupportedPresentation";
        case Errc::ToleranceNotMet: return "ToleranceNotMet";
        case Errc::Infeasible: return "Infeasible";
        case Errc::SliceBlocked: return "SliceBlocked";
        case Errc::CorridorTooNarrow: return "CorridorTooNarrow";
        case Errc::DegenerateSlice: return "DegenerateSlice";
        case Errc::BadConfig: return "BadConfig";
        case Errc::IoError: return "IoError";
    }
    return "UnknownError";
}

namespace {

long floor_div(long a, long b) {
    long q = a / b, r = a % b;
    return (r != 0 && (r < 0) != (b < 0)) ? q - 1 : q;
}

// Primitive integer vector describing the abelianization map onto Z.
// Requires the relator exponent matrix to have a rank-1 kernel.
std::vector<long> abelianization_map(int n_gens, const std::vector<Word>& relators) {
    if (n_gens <= 0) throw Error(Errc::BadPresentation, "no generators");
    std::vector<std::vector<long>> rows;
    for (const auto& r : relators) {
        std::vector<long> row(n_gens, 0);
        for (int x : r) row[std::abs(x) - 1] += x > 0 ? 1 : -1;
        if (std::any_of(row.begin(), row.end(), [](long v) { return v != 0; }))
            rows.push_back(row);
    }
    // fraction-free row echelon
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < n_gens && rank < (int)rows.size(); ++col) {
        int sel = -1;
        for (int i = rank; i < (int)rows.size(); ++i)
            if (rows[i][col] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(rows[rank], rows[sel]);
        for (int i = rank + 1; i < (int)rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            long a = rows[rank][col], b = rows[i][col];
            long g = std::gcd(std::abs(a), std::abs(b));
            long fa = b / g, fb = a / g;
            for (int j = 0; j < n_gens; ++j)
                rows[i][j] = rows[i][j] * fb - rows[rank][j] * fa;
        }
        pivot_col.push_back(col);
        ++rank;
    }
    if (n_gens - rank != 1)
        throw Error(Errc::BadPresentation, "abelianization has rank != 1");
    std::vector<bool> is_pivot(n_gens, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = 0;
    while (free_col < n_gens && is_pivot[free_col]) ++free_col;
    // exact back-substitution, rescaling to stay integral
    std::vector<long> v(n_gens, 0);
    v[free_col] = 1;
    for (int i = rank - 1; i >= 0; --i) {
        int pc = pivot_col[i];
        long num = 0;
        for (int j = pc + 1; j < n_gens; ++j) num += rows[i][j] * v[j];
        long den = rows[i][pc];
        if (num == 0) { v[pc] = 0; continue; }
        long g = std::gcd(std::abs(num), std::abs(den));
        long mult = std::abs(den) / g;
        if (mult != 1) {
            for (auto& x : v) x *= mult;
            num *= mult;
        }
        v[pc] = -num / den;
    }
    long g = 0;
    for (long x : v) g = std::gcd(g, std::abs(x));
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

} // namespace

long KnotPresentation::h1_image(const Word& w) const {
    long s = 0;
    for (int x : w) s += (x > 0 ? 1 : -1) * h1.at(std::abs(x) - 1);
    return s;
}

void KnotPresentation::validate() {
    h1 = abelianization_map(generator_count, relators);
    long mi = h1_image(meridian);
    if (mi == -1) {
        for (auto& x : h1) x = -x;
        mi = 1;
    }
    if (mi != 1)
        throw Error(Errc::BadPresentation, "meridian does not map to 1 in H1");
    if (h1_image(longitude) != 0)
        throw Error(Errc::BadPresentation, "longitude does not map to 0 in H1");
    for (const auto& r : relators)
        if (h1_image(r) != 0)
            throw Error(Errc::BadPresentation, "relator has nonzero H1 image");
}

TwoBridgeKnot TwoBridgeKnot::make(long p, long q) {
    if (p <= 0 || p % 2 == 0) throw Error(Errc::EvenP, "p must be odd and positive");
    q %= p;
    if (q < 0) q += p;
    if (p == 1) q = 1; // unknot
    if (q == 0 || std::gcd(p, q) != 1)
        throw Error(Errc::NotCoprime, "gcd(p,q) != 1");
    return TwoBridgeKnot{p, q};
}

TorusKnotParams TorusKnotParams::make(long p, long q) {
    if (p < 2 || q < 2)
        throw Error(Errc::NotCoprime,
                    "torus parameters must both be >= 2 (p or q = 1 is the unknot; use 1/1)");
    if (std::gcd(p, q) != 1) throw Error(Errc::NotCoprime, "gcd(p,q) != 1");
    return TorusKnotParams{p, q};
}

TwoBridgeKnot parse_two_bridge(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos)
        throw Error(Errc::MalformedFraction, "expected p/q: " + text);
    long p, q;
    try {
        size_t used = 0;
        p = std::stol(text.substr(0, slash), &used);
        if (used != slash) throw std::invalid_argument("");
        std::string qs = text.substr(slash + 1);
        q = std::stol(qs, &used);
        if (qs.empty() || used != qs.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw Error(Errc::MalformedFraction, "expected p/q with decimal integers: " + text);
    }
    return TwoBridgeKnot::make(p, q);
}

Word schubert_word(long p, long q) {
    // the classical normal form wants an odd partial quotient; an even q in
    // (0,p) is replaced by the odd representative q - p of the same knot
    long qw = (q % 2 != 0) ? q : q - p;
    Word w;
    for (long i = 1; i < p; ++i) {
        long fl = floor_div(i * qw, p);
        int sign = (((fl % 2) + 2) % 2 == 0) ? 1 : -1;
        int gen = (i % 2 == 1) ? 1 : 2;
        w.push_back(sign * gen);
    }
    return w;
}

KnotPresentation presentation_two_bridge(const TwoBridgeKnot& k) {
    KnotPresentation pr;
    pr.label = "two-bridge " + std::to_string(k.p) + "/" + std::to_string(k.q);
    if (k.p == 1) {
        pr.generator_count = 1;
        pr.meridian = {1};
        pr.longitude = {};
        pr.validate();
        return pr;
    }
    pr.generator_count = 2;
    Word w = schubert_word(k.p, k.q);
    Word rel = w; // w a w^-1 b^-1
    rel.push_back(1);
    Word wi = word_inverse(w);
    rel.insert(rel.end(), wi.begin(), wi.end());
    rel.push_back(-2);
    pr.relators.push_back(free_reduce(rel));
    pr.meridian = {1};
    // longitude = wtilde w a^{-2e}, wtilde = w with letters in reverse order
    Word wt(w.rbegin(), w.rend());
    Word lam = word_concat(wt, w);
    int e = exponent_sum(lam) / 2;
    pr.longitude = word_concat(lam, word_pow(Word{1}, -2 * e));
    pr.validate();
    return pr;
}

KnotPresentation presentation_torus(const TorusKnotParams& k) {
    KnotPresentation pr;
    pr.label = "torus " + std::to_string(k.p) + "," + std::to_string(k.q);
    pr.generator_count = 2;
    pr.relators.push_back(word_concat(word_pow(Word{1}, (int)k.p), word_pow(Word{2}, (int)-k.q)));
    // meridian x^-r y^s with p s - q r = 1, least nonnegative r, s
    long r = -1, s = -1;
    for (long cand = 0; cand < k.q; ++cand) {
        if ((k.p * cand - 1) % k.q == 0 && (k.p * cand - 1) / k.q >= 0) {
            s = cand;
            r = (k.p * cand - 1) / k.q;
            break;
        }
    }
    if (s < 0) throw Error(Errc::BadPresentation, "no valid meridian framing found");
    pr.meridian = word_concat(word_pow(Word{1}, (int)-r), word_pow(Word{2}, (int)s));
    // longitude = x^p meridian^{-p q}
    Word lam = word_pow(Word{1}, (int)k.p);
    Word mer_inv = word_inverse(pr.meridian);
    for (long i = 0; i < k.p * k.q; ++i) lam = word_concat(lam, mer_inv);
    pr.longitude = lam;
    pr.validate();
    return pr;
}

KnotPresentation parse_braid(const std::string& text) {
    if (text.empty()) throw Error(Errc::EmptyWord, "empty braid word");
    struct Crossing { int pos; int sign; };
    std::vector<Crossing> xs;
    int max_pos = 0;
    for (char c : text) {
        if (c >= 'a' && c <= 'z')
            xs.push_back({c - 'a', +1});
        else if (c >= 'A' && c <= 'Z')
            xs.push_back({c - 'A', -1});
        else
            throw Error(Errc::EmptyWord, std::string("bad braid letter: ") + c);
        max_pos = std::max(max_pos, xs.back().pos + 1);
    }
    int n = max_pos + 1; // strands

    {
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        for (const auto& c : xs) std::swap(perm[c.pos], perm[c.pos + 1]);
        std::vector<bool> seen(n, false);
        int cycles = 0;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            ++cycles;
            for (int j = i; !seen[j]; j = perm[j]) seen[j] = true;
        }
        if (cycles != 1)
            throw Error(Errc::MultiComponentLink,
                        "braid closure has " + std::to_string(cycles) + " components");
    }

    // Wirtinger data: one arc per position segment, one relator per crossing.
    // At sigma_i the strand at position i passes over and moves to i+1; at
    // sigma_i^-1 the roles swap. The understrand emerges as a fresh arc:
    // fresh = over^s under over^-s.
    int next_arc = n;
    std::vector<int> at(n);
    for (int i = 0; i < n; ++i) at[i] = i;
    struct Rel { int out, over, in, sign; };
    std::vector<Rel> rels;
    std::vector<int> over_at_crossing(xs.size());
    for (size_t k = 0; k < xs.size(); ++k) {
        const auto& c = xs[k];
        int over, under, fresh = next_arc++;
        if (c.sign > 0) {
            over = at[c.pos];
            under = at[c.pos + 1];
            at[c.pos] = fresh;
            at[c.pos + 1] = over;
        } else {
            over = at[c.pos + 1];
            under = at[c.pos];
            at[c.pos + 1] = fresh;
            at[c.pos] = over;
        }
        over_at_crossing[k] = over;
        rels.push_back({fresh, over, under, c.sign});
    }
    // closure identifications via union-find
    std::vector<int> parent(next_arc);
    for (int i = 0; i < next_arc; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int j = 0; j < n; ++j) parent[find(at[j])] = find(j);

    // longitude: walk the closed strand from top position 0 collecting the
    // over-arc at every under-pass, then compose in reverse traversal order
    std::vector<int> collected;
    {
        int pos = 0;
        bool first = true;
        while (first || pos != 0) {
            first = false;
            for (size_t k = 0; k < xs.size(); ++k) {
                bool under_pass = xs[k].sign > 0 ? (xs[k].pos + 1 == pos)
                                                 : (xs[k].pos == pos);
                if (xs[k].pos == pos || xs[k].pos + 1 == pos) {
                    if (under_pass)
                        collected.push_back(xs[k].sign * (over_at_crossing[k] + 1));
                    pos = (xs[k].pos == pos) ? xs[k].pos + 1 : xs[k].pos;
                }
            }
        }
    }

    std::vector<int> rep_of(next_arc, -1);
    int n_gens = 0;
    for (int i = 0; i < next_arc; ++i) {
        int r = find(i);
        if (rep_of[r] < 0) rep_of[r] = n_gens++;
    }
    // rep_of indexed by root; map arbitrary arc to generator
    auto genof = [&](int arc) { return rep_of[find(arc)] + 1; };

    KnotPresentation pr;
    pr.generator_count = n_gens;
    pr.label = "braid " + text;
    for (const auto& r : rels) {
        Word rel{-genof(r.out), r.sign * genof(r.over), genof(r.in), -r.sign * genof(r.over)};
        rel = free_reduce(rel);
        if (!rel.empty()) pr.relators.push_back(rel);
    }
    pr.meridian = {genof(0)};
    Word lam;
    for (auto it = collected.rbegin(); it != collected.rend(); ++it)
        lam.push_back((*it > 0 ? 1 : -1) * genof(std::abs(*it) - 1));
    int e = exponent_sum(lam);
    pr.longitude = word_concat(lam, word_pow(pr.meridian, -e));
    pr.validate();
    return pr;
}

KnotPresentation parse_knot_spec(const std::string& spec) {
    if (spec.rfind("torus:", 0) == 0) {
        std::string body = spec.substr(6);
        auto comma = body.find(',');
        if (comma == std::string::npos)
            throw Error(Errc::MalformedFraction, "expected torus:p,q");
        try {
            long p = std::stol(body.substr(0, comma));
            long q = std::stol(body.substr(comma + 1));
            return presentation_torus(TorusKnotParams::make(p, q));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            throw Error(Errc::MalformedFraction, "expected torus:p,q with integers");
        }
    }
    if (spec.rfind("braid:", 0) == 0) return parse_braid(spec.substr(6));
    return presentation_two_bridge(parse_two_bridge(spec));
}

std::string presentation_to_json(const KnotPresentation& p) {
    nlohmann::ordered_json j;
    j["generators"] = p.generator_count;
    j["relators"] = p.relators;
    j["meridian"] = p.meridian;
    j["longitude"] = p.longitude;
    j["label"] = p.label;
    return j.dump(2) + "\n";
}

KnotPresentation presentation_from_json(const std::string& text) {
    KnotPresentation p;
    try {
        auto j = nlohmann::json::parse(text);
        p.generator_count = j.at("generators").get<int>();
        p.relators = j.at("relators").get<std::vector<Word>>();
        p.meridian = j.at("meridian").get<Word>();
        p.longitude = j.at("longitude").get<Word>();
        p.label = j.value("label", "");
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadPresentation, std::string("presentation JSON: ") + e.what());
    }
    p.validate();
    return p;
}

} // namespace kap
