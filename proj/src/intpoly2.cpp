#include "kap/intpoly2.hpp"
#include "kap/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kap {

namespace {

// lex order with l ranked above m: compare (deg_l, deg_m)
bool lex_less(const IntPoly2::Key& a, const IntPoly2::Key& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
}

} // namespace

IntPoly2 IntPoly2::from_terms(std::map<Key, mpz_class> terms) {
    IntPoly2 p;
    for (auto& [k, c] : terms)
        if (c != 0) p.terms_[k] = c;
    return p;
}

IntPoly2 IntPoly2::constant(long c) { return monomial(c, 0, 0); }

IntPoly2 IntPoly2::monomial(long c, int dm, int dl) {
    IntPoly2 p;
    if (c != 0) p.terms_[{dm, dl}] = c;
    return p;
}

IntPoly2 IntPoly2::from_mpoly(const MPoly& p) {
    for (const auto& v : p.vars())
        if (v != "m" && v != "l" && p.degree(v) > 0)
            throw Error(Errc::UnknownVariable, "IntPoly2 conversion: unexpected variable " + v);
    // clear denominators (a no-op for integral input); keep content and sign
    mpz_class den_lcm = 1;
    for (const auto& [mon, c] : p.terms())
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    IntPoly2 out;
    int im = -1, il = -1;
    for (size_t i = 0; i < p.vars().size(); ++i) {
        if (p.vars()[i] == "m") im = (int)i;
        if (p.vars()[i] == "l") il = (int)i;
    }
    for (const auto& [mon, c] : p.terms()) {
        int dm = im >= 0 ? mon[(size_t)im] : 0;
        int dl = il >= 0 ? mon[(size_t)il] : 0;
        mpq_class scaled = c * mpq_class(den_lcm);
        out.terms_[{dm, dl}] = mpz_class(scaled.get_num());
    }
    return out;
}

MPoly IntPoly2::to_mpoly() const {
    MPoly out;
    MPoly m = MPoly::var("m"), l = MPoly::var("l");
    for (const auto& [k, c] : terms_)
        out = out + m.pow(k.first) * l.pow(k.second) * MPoly::constant(mpq_class(c));
    return out;
}

bool IntPoly2::is_one() const {
    return terms_.size() == 1 && terms_.count({0, 0}) && terms_.at({0, 0}) == 1;
}

int IntPoly2::degree_m() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
}

int IntPoly2::degree_l() const {
    int d = -1;
    for (const auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
}

IntPoly2 IntPoly2::operator*(const IntPoly2& o) const {
    IntPoly2 out;
    for (const auto& [ka, ca] : terms_)
        for (const auto& [kb, cb] : o.terms_)
            out.terms_[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    for (auto it = out.terms_.begin(); it != out.terms_.end();)
        it = (it->second == 0) ? out.terms_.erase(it) : std::next(it);
    return out;
}

IntPoly2 IntPoly2::operator+(const IntPoly2& o) const {
    IntPoly2 out = *this;
    for (const auto& [k, c] : o.terms_) out.terms_[k] += c;
    for (auto it = out.terms_.begin(); it != out.terms_.end();)
        it = (it->second == 0) ? out.terms_.erase(it) : std::next(it);
    return out;
}

IntPoly2 IntPoly2::operator-(const IntPoly2& o) const {
    IntPoly2 neg;
    for (const auto& [k, c] : o.terms_) neg.terms_[k] = -c;
    return *this + neg;
}

IntPoly2 IntPoly2::normalized() const {
    if (terms_.empty()) return *this;
    mpz_class content = 0;
    for (const auto& [k, c] : terms_)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    Key lead = terms_.begin()->first;
    for (const auto& [k, c] : terms_)
        if (lex_less(lead, k)) lead = k;
    if (terms_.at(lead) < 0) content = -content;
    IntPoly2 out;
    for (const auto& [k, c] : terms_) out.terms_[k] = c / content;
    return out;
}

std::complex<double> IntPoly2::eval(std::complex<double> m, std::complex<double> l) const {
    std::complex<double> s = 0;
    for (const auto& [k, c] : terms_) {
        std::complex<double> t = c.get_d();
        for (int i = 0; i < k.first; ++i) t *= m;
        for (int i = 0; i < k.second; ++i) t *= l;
        s += t;
    }
    return s;
}

double IntPoly2::eval_scale(std::complex<double> m, std::complex<double> l) const {
    double maxc = 0;
    for (const auto& [k, c] : terms_) maxc = std::max(maxc, std::abs(c.get_d()));
    if (maxc == 0) return 1.0;
    double s = maxc;
    double am = std::max(1.0, std::abs(m)), al = std::max(1.0, std::abs(l));
    for (int i = 0; i < degree_m(); ++i) s *= am;
    for (int i = 0; i < degree_l(); ++i) s *= al;
    return s;
}

std::string IntPoly2::str() const {
    if (terms_.empty()) return "0";
    // print in descending lex order, l above m
    std::vector<std::pair<Key, mpz_class>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(),
              [](const auto& a, const auto& b) { return lex_less(b.first, a.first); });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : ts) {
        mpz_class a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::ostringstream vs;
        bool any = false;
        if (k.second > 0) {
            vs << "l";
            if (k.second > 1) vs << "^" << k.second;
            any = true;
        }
        if (k.first > 0) {
            if (any) vs << "*";
            vs << "m";
            if (k.first > 1) vs << "^" << k.first;
            any = true;
        }
        if (!any)
            os << a.get_str();
        else if (a == 1)
            os << vs.str();
        else
            os << a.get_str() << "*" << vs.str();
    }
    return os.str();
}

std::string IntPoly2::to_json() const {
    nlohmann::ordered_json j;
    j["var_order"] = {"m", "l"};
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_)
        arr.push_back({k.first, k.second, c.get_str()});
    j["terms"] = arr;
    return j.dump(2) + "\n";
}

IntPoly2 IntPoly2::from_json(const std::string& text) {
    IntPoly2 out;
    try {
        auto j = nlohmann::json::parse(text);
        auto vo = j.at("var_order").get<std::vector<std::string>>();
        if (vo != std::vector<std::string>{"m", "l"})
            throw Error(Errc::BadConfig, "IntPoly2 JSON: var_order must be [m,l]");
        for (const auto& t : j.at("terms")) {
            int dm = t.at(0).get<int>();
            int dl = t.at(1).get<int>();
            mpz_class c(t.at(2).get<std::string>());
            if (c != 0) out.terms_[{dm, dl}] += c;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::BadConfig, std::string("IntPoly2 JSON: ") + e.what());
    }
    return out;
}

IntPoly2 squarefree(const IntPoly2& p) {
    if (p.is_zero()) return p;
    MPoly q = p.to_mpoly();
    MPoly g = mpoly_gcd(mpoly_gcd(q, q.derivative("m")), q.derivative("l"));
    if (g.is_constant()) return p.normalized();
    auto d = MPoly::exact_div(q, g);
    if (!d) return p.normalized();
    return IntPoly2::from_mpoly(*d).normalized();
}

std::pair<IntPoly2, bool> divide_out(const IntPoly2& p, const IntPoly2& d) {
    if (d.is_zero()) return {p, false};
    auto q = MPoly::exact_div(p.to_mpoly(), d.to_mpoly());
    if (!q) return {p, false};
    return {IntPoly2::from_mpoly(*q), true};
}

} // namespace kap
