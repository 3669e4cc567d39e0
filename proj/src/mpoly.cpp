#include "kap/mpoly.hpp"
#include "kap/error.hpp"

#include <algorithm>
#include <sstream>

namespace kap {

namespace {

mpz_class mpz_gcd_of(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

} // namespace

MPoly MPoly::constant(const mpq_class& c) {
    MPoly p;
    if (c != 0) p.terms_[{}] = c;
    return p;
}

MPoly MPoly::var(const std::string& name, int exp) {
    MPoly p;
    p.vars_ = {name};
    if (exp == 0)
        p.terms_[{0}] = 1;
    else
        p.terms_[{exp}] = 1;
    return p;
}

bool MPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

mpq_class MPoly::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.begin()->second;
}

int MPoly::degree(const std::string& var) const {
    if (terms_.empty()) return -1;
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return 0;
    size_t idx = it - vars_.begin();
    int d = 0;
    for (const auto& [mon, c] : terms_) d = std::max(d, mon[idx]);
    return d;
}

int MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    int d = 0;
    for (const auto& [mon, c] : terms_) {
        int s = 0;
        for (int e : mon) s += e;
        d = std::max(d, s);
    }
    return d;
}

void MPoly::prune() {
    for (auto it = terms_.begin(); it != terms_.end();)
        it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

std::vector<std::string> merged_vars(const MPoly& a, const MPoly& b) {
    std::vector<std::string> v = a.vars_;
    for (const auto& name : b.vars_)
        if (std::find(v.begin(), v.end(), name) == v.end()) v.push_back(name);
    std::sort(v.begin(), v.end());
    return v;
}

MPoly align_vars(const MPoly& src, const std::vector<std::string>& to) {
    MPoly out;
    out.vars_ = to;
    std::vector<int> pos(src.vars_.size(), -1);
    for (size_t i = 0; i < src.vars_.size(); ++i) {
        auto it = std::find(to.begin(), to.end(), src.vars_[i]);
        if (it != to.end()) pos[i] = (int)(it - to.begin());
    }
    for (const auto& [mon, c] : src.terms_) {
        MPoly::Monomial m(to.size(), 0);
        for (size_t i = 0; i < mon.size(); ++i) {
            if (mon[i] == 0) continue;
            if (pos[i] < 0)
                throw Error(Errc::UnknownVariable, "cannot drop live variable " + src.vars_[i]);
            m[(size_t)pos[i]] = mon[i];
        }
        out.terms_[m] += c;
    }
    out.prune();
    return out;
}

MPoly MPoly::operator-() const {
    MPoly out = *this;
    for (auto& [mon, c] : out.terms_) c = -c;
    return out;
}

MPoly MPoly::operator+(const MPoly& o) const {
    auto v = merged_vars(*this, o);
    MPoly a = align_vars(*this, v), b = align_vars(o, v);
    for (const auto& [mon, c] : b.terms_) a.terms_[mon] += c;
    a.prune();
    return a;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
    auto v = merged_vars(*this, o);
    MPoly a = align_vars(*this, v), b = align_vars(o, v);
    MPoly out;
    out.vars_ = v;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m(v.size());
            for (size_t i = 0; i < v.size(); ++i) m[i] = ma[i] + mb[i];
            out.terms_[m] += ca * cb;
        }
    }
    out.prune();
    return out;
}

MPoly MPoly::operator*(const mpq_class& c) const {
    MPoly out = *this;
    if (c == 0) {
        out.terms_.clear();
        return out;
    }
    for (auto& [mon, v] : out.terms_) v *= c;
    return out;
}

bool MPoly::operator==(const MPoly& o) const { return (*this - o).is_zero(); }

MPoly MPoly::pow(int n) const {
    MPoly out = constant(1);
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

MPoly MPoly::derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) return MPoly();
    size_t idx = it - vars_.begin();
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [mon, c] : terms_) {
        if (mon[idx] == 0) continue;
        Monomial m = mon;
        m[idx] -= 1;
        out.terms_[m] += c * mon[idx];
    }
    out.prune();
    return out;
}

std::vector<MPoly> MPoly::coeffs_in(const std::string& var) const {
    int d = degree(var);
    if (d < 0) return {};
    auto it = std::find(vars_.begin(), vars_.end(), var);
    std::vector<MPoly> out((size_t)d + 1);
    for (auto& p : out) p.vars_ = vars_;
    if (it == vars_.end()) {
        out[0] = *this;
        return out;
    }
    size_t idx = it - vars_.begin();
    for (const auto& [mon, c] : terms_) {
        Monomial m = mon;
        int e = m[idx];
        m[idx] = 0;
        out[(size_t)e].terms_[m] += c;
    }
    for (auto& p : out) p.prune();
    return out;
}

MPoly MPoly::assemble_in(const std::string& var, const std::vector<MPoly>& coeffs) {
    MPoly out;
    MPoly x = MPoly::var(var);
    for (size_t i = 0; i < coeffs.size(); ++i) out = out + coeffs[i] * x.pow((int)i);
    return out;
}

MPoly MPoly::eval_partial(const std::map<std::string, mpq_class>& assignment) const {
    MPoly out;
    out.vars_ = vars_;
    for (const auto& [mon, c] : terms_) {
        mpq_class coeff = c;
        Monomial m = mon;
        for (size_t i = 0; i < vars_.size(); ++i) {
            auto it = assignment.find(vars_[i]);
            if (it == assignment.end() || m[i] == 0) continue;
            mpq_class p = 1;
            for (int k = 0; k < m[i]; ++k) p *= it->second;
            coeff *= p;
            m[i] = 0;
        }
        out.terms_[m] += coeff;
    }
    out.prune();
    // drop assigned variables from the list
    std::vector<std::string> keep;
    for (const auto& v : out.vars_)
        if (!assignment.count(v)) keep.push_back(v);
    return align_vars(out, keep);
}

mpq_class MPoly::eval(const std::map<std::string, mpq_class>& assignment) const {
    for (const auto& v : vars_)
        if (degree(v) > 0 && !assignment.count(v))
            throw Error(Errc::UnknownVariable, "no value for variable " + v);
    MPoly r = eval_partial(assignment);
    return r.constant_value();
}

std::complex<double> MPoly::eval(const std::map<std::string, std::complex<double>>& assignment) const {
    for (const auto& v : vars_)
        if (degree(v) > 0 && !assignment.count(v))
            throw Error(Errc::UnknownVariable, "no value for variable " + v);
    std::complex<double> sum = 0;
    for (const auto& [mon, c] : terms_) {
        std::complex<double> t = c.get_d();
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (mon[i] == 0) continue;
            auto base = assignment.at(vars_[i]);
            std::complex<double> p = 1;
            for (int k = 0; k < mon[i]; ++k) p *= base;
            t *= p;
        }
        sum += t;
    }
    return sum;
}

std::optional<MPoly> MPoly::exact_div(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return MPoly();
    auto v = merged_vars(a, b);
    MPoly r = align_vars(a, v), d = align_vars(b, v);
    MPoly q;
    q.vars_ = v;
    const auto& dlt = *d.terms_.rbegin(); // lex-leading term (map order = lex on exponents)
    while (!r.is_zero()) {
        const auto& rlt = *r.terms_.rbegin();
        Monomial m(v.size());
        for (size_t i = 0; i < v.size(); ++i) {
            m[i] = rlt.first[i] - dlt.first[i];
            if (m[i] < 0) return std::nullopt;
        }
        mpq_class c = rlt.second / dlt.second;
        MPoly t;
        t.vars_ = v;
        t.terms_[m] = c;
        q = q + t;
        r = r - t * d;
    }
    return q;
}

MPoly MPoly::primitive_integer() const {
    if (is_zero()) return *this;
    mpz_class den_lcm = 1;
    for (const auto& [mon, c] : terms_)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_class content = 0;
    for (const auto& [mon, c] : terms_) {
        mpq_class scaled = c * mpq_class(den_lcm);
        content = mpz_gcd_of(content, mpz_class(scaled.get_num()));
    }
    MPoly out = *this;
    mpq_class factor = mpq_class(den_lcm) / mpq_class(content);
    for (auto& [mon, c] : out.terms_) {
        c *= factor;
        c.canonicalize();
    }
    if (out.terms_.rbegin()->second < 0)
        for (auto& [mon, c] : out.terms_) c = -c;
    return out;
}

MPoly MPoly::content_in(const std::string& var) const {
    auto cs = coeffs_in(var);
    MPoly g;
    for (const auto& c : cs) g = mpoly_gcd(g, c);
    return g;
}

MPoly MPoly::primitive_part_in(const std::string& var) const {
    if (is_zero()) return *this;
    MPoly c = content_in(var);
    auto q = exact_div(*this, c);
    return q ? q->primitive_integer() : *this;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [mon, c] = *it;
        mpq_class a = c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool any_var = false;
        std::ostringstream vs;
        for (size_t i = 0; i < vars_.size(); ++i) {
            if (mon[i] == 0) continue;
            if (any_var) vs << "*";
            vs << vars_[i];
            if (mon[i] != 1) vs << "^" << mon[i];
            any_var = true;
        }
        if (!any_var)
            os << a.get_str();
        else if (a == 1)
            os << vs.str();
        else
            os << a.get_str() << "*" << vs.str();
    }
    return os.str();
}

namespace {

// pseudo-remainder of a by b in the variable var (coefficients stay polynomial)
MPoly pseudo_rem(const MPoly& a, const MPoly& b, const std::string& var) {
    int db = b.degree(var);
    MPoly r = a;
    MPoly lb = b.coeffs_in(var)[(size_t)db];
    MPoly x = MPoly::var(var);
    int guard = a.degree(var) - db + 2;
    while (!r.is_zero() && r.degree(var) >= db && guard-- > 0) {
        int dr = r.degree(var);
        MPoly lr = r.coeffs_in(var)[(size_t)dr];
        r = r * lb - lr * x.pow(dr - db) * b;
    }
    return r;
}

} // namespace

MPoly mpoly_gcd(const MPoly& a0, const MPoly& b0) {
    MPoly a = a0.primitive_integer();
    MPoly b = b0.primitive_integer();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // main variable: lexicographically last one actually present
    std::string main;
    for (const auto& p : {a, b})
        for (const auto& v : p.vars())
            if (p.degree(v) > 0 && (main.empty() || v > main)) main = v;
    if (main.empty()) return MPoly::constant(1);
    if (a.degree(main) == 0 || b.degree(main) == 0) {
        // one side free of the main variable: gcd divides its content
        const MPoly& flat = a.degree(main) == 0 ? a : b;
        const MPoly& other = a.degree(main) == 0 ? b : a;
        return mpoly_gcd(flat, other.content_in(main));
    }
    MPoly ca = a.content_in(main), cb = b.content_in(main);
    MPoly cg = mpoly_gcd(ca, cb);
    MPoly f = *MPoly::exact_div(a, ca);
    MPoly g = *MPoly::exact_div(b, cb);
    if (f.degree(main) < g.degree(main)) std::swap(f, g);
    // primitive PRS
    while (true) {
        MPoly r = pseudo_rem(f, g, main);
        if (r.is_zero()) break;
        r = r.primitive_part_in(main);
        f = g;
        g = r;
        if (g.degree(main) == 0) {
            g = MPoly::constant(1);
            break;
        }
    }
    return (g * cg).primitive_integer();
}

MPoly mpoly_resultant(const MPoly& p, const MPoly& q, const std::string& var) {
    if (p.is_zero() || q.is_zero()) throw Error(Errc::ZeroInput, "resultant of zero polynomial");
    int dp = p.degree(var), dq = q.degree(var);
    if (dp <= 0 && dq <= 0)
        throw Error(Errc::ZeroInput, "neither input contains " + var);
    if (dp == 0) return p.pow(dq);
    if (dq == 0) return q.pow(dp);
    auto pc = p.coeffs_in(var);
    auto qc = q.coeffs_in(var);
    int n = dp + dq;
    std::vector<std::vector<MPoly>> M((size_t)n, std::vector<MPoly>((size_t)n));
    for (int i = 0; i < dq; ++i)
        for (int j = 0; j <= dp; ++j) M[(size_t)i][(size_t)(i + j)] = pc[(size_t)(dp - j)];
    for (int i = 0; i < dp; ++i)
        for (int j = 0; j <= dq; ++j) M[(size_t)(dq + i)][(size_t)(i + j)] = qc[(size_t)(dq - j)];

    // Bareiss fraction-free elimination
    MPoly prev = MPoly::constant(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (M[(size_t)k][(size_t)k].is_zero()) {
            int sel = -1;
            for (int i = k + 1; i < n; ++i)
                if (!M[(size_t)i][(size_t)k].is_zero()) { sel = i; break; }
            if (sel < 0) return MPoly(); // singular: resultant 0
            std::swap(M[(size_t)k], M[(size_t)sel]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MPoly num = M[(size_t)k][(size_t)k] * M[(size_t)i][(size_t)j] -
                            M[(size_t)i][(size_t)k] * M[(size_t)k][(size_t)j];
                auto d = MPoly::exact_div(num, prev);
                if (!d) throw Error(Errc::ZeroInput, "Bareiss exact division failed");
                M[(size_t)i][(size_t)j] = *d;
            }
            M[(size_t)i][(size_t)k] = MPoly();
        }
        prev = M[(size_t)k][(size_t)k];
    }
    MPoly det = M[(size_t)(n - 1)][(size_t)(n - 1)];
    return sign < 0 ? -det : det;
}

} // namespace kap
