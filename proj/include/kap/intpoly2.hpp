#pragma once

#include "kap/mpoly.hpp"

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <utility>

namespace kap {

// Exact bivariate polynomial in (m, l) over the integers. Canonical form:
// no zero coefficients, integer content 1, and the coefficient of the
// lex-leading monomial (l before m) positive.
class IntPoly2 {
public:
    // key = (deg_m, deg_l)
    using Key = std::pair<int, int>;

    IntPoly2() = default;
    static IntPoly2 from_terms(std::map<Key, mpz_class> terms);
    static IntPoly2 constant(long c);
    // monomial c * m^dm * l^dl
    static IntPoly2 monomial(long c, int dm, int dl);

    static IntPoly2 from_mpoly(const MPoly& p); // must only involve m, l
    MPoly to_mpoly() const;

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::map<Key, mpz_class>& terms() const { return terms_; }

    int degree_m() const;
    int degree_l() const;

    IntPoly2 operator*(const IntPoly2& o) const;
    IntPoly2 operator+(const IntPoly2& o) const;
    IntPoly2 operator-(const IntPoly2& o) const;
    bool operator==(const IntPoly2& o) const { return terms_ == o.terms_; }

    // Integer content 1, positive lex-leading (l > m) coefficient.
    IntPoly2 normalized() const;

    std::complex<double> eval(std::complex<double> m, std::complex<double> l) const;
    // max |coeff| * max(1,|m|)^deg_m * max(1,|l|)^deg_l
    double eval_scale(std::complex<double> m, std::complex<double> l) const;

    std::string str() const;

    std::string to_json() const;
    static IntPoly2 from_json(const std::string& text);

private:
    std::map<Key, mpz_class> terms_;
};

// product of the distinct irreducible factors of p (content-normalized)
IntPoly2 squarefree(const IntPoly2& p);

// exact division; on failure returns (p, false) unchanged
std::pair<IntPoly2, bool> divide_out(const IntPoly2& p, const IntPoly2& d);

} // namespace kap
