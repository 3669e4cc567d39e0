#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kap {

// Sparse multivariate polynomial over the rationals. Variables are named;
// exponent vectors are aligned to `vars`. Terms never hold a zero
// coefficient and exponent vectors always have size vars.size().
class MPoly {
public:
    using Monomial = std::vector<int>;

    MPoly() = default;
    static MPoly constant(const mpq_class& c);
    static MPoly constant(long c) { return constant(mpq_class(c)); }
    static MPoly var(const std::string& name, int exp = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_value() const; // requires is_constant()

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Monomial, mpq_class>& terms() const { return terms_; }

    int degree(const std::string& var) const; // -1 for the zero polynomial
    int total_degree() const;

    MPoly operator-() const;
    MPoly operator+(const MPoly& o) const;
    MPoly operator-(const MPoly& o) const;
    MPoly operator*(const MPoly& o) const;
    MPoly operator*(const mpq_class& c) const;
    bool operator==(const MPoly& o) const;

    MPoly pow(int n) const;
    MPoly derivative(const std::string& var) const;

    // Dense coefficient list in `var`, ascending degree; each entry keeps the
    // full variable set with the exponent of `var` zeroed.
    std::vector<MPoly> coeffs_in(const std::string& var) const;
    static MPoly assemble_in(const std::string& var, const std::vector<MPoly>& coeffs);

    // Substitute rational values for a subset of the variables.
    MPoly eval_partial(const std::map<std::string, mpq_class>& assignment) const;
    // Full evaluation; throws Error(UnknownVariable) if a variable present in
    // the polynomial has no assigned value.
    mpq_class eval(const std::map<std::string, mpq_class>& assignment) const;
    std::complex<double> eval(const std::map<std::string, std::complex<double>>& assignment) const;

    // Exact polynomial division; nullopt if not divisible.
    static std::optional<MPoly> exact_div(const MPoly& a, const MPoly& b);

    // Content and primitive part with respect to one variable.
    MPoly content_in(const std::string& var) const;
    MPoly primitive_part_in(const std::string& var) const;

    // Clear denominators and divide out integer content; sign normalized so
    // the lex-leading coefficient is positive. Zero stays zero.
    MPoly primitive_integer() const;

    std::string str() const;

private:
    void prune();
    friend MPoly align_vars(const MPoly& src, const std::vector<std::string>& to);
    friend std::vector<std::string> merged_vars(const MPoly& a, const MPoly& b);

    std::vector<std::string> vars_;
    std::map<Monomial, mpq_class> terms_;
};

// gcd of multivariate polynomials over Q, returned as a primitive integer
// polynomial with positive lex-leading coefficient. gcd(0,0) = 0.
MPoly mpoly_gcd(const MPoly& a, const MPoly& b);

// Sylvester resultant eliminating `var`, computed by fraction-free (Bareiss)
// elimination. Both inputs must be nonzero; at least one must contain `var`.
MPoly mpoly_resultant(const MPoly& p, const MPoly& q, const std::string& var);

} // namespace kap
