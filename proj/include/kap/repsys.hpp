#pragma once

#include "kap/intpoly2.hpp"
#include "kap/mpoly.hpp"
#include "kap/presentation.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace kap {

// Polynomial system encoding SL(2,C) representations of a 2-generator
// meridian presentation in the Riley normal form
//   rho(a) = [[m,1],[0,1/m]],  rho(b) = [[m,0],[t,1/m]].
// On the solution set the longitude is upper triangular and
// l = longitude_num / longitude_den at its (1,1) entry.
struct RepSystem {
    std::vector<std::string> variables;   // {"m"} or {"m","t"}
    std::vector<MPoly> equations;         // gcd-reduced, primary first
    std::vector<MPoly> entry_equations;   // raw relator matrix-entry equations
    MPoly longitude_num;
    MPoly longitude_den;
    std::string presentation_label;
    KnotPresentation presentation;        // reduced presentation the system came from
};

struct APolyResult {
    IntPoly2 a_poly;             // squarefree, normalized, divisible by (l-1)
    IntPoly2 nontrivial_factor;  // a_poly with the (l-1) factor divided out
    std::vector<std::string> diagnostics;

    std::string factored_str() const;
};

// Numerically solved representation witness.
struct RepWitness {
    std::complex<double> m, t, l;
    double residual = 0.0; // max relator matrix defect across relators
};

// Eliminate generators that occur exactly once in some relator, as far as
// possible. Never throws on irreducible presentations; the result may still
// have more than two generators.
KnotPresentation tietze_reduce_best_effort(const KnotPresentation& p);

// Tietze-reduce an arbitrary supported presentation to two meridian
// generators (or one, for the unknot). Torus presentations x^p y^-q with
// min(p,q) = 2 are rewritten to the Schubert presentation of the same knot.
KnotPresentation meridianize(const KnotPresentation& p);

RepSystem rep_system_riley(const KnotPresentation& p);

// Solve the primary equation at sample meridian values and evaluate the
// longitude, checking all entry equations. Used for pruning and tests.
std::vector<RepWitness> sample_witnesses(const RepSystem& s, int n_samples = 6,
                                         double tol = 1e-8);

// Raw eliminant before pruning: the t-resultant of the primary equation with
// l * longitude_den - longitude_num.
IntPoly2 raw_eliminant(const RepSystem& s, std::vector<std::string>* diagnostics = nullptr);

// Shared pruning/normalization chain: monomial and l-free content removal,
// squarefree part, witness filter, (l-1) factor, canonical normalization.
APolyResult prune_eliminant(IntPoly2 raw, const RepSystem& s,
                            std::vector<std::string> diagnostics = {});

APolyResult eliminate_to_apoly(const RepSystem& s);

APolyResult apoly(const KnotPresentation& p);

// Numeric 2x2 matrices of the Riley assignment at (m, t); index 0 = rho(a),
// 1 = rho(b). For witness verification.
std::array<std::complex<double>, 4> riley_matrix_at(int generator, bool inverse,
                                                    std::complex<double> m,
                                                    std::complex<double> t);
std::array<std::complex<double>, 4> riley_word_at(const Word& w, std::complex<double> m,
                                                  std::complex<double> t);

} // namespace kap
