#pragma once

#include "kap/word.hpp"

#include <string>
#include <vector>

namespace kap {

struct TwoBridgeKnot {
    // p odd, gcd(p, q) = 1, normalized to 0 < q < p.
    long p = 1;
    long q = 1;

    static TwoBridgeKnot make(long p, long q);
};

struct TorusKnotParams {
    // coprime, both >= 2
    long p = 2;
    long q = 3;

    static TorusKnotParams make(long p, long q);
};

// Finite group presentation with a distinguished meridian word and a
// homologically trivial longitude word. h1 holds the image of each
// generator under the abelianization map onto Z, normalized so the
// meridian maps to +1.
struct KnotPresentation {
    int generator_count = 0;
    std::vector<Word> relators;
    Word meridian;
    Word longitude;
    std::string label;
    std::vector<long> h1;

    // Image of a word under the abelianization map.
    long h1_image(const Word& w) const;

    // Recomputes h1 and checks meridian -> 1, longitude -> 0.
    // Throws Error(BadPresentation) on violation.
    void validate();
};

TwoBridgeKnot parse_two_bridge(const std::string& text);

KnotPresentation presentation_two_bridge(const TwoBridgeKnot& k);
KnotPresentation presentation_torus(const TorusKnotParams& k);

// Braid word over letters a-z (sigma_1..sigma_26) and A-Z (inverses).
// The closure must be a knot.
KnotPresentation parse_braid(const std::string& text);

// Dispatch on "p/q", "torus:p,q", "braid:<letters>".
KnotPresentation parse_knot_spec(const std::string& spec);

// Schubert word of the two-bridge knot (exposed for tests).
Word schubert_word(long p, long q);

std::string presentation_to_json(const KnotPresentation& p);
KnotPresentation presentation_from_json(const std::string& text);

} // namespace kap
