#pragma once

#include <vector>
#include <cstdint>

namespace kap {

// A word in a free group: signed 1-based generator indices.
// [1, -2, 1] means g1 * g2^-1 * g1.
using Word = std::vector<int>;

Word free_reduce(const Word& w);
Word word_inverse(const Word& w);
Word word_concat(const Word& a, const Word& b);
Word word_pow(const Word& w, int n);

// Sum of exponents of generator g (1-based), or of all generators if g == 0.
int exponent_sum(const Word& w, int g = 0);

// Replace every occurrence of generator g by the word `rep` (g^-1 by
// rep^-1), then freely reduce.
Word substitute(const Word& w, int g, const Word& rep);

// Drop generator g from the index space: indices above g shift down by one.
// The word must not mention g.
Word renumber_after_removal(const Word& w, int g);

// True if w freely reduces to u * g^s * u^-1 for a single letter g^s.
// On success fills conjugator u and the central letter.
bool as_conjugated_letter(const Word& w, Word& conjugator, int& letter);

} // namespace kap
