#include "kap/word.hpp"

#include <cstdlib>
#include <stdexcept>

namespace kap {

Word free_reduce(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (int g : w) {
        if (g == 0) continue;
        if (!out.empty() && out.back() == -g)
            out.pop_back();
        else
            out.push_back(g);
    }
    return out;
}

Word word_inverse(const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

Word word_concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return free_reduce(out);
}

Word word_pow(const Word& w, int n) {
    Word base = n >= 0 ? w : word_inverse(w);
    int k = std::abs(n);
    Word out;
    for (int i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
    return free_reduce(out);
}

int exponent_sum(const Word& w, int g) {
    int s = 0;
    for (int x : w) {
        if (g == 0 || std::abs(x) == g) s += x > 0 ? 1 : -1;
    }
    return s;
}

Word substitute(const Word& w, int g, const Word& rep) {
    Word out;
    Word rep_inv = word_inverse(rep);
    for (int x : w) {
        if (x == g)
            out.insert(out.end(), rep.begin(), rep.end());
        else if (x == -g)
            out.insert(out.end(), rep_inv.begin(), rep_inv.end());
        else
            out.push_back(x);
    }
    return free_reduce(out);
}

Word renumber_after_removal(const Word& w, int g) {
    Word out;
    out.reserve(w.size());
    for (int x : w) {
        int a = std::abs(x);
        if (a == g) throw std::logic_error("renumber_after_removal: word mentions removed generator");
        if (a > g) a -= 1;
        out.push_back(x > 0 ? a : -a);
    }
    return out;
}

bool as_conjugated_letter(const Word& w, Word& conjugator, int& letter) {
    Word r = free_reduce(w);
    if (r.empty() || r.size() % 2 == 0) return false;
    size_t mid = r.size() / 2;
    for (size_t i = 0; i < mid; ++i) {
        if (r[i] != -r[r.size() - 1 - i]) return false;
    }
    conjugator.assign(r.begin(), r.begin() + mid);
    letter = r[mid];
    return true;
}

} // namespace kap
