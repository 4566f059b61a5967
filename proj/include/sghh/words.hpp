#pragma once

#include <vector>

#include "sghh/sparse.hpp"

namespace sghh {

// Words in (sA-bar)^m use letters 1..nbar (basis indices >= 1), first letter most significant.
// Bar words A (x) (sA-bar)^n are indexed a0 * nbar^n + word.

inline Index ipow(Index b, int e) {
    Index r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

inline void decode_word(Index w, int m, int nbar, int* out) {
    for (int k = m - 1; k >= 0; --k) {
        out[k] = static_cast<int>(w % nbar) + 1;
        w /= nbar;
    }
}

inline std::vector<int> decode_word(Index w, int m, int nbar) {
    std::vector<int> v(m);
    if (m > 0) decode_word(w, m, nbar, v.data());
    return v;
}

inline Index encode_word(const int* letters, int m, int nbar) {
    Index w = 0;
    for (int k = 0; k < m; ++k) w = w * nbar + static_cast<Index>(letters[k] - 1);
    return w;
}

inline Index encode_word(const std::vector<int>& letters, int nbar) {
    return encode_word(letters.data(), static_cast<int>(letters.size()), nbar);
}

inline Index bar_index(int a0, Index word, int n, int nbar) { return static_cast<Index>(a0) * ipow(nbar, n) + word; }

inline Index bar_index(int a0, const std::vector<int>& letters, int nbar) {
    return bar_index(a0, encode_word(letters, nbar), static_cast<int>(letters.size()), nbar);
}

}  // namespace sghh
