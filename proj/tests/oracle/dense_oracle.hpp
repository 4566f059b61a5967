#pragma once
// Independent brute-force implementation over F_p with dense matrices and
// tuple-keyed bases. Shares no code with the library.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using i64 = long long;
using Vec = std::vector<i64>;
using Mat = std::vector<Vec>;  // row-major
using Word = std::vector<int>;

struct Alg {
    i64 p = 101;
    int d = 0;
    std::vector<std::vector<Vec>> c;  // c[i][j] = coords of e_i e_j
    Vec trace;                        // empty if none

    i64 md(i64 x) const { x %= p; return x < 0 ? x + p : x; }
    Vec mul(const Vec& a, const Vec& b) const {
        Vec r(d, 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (a[i] && b[j])
                    for (int k = 0; k < d; ++k) r[k] = md(r[k] + a[i] * b[j] % p * c[i][j][k]);
        return r;
    }
    Vec e(int i) const { Vec v(d, 0); v[i] = 1; return v; }
};

inline Alg truncated(int n, i64 p = 101) {
    Alg A;
    A.p = p;
    A.d = n;
    A.c.assign(n, std::vector<Vec>(n, Vec(n, 0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) A.c[i][j][i + j] = 1;
    return A;
}

// one vertex, `loops` loops, radical square zero
inline Alg loops_rsz(int loops, i64 p = 101) {
    Alg A;
    A.p = p;
    A.d = loops + 1;
    A.c.assign(A.d, std::vector<Vec>(A.d, Vec(A.d, 0)));
    for (int i = 0; i < A.d; ++i) {
        A.c[0][i][i] = 1;
        A.c[i][0][i] = 1;
    }
    return A;
}

inline i64 powmod(i64 a, i64 e, i64 p) {
    i64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

inline int rank(Mat m, i64 p) {
    int rows = static_cast<int>(m.size());
    if (!rows) return 0;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int s = r;
        while (s < rows && m[s][c] % p == 0) ++s;
        if (s == rows) continue;
        std::swap(m[s], m[r]);
        i64 inv = powmod((m[r][c] % p + p) % p, p - 2, p);
        for (auto& x : m[r]) x = (x % p + p) % p * inv % p;
        for (int i = r + 1; i < rows; ++i) {
            i64 f = (m[i][c] % p + p) % p;
            if (!f) continue;
            for (int j = c; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        ++r;
    }
    return r;
}

inline Mat transpose(const Mat& m) {
    if (m.empty()) return {};
    Mat t(m[0].size(), Vec(m.size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) t[j][i] = m[i][j];
    return t;
}

// columns of the nullspace of m (m: rows x cols)
inline std::vector<Vec> nullspace(Mat m, int cols, i64 p) {
    int rows = static_cast<int>(m.size());
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int s = r;
        while (s < rows && m[s][c] % p == 0) ++s;
        if (s == rows) continue;
        std::swap(m[s], m[r]);
        i64 inv = powmod((m[r][c] % p + p) % p, p - 2, p);
        for (auto& x : m[r]) x = (x % p + p) % p * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            i64 f = (m[i][c] % p + p) % p;
            if (!f) continue;
            for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - f * m[r][j]) % p + p) % p;
        }
        piv.push_back(c);
        ++r;
    }
    std::vector<bool> isp(cols, false);
    for (int c : piv) isp[c] = true;
    std::vector<Vec> out;
    for (int f = 0; f < cols; ++f) {
        if (isp[f]) continue;
        Vec v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = (p - m[i][f]) % p;
        out.push_back(v);
    }
    return out;
}

// all words of length n over letters 1..d-1
inline std::vector<Word> words(int d, int n) {
    std::vector<Word> out;
    Word w(n, 1);
    std::function<void(int)> rec = [&](int k) {
        if (k == n) { out.push_back(w); return; }
        for (int a = 1; a < d; ++a) { w[k] = a; rec(k + 1); }
    };
    rec(0);
    return out;
}

// a bar word a0 | letters, as a single tuple with position 0 holding a0
inline std::vector<Word> bar_words(int d, int n) {
    std::vector<Word> out;
    for (int a0 = 0; a0 < d; ++a0)
        for (auto& w : words(d, n)) {
            Word t{a0};
            t.insert(t.end(), w.begin(), w.end());
            out.push_back(t);
        }
    return out;
}

using Elem = std::map<Word, i64>;  // sparse combination of tuples

inline void add(Elem& e, const Word& w, i64 c, i64 p) {
    i64& x = e[w];
    x = ((x + c) % p + p) % p;
    if (!x) e.erase(w);
}

// (a0 | a1..an) < b, literal formula
inline Elem right_act(const Alg& A, const Word& t, int b) {
    Elem out;
    const int n = static_cast<int>(t.size()) - 1;
    Word a = t;
    a.push_back(b);
    for (int i = 0; i <= n; ++i) {
        i64 sgn = ((n - i) % 2) ? -1 : 1;
        Vec prod = A.mul(A.e(a[i]), A.e(a[i + 1]));
        for (int k = 0; k < A.d; ++k) {
            if (!prod[k]) continue;
            Word w;
            if (i == 0) {
                w.push_back(k);
            } else {
                if (k == 0) continue;
                w.push_back(a[0]);
                for (int s = 1; s < i; ++s) w.push_back(a[s]);
                w.push_back(k);
            }
            bool bad = false;
            for (int s = i + 2; s <= n + 1; ++s) {
                if (a[s] == 0) bad = true;
                w.push_back(a[s]);
            }
            if (bad) continue;
            add(out, w, sgn * prod[k], A.p);
        }
    }
    return out;
}

// delta on C(m, p) -> C(m+1, p): matrix rows (target word, bar word), cols (source word, bar word)
inline Mat delta(const Alg& A, int m, int p) {
    auto src = words(A.d, m), dst = words(A.d, m + 1), bars = bar_words(A.d, p);
    std::map<Word, int> bar_ix, src_ix;
    for (std::size_t i = 0; i < bars.size(); ++i) bar_ix[bars[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < src.size(); ++i) src_ix[src[i]] = static_cast<int>(i);
    const int B = static_cast<int>(bars.size());
    Mat M(dst.size() * B, Vec(src.size() * B, 0));
    const i64 gsign = ((m - p + 1) % 2 + 2) % 2 ? -1 : 1;
    // evaluate delta(E_{u,r}) at target t for each basis cochain by brute force
    for (std::size_t ui = 0; ui < src.size(); ++ui)
        for (int r = 0; r < B; ++r) {
            auto E = [&](const Word& x) -> Elem {
                Elem e;
                if (x == src[ui]) e[bars[r]] = 1;
                return e;
            };
            for (std::size_t ti = 0; ti < dst.size(); ++ti) {
                const Word& t = dst[ti];
                Elem acc;
                // a1 . E(a2..)
                {
                    Word rest(t.begin() + 1, t.end());
                    for (auto& [w, c] : E(rest)) {
                        Vec prod = A.mul(A.e(t[0]), A.e(w[0]));
                        for (int k = 0; k < A.d; ++k)
                            if (prod[k]) {
                                Word w2 = w;
                                w2[0] = k;
                                add(acc, w2, c * prod[k], A.p);
                            }
                    }
                }
                for (int j = 1; j <= m; ++j) {
                    Vec prod = A.mul(A.e(t[j - 1]), A.e(t[j]));
                    for (int k = 1; k < A.d; ++k) {
                        if (!prod[k]) continue;
                        Word x(t.begin(), t.begin() + (j - 1));
                        x.push_back(k);
                        x.insert(x.end(), t.begin() + j + 1, t.end());
                        for (auto& [w, c] : E(x)) add(acc, w, (j % 2 ? -1 : 1) * c * prod[k], A.p);
                    }
                }
                {
                    Word head(t.begin(), t.end() - 1);
                    for (auto& [w, c] : E(head))
                        for (auto& [w2, c2] : right_act(A, w, t.back()))
                            add(acc, w2, ((m + 1) % 2 ? -1 : 1) * c * c2, A.p);
                }
                for (auto& [w, c] : acc) M[ti * B + bar_ix.at(w)][ui * B + r] = A.md(gsign * c);
            }
        }
    return M;
}

inline int dim_cochains(const Alg& A, int m, int p) {
    if (m < 0) return 0;
    int r = 1;
    for (int i = 0; i < m + p; ++i) r *= (A.d - 1);
    return r * A.d;
}

// dim H^j(A, Omega^p)
inline int hh_omega(const Alg& A, int j, int p) {
    int m = j + p;
    if (m < 0) return 0;
    int n = dim_cochains(A, m, p);
    int out = rank(delta(A, m, p), A.p);
    int in = m >= 1 ? rank(delta(A, m - 1, p), A.p) : 0;
    return n - out - in;
}

// A-dual as columns in A (x) A (index x*d + y)
inline std::vector<Vec> a_dual(const Alg& A) {
    const int d = A.d, n = d * d;
    Mat sys;
    for (int t = 0; t < d; ++t)
        for (int ox = 0; ox < d; ++ox)
            for (int oy = 0; oy < d; ++oy) {
                Vec row(n, 0);
                for (int x = 0; x < d; ++x)
                    for (int y = 0; y < d; ++y) {
                        // outer actions: e_t x (x) y - x (x) y e_t
                        i64 v = A.c[t][x][ox] * (y == oy ? 1 : 0) - (x == ox ? 1 : 0) * A.c[y][t][oy];
                        row[x * d + y] = A.md(v);
                    }
                sys.push_back(row);
            }
    return nullspace(sys, n, A.p);
}

// b on the ambient (A (x) A) (x) Abar^n, bimodule a.(x (x) y).b = xb (x) ay; rows/cols ambient
inline Mat b_aa(const Alg& A, int n) {
    const int d = A.d;
    auto src = words(d, n), dst = words(d, n - 1);
    std::map<Word, int> dst_ix;
    for (std::size_t i = 0; i < dst.size(); ++i) dst_ix[dst[i]] = static_cast<int>(i);
    const int D2 = d * d;
    Mat M(D2 * dst.size(), Vec(D2 * src.size(), 0));
    for (std::size_t wi = 0; wi < src.size(); ++wi)
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                const Word& w = src[wi];
                int col = (x * d + y) * static_cast<int>(src.size()) + static_cast<int>(wi);
                auto put = [&](int xx, int yy, const Word& rest, i64 c) {
                    int row = (xx * d + yy) * static_cast<int>(dst.size()) + dst_ix.at(rest);
                    M[row][col] = A.md(M[row][col] + c);
                };
                for (int k = 0; k < d; ++k)
                    if (A.c[x][w[0]][k]) put(k, y, Word(w.begin() + 1, w.end()), A.c[x][w[0]][k]);
                for (int j = 1; j < n; ++j)
                    for (int k = 1; k < d; ++k) {
                        i64 c = A.c[w[j - 1]][w[j]][k];
                        if (!c) continue;
                        Word r(w.begin(), w.begin() + (j - 1));
                        r.push_back(k);
                        r.insert(r.end(), w.begin() + j + 1, w.end());
                        put(x, y, r, (j % 2 ? -1 : 1) * c);
                    }
                for (int k = 0; k < d; ++k)
                    if (A.c[w[n - 1]][y][k]) put(x, k, Word(w.begin(), w.end() - 1), (n % 2 ? -1 : 1) * A.c[w[n - 1]][y][k]);
            }
    return M;
}

// basis of A-dual (x) Abar^n as ambient columns
inline Mat dual_chain_basis(const Alg& A, const std::vector<Vec>& ad, int n) {
    auto ws = words(A.d, n);
    const int D2 = A.d * A.d;
    Mat cols;
    for (const auto& v : ad)
        for (std::size_t wi = 0; wi < ws.size(); ++wi) {
            Vec c(D2 * ws.size(), 0);
            for (int xy = 0; xy < D2; ++xy) c[xy * ws.size() + wi] = v[xy];
            cols.push_back(c);
        }
    return transpose(cols);  // ambient x basis
}

inline Mat matmul(const Mat& a, const Mat& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    Mat r(a.size(), Vec(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (a[i][k])
                for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % p;
    return r;
}

// dim TH^i through the general model
inline int th(const Alg& A, int i) {
    auto ad = a_dual(A);
    const int k = static_cast<int>(ad.size());
    // rank of the differential out of D^j
    auto rank_out = [&](int j) -> int {
        if (j >= 0) return rank(delta(A, j, 0), A.p);
        if (j == -1) {
            Mat mu(A.d, Vec(k, 0));
            for (int c = 0; c < k; ++c)
                for (int x = 0; x < A.d; ++x)
                    for (int y = 0; y < A.d; ++y)
                        for (int t = 0; t < A.d; ++t) mu[t][c] = A.md(mu[t][c] + ad[c][x * A.d + y] * A.c[x][y][t]);
            return rank(mu, A.p);
        }
        int n = -j - 1;
        return rank(matmul(b_aa(A, n), dual_chain_basis(A, ad, n), A.p), A.p);
    };
    auto dim = [&](int j) -> int {
        if (j >= 0) return dim_cochains(A, j, 0);
        int r = k;
        for (int s = 0; s < -j - 1; ++s) r *= (A.d - 1);
        return r;
    };
    return dim(i) - rank_out(i) - rank_out(i - 1);
}

}  // namespace oracle
