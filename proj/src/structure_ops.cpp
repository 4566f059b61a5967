#include "sghh/structure_ops.hpp"

#include <algorithm>
#include <functional>

namespace sghh {

using detail::for_each_index;

namespace {

int parity(long long x) { return static_cast<int>(((x % 2) + 2) % 2); }

Scalar sgn(const FieldSpec& f, long long e) { return parity(e) ? -f.one() : f.one(); }

void same_algebra(const Cochain& f, const Cochain& g) {
    if (f.algebra() != g.algebra()) throw BasisMismatch("operands belong to different algebras");
}

struct Bar {
    int a0;
    std::vector<int> letters;
};

Bar decode_bar(Index idx, int q, int nb) {
    const Index W = ipow(nb, q);
    return {static_cast<int>(idx / W), decode_word(idx % W, q, nb)};
}

std::vector<int> slice(const std::vector<int>& v, int from, int to) {
    return std::vector<int>(v.begin() + from, v.begin() + to);
}

std::vector<int> cat(std::initializer_list<const std::vector<int>*> parts) {
    std::vector<int> r;
    for (auto* p : parts) r.insert(r.end(), p->begin(), p->end());
    return r;
}

const SparseVec& col_of(const Cochain& f, const std::vector<int>& in) {
    return f.col(encode_word(in.data(), static_cast<int>(in.size()), f.algebra()->nbar()));
}

}  // namespace

// ---- levels ----

Cochain lift_to_level(const Cochain& f, int level) {
    if (level < f.form_degree()) throw InvalidParameter("cannot lift below the current level");
    return theta_power(f, level - f.form_degree());
}

bool sg_equal(const Cochain& a, const Cochain& b) {
    if (sg_degree(a) != sg_degree(b)) return false;
    int L = std::max(a.form_degree(), b.form_degree());
    return lift_to_level(a, L) == lift_to_level(b, L);
}

Cochain sg_sum(const std::vector<Cochain>& terms) {
    if (terms.empty()) throw InvalidParameter("sg_sum of no terms");
    int L = 0;
    for (const auto& t : terms) {
        if (sg_degree(t) != sg_degree(terms[0])) throw BasisMismatch("sg_sum of terms of different degrees");
        L = std::max(L, t.form_degree());
    }
    Cochain r = lift_to_level(terms[0], L);
    for (std::size_t i = 1; i < terms.size(); ++i) r += lift_to_level(terms[i], L);
    return r;
}

// ---- cup ----

Cochain cup(const Cochain& f, const Cochain& g, Assembly mode) {
    same_algebra(f, g);
    const auto& alg = f.algebra();
    const int m = f.arity(), p = f.form_degree(), n = g.arity(), q = g.form_degree(), nb = alg->nbar();
    Cochain r = zero_cochain(alg, m + n, p + q);
    for_each_index(r.num_cols(), mode, [&](Index w) {
        auto L = decode_word(w, m + n, nb);
        auto rest = slice(L, n, n + m);
        SparseVec acc;
        for (const auto& e : col_of(g, slice(L, 0, n))) {
            Bar c = decode_bar(e.idx, q, nb);
            auto strands = cat({&c.letters, &rest});
            auto tail = slice(strands, m, m + q);
            for (const auto& e2 : col_of(f, slice(strands, 0, m))) {
                Bar dd = decode_bar(e2.idx, p, nb);
                Index word = encode_word(cat({&dd.letters, &tail}), nb);
                for (const auto& [k, s] : alg->product(c.a0, dd.a0))
                    acc.push(bar_index(k, word, p + q, nb), e.val * e2.val * s);
            }
        }
        acc.normalize();
        r.col(w) = std::move(acc);
    });
    return r;
}

Cochain cup_op(const Cochain& f, const Cochain& g, Assembly mode) {
    Cochain r = cup(g, f, mode);
    if (parity(static_cast<long long>(sg_degree(f)) * sg_degree(g))) r = r.scaled(-f.field().one());
    return r;
}

// ---- circle ----

Cochain circle_i(const Cochain& f, const Cochain& g, int i, Assembly mode) {
    same_algebra(f, g);
    const auto& alg = f.algebra();
    const int m = f.arity(), p = f.form_degree(), n = g.arity(), q = g.form_degree(), nb = alg->nbar();
    if (i == 0 || i > m || i < -p)
        throw IndexOutOfRange("circle_i: i = " + std::to_string(i) + " outside [-" + std::to_string(p) + ", " +
                              std::to_string(m) + "]");
    if (m + n - 1 < 0) throw IndexOutOfRange("circle_i: negative arity");
    if (i < 0 && n == 0) throw InvalidParameter("circle_i: negative insertion of an arity 0 cochain; lift it first");
    Cochain r = zero_cochain(alg, m + n - 1, p + q);
    const int off = i > 0 ? i - 1 : -i - 1;
    Scalar ks = sgn(alg->field(), sign_convention().koszul ? static_cast<long long>(n - q - 1) * off : 0);
    for_each_index(r.num_cols(), mode, [&](Index w) {
        auto L = decode_word(w, m + n - 1, nb);
        SparseVec acc;
        if (i > 0) {
            auto head = slice(L, 0, i - 1), tail = slice(L, i - 1 + n, m + n - 1);
            for (const auto& e : col_of(g, slice(L, i - 1, i - 1 + n))) {
                Bar c = decode_bar(e.idx, q, nb);
                if (c.a0 == 0) continue;
                std::vector<int> c0{c.a0};
                auto strands = cat({&head, &c0, &c.letters, &tail});
                auto left = slice(strands, m, m + q);
                for (const auto& e2 : col_of(f, slice(strands, 0, m))) {
                    Bar dd = decode_bar(e2.idx, p, nb);
                    acc.push(bar_index(dd.a0, cat({&dd.letters, &left}), nb), e.val * e2.val);
                }
            }
        } else {
            const int l = -i;
            auto fresh = slice(L, m, m + n - 1);
            for (const auto& e : col_of(f, slice(L, 0, m))) {
                Bar dd = decode_bar(e.idx, p, nb);
                auto strands = cat({&dd.letters, &fresh});
                auto head = slice(strands, 0, l - 1), tail = slice(strands, l - 1 + n, p + n - 1);
                for (const auto& e2 : col_of(g, slice(strands, l - 1, l - 1 + n))) {
                    Bar c = decode_bar(e2.idx, q, nb);
                    if (c.a0 == 0) continue;
                    std::vector<int> c0{c.a0};
                    acc.push(bar_index(dd.a0, cat({&head, &c0, &c.letters, &tail}), nb), e.val * e2.val);
                }
            }
        }
        acc.normalize();
        r.col(w) = acc.scaled(ks);
    });
    return r;
}

Cochain circle(const Cochain& f, const Cochain& g, Assembly mode) {
    same_algebra(f, g);
    const int m = f.arity(), p = f.form_degree(), n = g.arity(), q = g.form_degree();
    const FieldSpec& fs = f.field();
    // negative insertions need an input on g; theta(g) represents the same class
    if (n == 0 && p > 0) return circle(f, theta(g), mode);
    if (m + n - 1 < 0) return zero_cochain(f.algebra(), 0, p + q + 1);
    Cochain r = zero_cochain(f.algebra(), m + n - 1, p + q);
    const long long s = n - q - 1;
    for (int i = 1; i <= m; ++i) r += circle_i(f, g, i, mode).scaled(sgn(fs, s * (i - 1)));
    for (int l = 1; l <= p; ++l) r -= circle_i(f, g, -l, mode).scaled(sgn(fs, s * (l - m - p - 1)));
    return r;
}

Cochain bracket(const Cochain& f, const Cochain& g, Assembly mode) {
    Cochain a = circle(f, g, mode);
    Cochain b = circle(g, f, mode);
    long long e = static_cast<long long>(sg_degree(f) - 1) * (sg_degree(g) - 1);
    const int L = std::max(a.form_degree(), b.form_degree());
    return lift_to_level(a, L) - lift_to_level(b, L).scaled(sgn(f.field(), e));
}

// ---- braces ----

namespace {

void choose_increasing(int lo, int hi, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        choose_increasing(v + 1, hi, k, cur, out);
        cur.pop_back();
    }
}

void choose_nondecreasing(int lo, int hi, int k, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        choose_nondecreasing(v, hi, k, cur, out);
        cur.pop_back();
    }
}

// A wire source: a free input of the composite, or output `slot` of vertex `v` (slot 0 is the A output).
struct Src {
    bool free;
    int a, b;
};

// Composite of cochains wired by the cactus walk.
struct Diagram {
    std::vector<const Cochain*> verts;
    std::vector<std::vector<Src>> inputs;
    std::vector<Src> outputs;  // outputs[0] is the A output of vertex 0
    std::vector<int> order;
    int num_free = 0;
};

struct Port {
    bool in;
    int v, slot;
};

Diagram walk_diagram(const Cochain& f, const std::vector<Cochain>& gs, const BraceType& t) {
    const int k = static_cast<int>(gs.size()), j = static_cast<int>(t.pos.size());
    Diagram D;
    D.verts.push_back(&f);
    for (const auto& g : gs) D.verts.push_back(&g);
    D.inputs.resize(k + 1);
    for (int v = 0; v <= k; ++v) D.inputs[v].assign(D.verts[v]->arity(), Src{true, -1, -1});

    std::vector<Port> seq;
    auto emit_g = [&](int v, bool positive) {
        const Cochain& g = *D.verts[v];
        for (int s = 0; s < g.arity(); ++s) seq.push_back({true, v, s});
        for (int o = g.form_degree(); o >= 1; --o) seq.push_back({false, v, o});
        if (!positive) seq.push_back({false, v, 0});
    };
    for (int s = 1; s <= f.arity(); ++s) {
        auto it = std::find(t.pos.begin(), t.pos.end(), s);
        if (it != t.pos.end()) {
            int r = static_cast<int>(it - t.pos.begin());
            emit_g(r + 1, true);
            D.inputs[0][s - 1] = Src{false, r + 1, 0};
        } else {
            seq.push_back({true, 0, s - 1});
        }
    }
    const int nneg = k - j;
    for (int o = f.form_degree(); o >= 1; --o) {
        seq.push_back({false, 0, o});
        for (int r = 0; r < nneg; ++r)
            if (t.neg[nneg - 1 - r] == o) emit_g(j + r + 1, false);
    }
    seq.push_back({false, 0, 0});

    // out-in cancellation
    std::vector<Port> st;
    for (const auto& x : seq) {
        if (x.in && !st.empty() && !st.back().in) {
            D.inputs[x.v][x.slot] = Src{false, st.back().v, st.back().slot};
            st.pop_back();
            continue;
        }
        st.push_back(x);
    }
    for (const auto& x : st) {
        if (x.in) D.inputs[x.v][x.slot] = Src{true, D.num_free++, 0};
        else D.outputs.push_back(Src{false, x.v, x.slot});
    }
    std::reverse(D.outputs.begin(), D.outputs.end());
    if (D.outputs.empty() || D.outputs[0].free || D.outputs[0].a != 0 || D.outputs[0].b != 0)
        throw Error("cactus walk: the A output is not the root's");

    std::vector<bool> done(k + 1, false);
    while (static_cast<int>(D.order.size()) < k + 1) {
        bool progress = false;
        for (int v = 0; v <= k; ++v) {
            if (done[v]) continue;
            bool ready = true;
            for (const auto& s : D.inputs[v])
                if (!s.free && !done[s.a]) ready = false;
            if (!ready) continue;
            done[v] = true;
            D.order.push_back(v);
            progress = true;
        }
        if (!progress) throw Error("cactus walk produced a cyclic composite");
    }
    return D;
}

Cochain evaluate(const Diagram& D, const AlgebraPtr& alg, Assembly mode) {
    const int nb = alg->nbar();
    const int nv = static_cast<int>(D.verts.size());
    std::vector<int> offset(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offset[v + 1] = offset[v] + D.verts[v]->form_degree() + 1;
    const int level = static_cast<int>(D.outputs.size()) - 1;
    Cochain r = zero_cochain(alg, D.num_free, level);
    struct State {
        Scalar c;
        std::vector<int> val;
    };
    for_each_index(r.num_cols(), mode, [&](Index w) {
        auto L = decode_word(w, D.num_free, nb);
        std::vector<State> states{{alg->field().one(), std::vector<int>(offset[nv], -1)}};
        std::vector<int> in;
        for (int v : D.order) {
            const Cochain& g = *D.verts[v];
            const int q = g.form_degree();
            std::vector<State> next;
            for (const auto& s : states) {
                in.clear();
                bool dead = false;
                for (const auto& src : D.inputs[v]) {
                    int x = src.free ? L[src.a] : s.val[offset[src.a] + src.b];
                    if (x == 0) dead = true;  // the projection kills the unit
                    in.push_back(x);
                }
                if (dead) continue;
                for (const auto& e : col_of(g, in)) {
                    Bar c = decode_bar(e.idx, q, nb);
                    State ns{s.c * e.val, s.val};
                    ns.val[offset[v]] = c.a0;
                    for (int t = 0; t < q; ++t) ns.val[offset[v] + 1 + t] = c.letters[t];
                    next.push_back(std::move(ns));
                }
            }
            states = std::move(next);
        }
        SparseVec acc;
        std::vector<int> out;
        for (const auto& s : states) {
            out.clear();
            bool dead = false;
            for (std::size_t o = 1; o < D.outputs.size(); ++o) {
                const auto& src = D.outputs[o];
                int x = src.free ? L[src.a] : s.val[offset[src.a] + src.b];
                if (x == 0) dead = true;
                out.push_back(x);
            }
            if (dead) continue;
            acc.push(bar_index(s.val[offset[0]], out, nb), s.c);
        }
        acc.normalize();
        r.col(w) = std::move(acc);
    });
    return r;
}

}  // namespace

std::vector<BraceType> brace_types(int m, int p, int k) {
    std::vector<BraceType> r;
    for (int j = 0; j <= k; ++j) {
        std::vector<std::vector<int>> P, N;
        std::vector<int> cur;
        choose_increasing(1, m, j, cur, P);
        cur.clear();
        choose_nondecreasing(1, p, k - j, cur, N);
        for (const auto& a : P)
            for (const auto& b : N) r.push_back({a, b});
    }
    return r;
}

int brace_sign_exponent(const Cochain& f, const std::vector<Cochain>& gs, const BraceType& t) {
    const int k = static_cast<int>(gs.size()), j = static_cast<int>(t.pos.size());
    const long long mp = sg_degree(f);
    std::vector<long long> np(k + 1, 0), pre(k + 1, 0);  // 1-based degrees and prefix sums
    for (int r = 1; r <= k; ++r) {
        np[r] = sg_degree(gs[r - 1]);
        pre[r] = pre[r - 1] + np[r];
    }
    long long e = k - j;
    for (int r = 1; r <= j; ++r) e += (np[r] - 1) * (t.pos[r - 1] - r + pre[r - 1]);
    for (int r = 1; r <= k - j; ++r) e += (np[r + j] - 1) * (t.neg[k - j - r] + mp + pre[r + j - 1] + r + j);
    if (sign_convention().koszul) {
        for (int r = 1; r <= j; ++r) e += (np[r] - 1) * (t.pos[r - 1] - 1);
        for (int r = 1; r <= k - j; ++r) e += (np[r + j] - 1) * (t.neg[k - j - r] - 1);
    }
    return parity(e);
}

Cochain brace_summand(const Cochain& f, const std::vector<Cochain>& gs, const BraceType& t, Assembly mode) {
    for (const auto& g : gs) same_algebra(f, g);
    return evaluate(walk_diagram(f, gs, t), f.algebra(), mode);
}

Cochain brace_classical(const Cochain& f, const std::vector<Cochain>& gs) {
    if (f.form_degree() != 0) throw InvalidParameter("brace_classical needs coefficients in A");
    for (const auto& g : gs) {
        same_algebra(f, g);
        if (g.form_degree() != 0) throw InvalidParameter("brace_classical needs coefficients in A");
    }
    const auto& alg = f.algebra();
    const int m = f.arity(), k = static_cast<int>(gs.size()), nb = alg->nbar();
    int N = m - k;
    for (const auto& g : gs) N += g.arity();
    if (N < 0) throw IndexOutOfRange("brace_classical: negative arity");
    Cochain r = zero_cochain(alg, N, 0);
    if (k > m) return r;
    std::vector<std::vector<int>> slots;
    std::vector<int> cur;
    choose_increasing(1, m, k, cur, slots);
    for (Index w = 0; w < r.num_cols(); ++w) {
        auto L = decode_word(w, N, nb);
        SparseVec acc;
        for (const auto& s : slots) {
            // blocks[j] = number of inputs before g_j
            long long eps = 0;
            std::vector<int> start(k);
            int pos = 0, slot = 1;
            for (int jj = 0; jj < k; ++jj) {
                pos += s[jj] - slot;
                start[jj] = pos;
                eps += static_cast<long long>(gs[jj].arity() - 1) * pos;
                pos += gs[jj].arity();
                slot = s[jj] + 1;
            }
            // expand products of g-values
            std::vector<std::pair<Scalar, std::vector<int>>> partial{{alg->field().one(), {}}};
            int at = 0, next_g = 0;
            for (int sl = 1; sl <= m; ++sl) {
                if (next_g < k && s[next_g] == sl) {
                    const Cochain& g = gs[next_g];
                    auto block = slice(L, start[next_g], start[next_g] + g.arity());
                    std::vector<std::pair<Scalar, std::vector<int>>> np;
                    for (const auto& e : col_of(g, block)) {
                        if (e.idx == 0) continue;
                        for (const auto& [c, v] : partial) {
                            auto v2 = v;
                            v2.push_back(static_cast<int>(e.idx));
                            np.push_back({c * e.val, std::move(v2)});
                        }
                    }
                    partial = std::move(np);
                    at = start[next_g] + g.arity();
                    ++next_g;
                } else {
                    for (auto& pv : partial) pv.second.push_back(L[at]);
                    ++at;
                }
            }
            Scalar sg = sgn(alg->field(), eps);
            for (const auto& [c, v] : partial) acc.axpy(c * sg, col_of(f, v));
        }
        r.col(w) = std::move(acc);
    }
    return r;
}

Cochain brace_sg(const Cochain& f, const std::vector<Cochain>& gs, bool allow_higher, Assembly mode) {
    const int k = static_cast<int>(gs.size());
    if (k == 0) return f;
    if (k >= 3 && !allow_higher) throw FeatureDisabled("braces with k >= 3 are behind a flag");
    for (const auto& g : gs) same_algebra(f, g);
    const int p = f.form_degree();
    int L = p;
    for (const auto& g : gs) L += g.form_degree();
    std::vector<std::pair<Diagram, int>> parts;
    for (const auto& t : brace_types(f.arity(), p, k)) {
        Diagram D = walk_diagram(f, gs, t);
        L = std::max(L, static_cast<int>(D.outputs.size()) - 1);
        parts.emplace_back(std::move(D), brace_sign_exponent(f, gs, t));
    }
    int deg = sg_degree(f) - k;
    for (const auto& g : gs) deg += sg_degree(g);
    if (L + deg < 0) throw IndexOutOfRange("brace_sg: negative arity");
    Cochain r = zero_cochain(f.algebra(), L + deg, L);
    for (const auto& [D, e] : parts) {
        Cochain s = lift_to_level(evaluate(D, f.algebra(), mode), L);
        if (e) r -= s;
        else r += s;
    }
    return r;
}

// ---- Connes B, pairing, BV ----

Chain connes_B(const Chain& c) {
    if (c.coeff != Chain::Coeff::A) throw BasisMismatch("connes_B acts on chains with coefficients in A");
    const int m = c.n, nb = c.alg->nbar();
    const Index W = ipow(nb, m);
    Chain r = zero_chain(c.alg, Chain::Coeff::A, m + 1);
    for (const auto& e : c.v) {
        int a0 = static_cast<int>(e.idx / W);
        if (a0 == 0) continue;
        auto L = decode_word(e.idx % W, m, nb);
        for (int i = 1; i <= m + 1; ++i) {
            std::vector<int> w(L.begin() + (i - 1), L.end());
            w.push_back(a0);
            w.insert(w.end(), L.begin(), L.begin() + (i - 1));
            r.v.push(bar_index(0, w, nb), parity(static_cast<long long>(m) * i) ? -e.val : e.val);
        }
    }
    r.v.normalize();
    return r;
}

Scalar pairing(const Cochain& f, const Chain& c) {
    const auto& alg = f.algebra();
    alg->require_frobenius();
    if (f.form_degree() != 0) throw InvalidParameter("pairing needs coefficients in A");
    if (c.coeff != Chain::Coeff::A) throw BasisMismatch("pairing needs chains with coefficients in A");
    Scalar s = alg->field().zero();
    if (f.arity() != c.n) return s;
    const Index W = ipow(alg->nbar(), c.n);
    for (const auto& e : c.v) {
        SparseVec a0 = alg->basis(static_cast<int>(e.idx / W));
        s = s + e.val * alg->trace(alg->multiply(a0, f.col(e.idx % W)));
    }
    return s;
}

Cochain bv_delta(const Cochain& f) {
    const auto& alg = f.algebra();
    const auto& fd = alg->require_frobenius();
    const int m = f.arity(), d = alg->dim(), nb = alg->nbar();
    if (m < 1) throw InvalidParameter("bv_delta needs arity >= 1");
    if (f.form_degree() != 0) throw InvalidParameter("bv_delta needs coefficients in A");
    // the exponent of sigma is settled by the BV identity check
    const Scalar sigma = sgn(alg->field(), sign_convention().delta_exp_m_minus_1 ? m - 1 : m);
    Cochain r = zero_cochain(alg, m - 1, 0);
    for (Index w = 0; w < r.num_cols(); ++w) {
        SparseVec acc;
        for (int l = 0; l < d; ++l) {
            Chain c = zero_chain(alg, Chain::Coeff::A, m - 1);
            c.v.push(bar_index(l, w, m - 1, nb), alg->field().one());
            Scalar t = pairing(f, connes_B(c));
            if (t.is_zero()) continue;
            for (int x = 0; x < d; ++x) acc.push(x, sigma * t * fd.dual(l, x));
        }
        acc.normalize();
        r.col(w) = std::move(acc);
    }
    return r;
}

// ---- D* ----

namespace {

// x (x) y (x) letters in the ambient A (x) A chain model
struct AmbTerm {
    int x, y;
    std::vector<int> w;
    Scalar c;
};

std::vector<AmbTerm> amb_terms(const Chain& c) {
    const int d = c.alg->dim(), nb = c.alg->nbar();
    const Index W = ipow(nb, c.n);
    std::vector<AmbTerm> r;
    for (const auto& e : c.v) {
        Index xy = e.idx / W;
        r.push_back({static_cast<int>(xy / d), static_cast<int>(xy % d), decode_word(e.idx % W, c.n, nb), e.val});
    }
    return r;
}

void push_amb(Chain& c, const SparseVec& x, const SparseVec& y, const std::vector<int>& w, const Scalar& s) {
    const int d = c.alg->dim(), nb = c.alg->nbar();
    const Index wi = encode_word(w, nb), W = ipow(nb, c.n);
    for (const auto& a : x)
        for (const auto& b : y) c.v.push((a.idx * d + b.idx) * W + wi, s * a.val * b.val);
}

SparseVec value(const Cochain& f, const std::vector<int>& in) { return col_of(f, in); }

// f(in) with one slot given as a vector of letters (coefficients on basis indices, unit dropped)
template <class Fn>
void expand_slot(const SparseVec& v, Fn&& fn) {
    for (const auto& e : v)
        if (e.idx != 0) fn(static_cast<int>(e.idx), e.val);
}

DElem chain_star_chain(const DStar& ds, const Chain& a, const Chain& b) {
    const auto& alg = ds.algebra();
    Chain r = zero_chain(alg, Chain::Coeff::AA, a.n + b.n + 1);
    for (const auto& s : amb_terms(a)) {
        if (s.y == 0) continue;
        std::vector<int> yi{s.y};
        for (const auto& t : amb_terms(b)) {
            auto w = cat({&s.w, &yi, &t.w});
            push_amb(r, alg->multiply(alg->basis(t.x), alg->basis(s.x)), alg->basis(t.y), w, s.c * t.c);
        }
    }
    r.v.normalize();
    return ds.from_dual_chain(r);
}

// f * alpha (left) or alpha * f
DElem cochain_star_chain(const DStar& ds, const Cochain& f, const Chain& a, bool f_left) {
    const auto& alg = ds.algebra();
    const int m = f.arity(), p = a.n, nb = alg->nbar();
    if (p >= m) {
        Chain r = zero_chain(alg, Chain::Coeff::AA, p - m);
        for (const auto& s : amb_terms(a)) {
            if (f_left) {
                SparseVec v = value(f, slice(s.w, 0, m));
                push_amb(r, alg->multiply(alg->basis(s.x), v), alg->basis(s.y), slice(s.w, m, p), s.c);
            } else {
                SparseVec v = value(f, slice(s.w, p - m, p));
                push_amb(r, alg->basis(s.x), alg->multiply(v, alg->basis(s.y)), slice(s.w, 0, p - m), s.c);
            }
        }
        r.v.normalize();
        return ds.from_dual_chain(r);
    }
    const int k = m - p - 1;
    Cochain r = zero_cochain(alg, k, 0);
    const auto terms = amb_terms(a);
    for (Index w = 0; w < r.num_cols(); ++w) {
        auto b = decode_word(w, k, nb);
        SparseVec acc;
        for (const auto& s : terms) {
            if (f_left) {
                if (s.x == 0) continue;
                std::vector<int> xi{s.x};
                SparseVec v = value(f, cat({&b, &xi, &s.w}));
                acc.axpy(s.c, alg->multiply(v, alg->basis(s.y)));
            } else {
                if (s.y == 0) continue;
                std::vector<int> yi{s.y};
                SparseVec v = value(f, cat({&s.w, &yi, &b}));
                acc.axpy(s.c, alg->multiply(alg->basis(s.x), v));
            }
        }
        r.col(w) = std::move(acc);
    }
    return ds.from_cochain(r);
}

Chain basis_chain(const AlgebraPtr& alg, int a0, Index w, int n) {
    Chain c = zero_chain(alg, Chain::Coeff::A, n);
    c.v.push(bar_index(a0, w, n, alg->nbar()), alg->field().one());
    return c;
}

Cochain basis_cochain(const AlgebraPtr& alg, int m, Index w, int k) {
    Cochain g = zero_cochain(alg, m, 0);
    g.col(w).push(k, alg->field().one());
    return g;
}

void require_symmetric_model(const DStar& ds) {
    ds.algebra()->require_symmetric();
    if (ds.form() != DStarForm::Symmetric) throw NotSymmetric("this operation needs the symmetric model of D*");
}

// sum_l t_l e^l as a vector
SparseVec dual_combination(const FrobeniusData& fd, const std::vector<Scalar>& t) {
    SparseVec r;
    const int d = static_cast<int>(t.size());
    for (int l = 0; l < d; ++l) {
        if (t[l].is_zero()) continue;
        for (int x = 0; x < d; ++x) r.push(x, t[l] * fd.dual(l, x));
    }
    r.normalize();
    return r;
}

}  // namespace

DElem operator_sum(const DElem& a, const DElem& b) {
    if (a.degree != b.degree) throw BasisMismatch("adding D* elements of different degrees");
    return DElem{a.degree, a.coords + b.coords};
}

DElem scaled(const DElem& a, const Scalar& c) { return DElem{a.degree, a.coords.scaled(c)}; }

DElem star(const DStar& ds, const DElem& x, const DElem& y) {
    ds.require_in_window(x.degree);
    ds.require_in_window(y.degree);
    ds.require_in_window(x.degree + y.degree);
    if (x.degree >= 0 && y.degree >= 0) return ds.from_cochain(cup(ds.to_cochain(x), ds.to_cochain(y)));
    if (x.degree < 0 && y.degree < 0) return chain_star_chain(ds, ds.to_dual_chain(x), ds.to_dual_chain(y));
    if (x.degree >= 0) return cochain_star_chain(ds, ds.to_cochain(x), ds.to_dual_chain(y), true);
    return cochain_star_chain(ds, ds.to_cochain(y), ds.to_dual_chain(x), false);
}

DElem bullet(const DStar& ds, const DElem& x, const DElem& y) {
    if (y.degree >= 0) throw InvalidParameter("bullet: the second operand must be a chain");
    const auto& alg = ds.algebra();
    const FieldSpec& fs = alg->field();
    const int nb = alg->nbar();
    Chain a = ds.to_dual_chain(y);
    const int p = a.n;
    if (x.degree < 0) {
        Chain b = ds.to_dual_chain(x);
        const int q = b.n;
        ds.require_in_window(x.degree + y.degree - 1);
        Chain r = zero_chain(alg, Chain::Coeff::AA, p + q + 2);
        for (const auto& s : amb_terms(a))
            for (const auto& t : amb_terms(b)) {
                if (t.x == 0 || t.y == 0) continue;
                std::vector<int> xs{t.x}, ys{t.y};
                for (int k = 1; k <= p + 1; ++k) {
                    auto h = slice(s.w, 0, k - 1), tl = slice(s.w, k - 1, p);
                    push_amb(r, alg->basis(s.x), alg->basis(s.y), cat({&h, &xs, &t.w, &ys, &tl}),
                             s.c * t.c * sgn(fs, static_cast<long long>(q) * k));
                }
            }
        r.v.normalize();
        return ds.from_dual_chain(r);
    }
    Cochain f = ds.to_cochain(x);
    const int m = f.arity();
    ds.require_in_window(x.degree + y.degree - 1);
    if (p >= m - 1) {
        Chain r = zero_chain(alg, Chain::Coeff::AA, p - m + 1);
        for (const auto& s : amb_terms(a))
            for (int k = 1; k <= p - m + 1; ++k) {
                auto h = slice(s.w, 0, k - 1), tl = slice(s.w, k + m - 1, p);
                expand_slot(value(f, slice(s.w, k - 1, k + m - 1)), [&](int letter, const Scalar& c) {
                    std::vector<int> mid{letter};
                    push_amb(r, alg->basis(s.x), alg->basis(s.y), cat({&h, &mid, &tl}),
                             s.c * c * sgn(fs, static_cast<long long>(m - 1) * k));
                });
            }
        r.v.normalize();
        return ds.from_dual_chain(r);
    }
    // arity m - p - 2; the displayed version miscounts the inputs
    const int rr = m - p - 2;
    Cochain r = zero_cochain(alg, rr, 0);
    const auto terms = amb_terms(a);
    for (Index w = 0; w < r.num_cols(); ++w) {
        auto b = decode_word(w, rr, nb);
        SparseVec acc;
        for (const auto& s : terms) {
            if (s.x == 0 || s.y == 0) continue;
            std::vector<int> xs{s.x}, ys{s.y};
            for (int k = 1; k <= rr + 1; ++k) {
                auto h = slice(b, 0, k - 1), tl = slice(b, k - 1, rr);
                acc.axpy(s.c * sgn(fs, static_cast<long long>(p) * k + m - 1), value(f, cat({&h, &xs, &s.w, &ys, &tl})));
            }
        }
        r.col(w) = std::move(acc);
    }
    return ds.from_cochain(r);
}

Scalar dstar_pairing(const DStar& ds, const DElem& x, const DElem& y) {
    require_symmetric_model(ds);
    if ((x.degree >= 0) == (y.degree >= 0)) return ds.algebra()->field().zero();
    const DElem& f = x.degree >= 0 ? x : y;
    const DElem& a = x.degree >= 0 ? y : x;
    return pairing(ds.to_cochain(f), ds.to_chain(a));
}

DElem tilde_delta(const DStar& ds, const DElem& x) {
    require_symmetric_model(ds);
    ds.require_in_window(x.degree - 1);
    if (x.degree > 0) return ds.from_cochain(bv_delta(ds.to_cochain(x)));
    if (x.degree == 0) return ds.zero(-1);
    Chain b = connes_B(ds.to_chain(x));
    b.v = b.v.scaled(-ds.algebra()->field().one());
    return ds.from_chain(b);
}

DElem dstar_bracket(const DStar& ds, const DElem& x, const DElem& y) {
    require_symmetric_model(ds);
    const auto& alg = ds.algebra();
    const auto& fd = alg->require_symmetric();
    const FieldSpec& fs = alg->field();
    const int d = alg->dim(), nb = alg->nbar();
    ds.require_in_window(x.degree + y.degree - 1);
    if (x.degree >= 0 && y.degree >= 0) {
        // two degree 0 cochains bracket to zero in degree -1
        if (x.degree + y.degree == 0) return ds.zero(-1);
        return ds.from_cochain(bracket(ds.to_cochain(x), ds.to_cochain(y)));
    }
    if (x.degree < 0 && y.degree < 0) {
        const long long p = -x.degree - 1, q = -y.degree - 1;
        DElem a = bullet(ds, x, y), b = bullet(ds, y, x);
        return operator_sum(a, scaled(b, -sgn(fs, p * q)));
    }
    const bool alpha_first = x.degree < 0;
    const DElem& fe = alpha_first ? y : x;
    const DElem& ae = alpha_first ? x : y;
    Cochain f = ds.to_cochain(fe);
    const int m = f.arity(), p = -ae.degree - 1;
    if (p >= m - 1) {
        // <{alpha,f}, g> = (-1)^{m-1} <alpha, [f,g]>, <{f,alpha}, g> = (-1)^{m-1} <alpha, [g,f]>
        const int r = p - m + 1;
        const Index W = ipow(nb, r);
        Chain alpha = ds.to_chain(ae);
        Chain out = zero_chain(alg, Chain::Coeff::A, r);
        const Scalar s = sgn(fs, m - 1);
        for (Index w = 0; w < W; ++w) {
            std::vector<Scalar> t(d, fs.zero());
            for (int k = 0; k < d; ++k) {
                Cochain g = basis_cochain(alg, r, w, k);
                Cochain br = alpha_first ? bracket(f, g) : bracket(g, f);
                t[k] = s * pairing(br, alpha);
            }
            for (const auto& e : dual_combination(fd, t)) out.v.push(bar_index(static_cast<int>(e.idx), w, r, nb), e.val);
        }
        out.v.normalize();
        return ds.from_chain(out);
    }
    // <{f,alpha}, beta> = (-1)^p <f, {alpha,beta}>, <{alpha,f}, beta> = (-1)^p <f, {beta,alpha}>
    const int r = m - p - 2;
    Cochain out = zero_cochain(alg, r, 0);
    const Scalar s = sgn(fs, p);
    for (Index w = 0; w < out.num_cols(); ++w) {
        std::vector<Scalar> t(d, fs.zero());
        for (int a0 = 0; a0 < d; ++a0) {
            DElem beta = ds.from_chain(basis_chain(alg, a0, w, r));
            DElem br = alpha_first ? dstar_bracket(ds, beta, ae) : dstar_bracket(ds, ae, beta);
            t[a0] = s * pairing(f, ds.to_chain(br));
        }
        out.col(w) = dual_combination(fd, t);
    }
    return ds.from_cochain(out);
}

DElem dstar_bracket_closed_form(const DStar& ds, const DElem& alpha, const DElem& fe) {
    require_symmetric_model(ds);
    if (alpha.degree >= 0 || fe.degree < 0) throw InvalidParameter("closed form expects (chain, cochain)");
    const auto& alg = ds.algebra();
    const auto& fd = alg->require_symmetric();
    const FieldSpec& fs = alg->field();
    const int d = alg->dim(), nb = alg->nbar();
    Cochain f = ds.to_cochain(fe);
    Chain a = ds.to_chain(alpha);
    const int m = f.arity(), p = a.n;
    const Index Wp = ipow(nb, p);
    auto dual_vec = [&](int l) {
        SparseVec v;
        for (int x = 0; x < d; ++x) v.push(x, fd.dual(l, x));
        v.normalize();
        return v;
    };
    // f on a word with vector-valued slots, unit components dropped
    std::function<void(const std::vector<SparseVec>&, std::size_t, std::vector<int>&, const Scalar&, SparseVec&)> eval;
    eval = [&](const std::vector<SparseVec>& slots, std::size_t at, std::vector<int>& word, const Scalar& c,
               SparseVec& acc) {
        if (at == slots.size()) {
            acc.axpy(c, value(f, word));
            return;
        }
        expand_slot(slots[at], [&](int letter, const Scalar& s) {
            word.push_back(letter);
            eval(slots, at + 1, word, c * s, acc);
            word.pop_back();
        });
    };
    auto letters_as_slots = [&](const std::vector<int>& w) {
        std::vector<SparseVec> v;
        for (int x : w) v.push_back(alg->basis(x));
        return v;
    };
    auto cat_slots = [](std::initializer_list<std::vector<SparseVec>> parts) {
        std::vector<SparseVec> r;
        for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
        return r;
    };

    if (p >= m - 1) {
        const int r = p - m + 1;
        Chain out = zero_chain(alg, Chain::Coeff::A, r);
        for (const auto& e : a.v) {
            int a0 = static_cast<int>(e.idx / Wp);
            auto w = decode_word(e.idx % Wp, p, nb);
            for (int i = 1; i <= r; ++i) {
                auto h = slice(w, 0, i - 1), tl = slice(w, i + m - 1, p);
                Scalar s = -e.val * sgn(fs, static_cast<long long>(m - 1) * (p + i));
                expand_slot(value(f, slice(w, i - 1, i + m - 1)), [&](int letter, const Scalar& c) {
                    std::vector<int> mid{letter};
                    out.v.push(bar_index(a0, cat({&h, &mid, &tl}), nb), s * c);
                });
            }
            for (int l = 1; l < d; ++l)
                for (int i = 1; i <= m; ++i) {
                    std::vector<int> word = slice(w, 0, i - 1);
                    word.push_back(l);
                    auto rest = slice(w, i + p - m, p);
                    word.insert(word.end(), rest.begin(), rest.end());
                    Scalar t = alg->trace(alg->multiply(alg->basis(a0), value(f, word)));
                    if (t.is_zero()) continue;
                    Scalar s = e.val * t * sgn(fs, static_cast<long long>(i - 1) * (p - m) + m - 1);
                    Index wi = encode_word(slice(w, i - 1, i + p - m), nb);
                    for (const auto& dv : dual_vec(l)) out.v.push(bar_index(static_cast<int>(dv.idx), wi, r, nb), s * dv.val);
                }
        }
        out.v.normalize();
        return ds.from_chain(out);
    }
    const int r = m - p - 2;
    Cochain out = zero_cochain(alg, r, 0);
    for (Index bw = 0; bw < out.num_cols(); ++bw) {
        auto b = decode_word(bw, r, nb);
        SparseVec acc;
        for (const auto& e : a.v) {
            int a0 = static_cast<int>(e.idx / Wp);
            auto w = decode_word(e.idx % Wp, p, nb);
            for (int i = 1; i <= m - p - 1; ++i)
                for (int l = 0; l < d; ++l) {
                    auto slots = cat_slots({letters_as_slots(slice(b, 0, i - 1)),
                                            {alg->multiply(alg->basis(l), alg->basis(a0))}, letters_as_slots(w),
                                            {dual_vec(l)}, letters_as_slots(slice(b, i - 1, r))});
                    std::vector<int> word;
                    eval(slots, 0, word, -e.val * sgn(fs, static_cast<long long>(p) * (m - i)), acc);
                }
            for (int l = 0; l < d; ++l)
                for (int mu = 0; mu < d; ++mu)
                    for (int i = 1; i <= p + 1; ++i) {
                        auto slots = cat_slots({letters_as_slots(slice(w, 0, i - 1)),
                                                {alg->multiply(alg->basis(l), alg->basis(mu))}, letters_as_slots(b),
                                                {dual_vec(l)}, letters_as_slots(slice(w, i - 1, p))});
                        SparseVec v;
                        std::vector<int> word;
                        eval(slots, 0, word, fs.one(), v);
                        Scalar t = alg->trace(alg->multiply(alg->basis(a0), v));
                        if (t.is_zero()) continue;
                        acc.axpy(e.val * t * sgn(fs, static_cast<long long>(r) * i + p), dual_vec(mu));
                    }
        }
        out.col(bw) = std::move(acc);
    }
    return ds.from_cochain(out);
}

}  // namespace sghh
