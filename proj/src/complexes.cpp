#include "sghh/complexes.hpp"

#include "sghh/detail/parallel.hpp"

namespace sghh {

using detail::for_each_index;
using detail::max_threads;
using detail::thread_id;

namespace {

// left multiplication and right action tables on the basis of bar(p)
struct BarOps {
    std::vector<std::vector<SparseVec>> left;   // [a][r]
    std::vector<std::vector<SparseVec>> right;  // [j][r]
};

BarOps make_bar_ops(const Algebra& alg, int p) {
    const int d = alg.dim(), nb = alg.nbar();
    const Index W = ipow(nb, p), B = d * W;
    BarOps ops;
    ops.left.assign(d, std::vector<SparseVec>(B));
    ops.right.assign(d, std::vector<SparseVec>(B));
    for (Index r = 0; r < B; ++r) {
        int a0 = static_cast<int>(r / W);
        Index w = r % W;
        auto letters = decode_word(w, p, nb);
        for (int a = 0; a < d; ++a) {
            auto& l = ops.left[a][r];
            for (const auto& [k, c] : alg.product(a, a0)) l.push(static_cast<Index>(k) * W + w, c);
            l.normalize();
            ops.right[a][r] = right_action(alg, a0, letters, a);
        }
    }
    return ops;
}

enum class Op { Left, Id, Right };

struct Term {
    Index u;
    Op op;
    int arg;
    Scalar c;
};

// S(f)(a_1..a_{m+1}) = a_1 f(a_2..) + sum_j (-1)^j f(..a_j a_{j+1}..) + (-1)^{m+1} f(a_1..a_m) < a_{m+1}
void delta_terms(const Algebra& alg, int m, const int* L, std::vector<Term>& out, std::vector<int>& buf) {
    const int nb = alg.nbar();
    const FieldSpec& f = alg.field();
    out.clear();
    out.push_back({encode_word(L + 1, m, nb), Op::Left, L[0], f.one()});
    for (int j = 1; j <= m; ++j) {
        for (const auto& [k, c] : alg.product(L[j - 1], L[j])) {
            if (k == 0) continue;
            buf.clear();
            for (int t = 0; t < j - 1; ++t) buf.push_back(L[t]);
            buf.push_back(k);
            for (int t = j + 1; t <= m; ++t) buf.push_back(L[t]);
            out.push_back({encode_word(buf.data(), m, nb), Op::Id, 0, c.signed_by(j)});
        }
    }
    out.push_back({encode_word(L, m, nb), Op::Right, L[m], f.one().signed_by(m + 1)});
}

}  // namespace

Cochain cochain_delta(const Cochain& f) {
    if (!is_cochain(f)) throw BasisMismatch("cochain_delta needs a map inputs(m) -> bar(p)");
    const auto& alg = f.algebra();
    const int m = f.arity(), p = f.form_degree(), nb = alg->nbar();
    Cochain r = zero_cochain(alg, m + 1, p);
    const BarOps ops = make_bar_ops(*alg, p);
    const Scalar sign = alg->field().one().signed_by(m - p + 1);
    for_each_index(r.num_cols(), Assembly::Parallel, [&](Index w) {
        std::vector<int> L(m + 1), buf;
        std::vector<Term> terms;
        decode_word(w, m + 1, nb, L.data());
        delta_terms(*alg, m, L.data(), terms, buf);
        SparseVec acc;
        for (const auto& t : terms) {
            const SparseVec& src = f.col(t.u);
            if (t.op == Op::Id) {
                acc.axpy(t.c, src);
                continue;
            }
            const auto& table = t.op == Op::Left ? ops.left[t.arg] : ops.right[t.arg];
            for (const auto& e : src) acc.axpy(t.c * e.val, table[e.idx]);
        }
        r.col(w) = acc.scaled(sign);
    });
    return r;
}

SparseMatrix delta_matrix(const AlgebraPtr& alg, int m, int p, Assembly mode) {
    const int d = alg->dim(), nb = alg->nbar();
    const Index B = d * ipow(nb, p);
    const Index src_words = ipow(nb, m), dst_words = ipow(nb, m + 1);
    check_dim("C(" + std::to_string(m) + "," + std::to_string(p) + ")", src_words * B);
    check_dim("C(" + std::to_string(m + 1) + "," + std::to_string(p) + ")", dst_words * B);
    const BarOps ops = make_bar_ops(*alg, p);
    const Scalar sign = alg->field().one().signed_by(m - p + 1);
    std::vector<std::vector<SparseMatrix::Triplet>> local(mode == Assembly::Parallel ? max_threads() : 1);
    for_each_index(dst_words, mode, [&](Index w) {
        auto& out = local[mode == Assembly::Parallel ? thread_id() : 0];
        std::vector<int> L(m + 1), buf;
        std::vector<Term> terms;
        decode_word(w, m + 1, nb, L.data());
        delta_terms(*alg, m, L.data(), terms, buf);
        for (const auto& t : terms) {
            Scalar c = sign * t.c;
            for (Index r = 0; r < B; ++r) {
                if (t.op == Op::Id) {
                    out.push_back({w * B + r, t.u * B + r, c});
                    continue;
                }
                const auto& img = t.op == Op::Left ? ops.left[t.arg][r] : ops.right[t.arg][r];
                for (const auto& e : img) out.push_back({w * B + e.idx, t.u * B + r, c * e.val});
            }
        }
    });
    std::vector<SparseMatrix::Triplet> all;
    for (auto& l : local) all.insert(all.end(), std::make_move_iterator(l.begin()), std::make_move_iterator(l.end()));
    return SparseMatrix::from_triplets(dst_words * B, src_words * B, std::move(all));
}

Cochain theta(const Cochain& f) {
    const auto& alg = f.algebra();
    const int m = f.arity(), p = f.form_degree(), nb = alg->nbar();
    Cochain r = zero_cochain(alg, m + 1, p + 1);
    for (Index u = 0; u < f.num_cols(); ++u)
        for (int a = 0; a < nb; ++a) {
            auto& col = r.col(u * nb + a);
            for (const auto& e : f.col(u)) col.push(e.idx * nb + a, e.val);
        }
    return r;
}

Cochain theta_power(const Cochain& f, int k) {
    Cochain r = f;
    for (int i = 0; i < k; ++i) r = theta(r);
    return r;
}

SparseMatrix theta_matrix(const AlgebraPtr& alg, int m, int p) {
    const int d = alg->dim(), nb = alg->nbar();
    const Index B = d * ipow(nb, p), B1 = B * nb;
    const Index U = ipow(nb, m);
    std::vector<SparseMatrix::Triplet> t;
    t.reserve(U * B * nb);
    const Scalar one = alg->field().one();
    for (Index u = 0; u < U; ++u)
        for (Index r = 0; r < B; ++r)
            for (int a = 0; a < nb; ++a) t.push_back({(u * nb + a) * B1 + r * nb + a, u * B + r, one});
    return SparseMatrix::from_triplets(U * nb * B1, U * B, std::move(t));
}

// ---- chains ----

namespace {

// module coordinate times algebra basis element, both sides
struct ModuleOps {
    const Algebra& alg;
    Chain::Coeff coeff;
    std::size_t mdim() const { return coeff == Chain::Coeff::A ? alg.dim() : alg.dim() * alg.dim(); }
    // m . e_a
    std::vector<std::pair<Index, Scalar>> right(Index m, int a) const {
        std::vector<std::pair<Index, Scalar>> r;
        if (coeff == Chain::Coeff::A) {
            for (const auto& [k, c] : alg.product(static_cast<int>(m), a)) r.emplace_back(k, c);
        } else {
            const int d = alg.dim();
            int x = static_cast<int>(m / d), y = static_cast<int>(m % d);
            for (const auto& [k, c] : alg.product(x, a)) r.emplace_back(static_cast<Index>(k) * d + y, c);
        }
        return r;
    }
    // e_a . m
    std::vector<std::pair<Index, Scalar>> left(int a, Index m) const {
        std::vector<std::pair<Index, Scalar>> r;
        if (coeff == Chain::Coeff::A) {
            for (const auto& [k, c] : alg.product(a, static_cast<int>(m))) r.emplace_back(k, c);
        } else {
            const int d = alg.dim();
            int x = static_cast<int>(m / d), y = static_cast<int>(m % d);
            for (const auto& [k, c] : alg.product(a, y)) r.emplace_back(static_cast<Index>(x) * d + k, c);
        }
        return r;
    }
};

// b of the basis chain m (x) letters, pushed into out (index mcoord * nbar^{n-1} + word)
void b_basis(const ModuleOps& mo, Index m, const std::vector<int>& L, const Scalar& scale, SparseVec& out) {
    const int n = static_cast<int>(L.size()), nb = mo.alg.nbar();
    const Index W = ipow(nb, n - 1);
    std::vector<int> w;
    for (const auto& [k, c] : mo.right(m, L[0])) {
        w.assign(L.begin() + 1, L.end());
        out.push(k * W + encode_word(w, nb), scale * c);
    }
    for (int j = 1; j <= n - 1; ++j)
        for (const auto& [k, c] : mo.alg.product(L[j - 1], L[j])) {
            if (k == 0) continue;
            w.assign(L.begin(), L.begin() + (j - 1));
            w.push_back(k);
            w.insert(w.end(), L.begin() + j + 1, L.end());
            out.push(m * W + encode_word(w, nb), scale * c.signed_by(j));
        }
    for (const auto& [k, c] : mo.left(L[n - 1], m)) {
        w.assign(L.begin(), L.end() - 1);
        out.push(k * W + encode_word(w, nb), scale * c.signed_by(n));
    }
}

}  // namespace

Chain chain_b(const Chain& c) {
    if (c.n < 1) throw InvalidParameter("chain_b needs n >= 1");
    ModuleOps mo{*c.alg, c.coeff};
    const int nb = c.alg->nbar();
    const Index W = ipow(nb, c.n);
    Chain r = zero_chain(c.alg, c.coeff, c.n - 1);
    for (const auto& e : c.v) b_basis(mo, e.idx / W, decode_word(e.idx % W, c.n, nb), e.val, r.v);
    r.v.normalize();
    return r;
}

SparseMatrix b_matrix(const AlgebraPtr& alg, Chain::Coeff coeff, int n, Assembly mode) {
    if (n < 1) throw InvalidParameter("b_matrix needs n >= 1");
    ModuleOps mo{*alg, coeff};
    const int nb = alg->nbar();
    const Index W = ipow(nb, n), src = mo.mdim() * W, dst = mo.mdim() * ipow(nb, n - 1);
    check_dim("C_" + std::to_string(n), src);
    std::vector<SparseVec> cols(src);
    const Scalar one = alg->field().one();
    for_each_index(src, mode, [&](Index s) {
        SparseVec v;
        b_basis(mo, s / W, decode_word(s % W, n, nb), one, v);
        v.normalize();
        cols[s] = std::move(v);
    });
    return SparseMatrix::from_columns(dst, cols);
}

// ---- ladder ----

Index SgLadder::block_dim(int j, int p) const {
    int m = j + p;
    if (m < 0) return 0;
    return ipow(alg->nbar(), m) * alg->dim() * ipow(alg->nbar(), p);
}

const SparseMatrix& SgLadder::delta_at(int j, int p) const {
    auto it = delta.find({j, p});
    if (it == delta.end())
        throw DegreeOutOfWindow("no differential out of C^" + std::to_string(j) + "(A, Omega^" + std::to_string(p) + ") in window");
    return it->second;
}

SgLadder build_sg_ladder(const AlgebraPtr& alg, int deg_lo, int deg_hi, int p_max, Assembly mode) {
    if (p_max < 0 || deg_lo > deg_hi) throw InvalidParameter("empty ladder window");
    SgLadder l;
    l.alg = alg;
    l.deg_lo = deg_lo;
    l.deg_hi = deg_hi;
    l.p_max = p_max;
    for (int p = 0; p <= p_max; ++p)
        for (int j = deg_lo - 1; j <= deg_hi; ++j) {
            int m = j + p;
            Index src = l.block_dim(j, p), dst = l.block_dim(j + 1, p);
            check_dim("C^" + std::to_string(j) + "(A,Omega^" + std::to_string(p) + ")", src);
            check_dim("C^" + std::to_string(j + 1) + "(A,Omega^" + std::to_string(p) + ")", dst);
            if (m < 0) {
                l.delta[{j, p}] = SparseMatrix(dst, 0);
                continue;
            }
            l.delta[{j, p}] = delta_matrix(alg, m, p, mode);
        }
    for (int p = 0; p < p_max; ++p)
        for (int j = deg_lo; j <= deg_hi; ++j) {
            int m = j + p;
            if (m < 0) {
                l.theta[{j, p}] = SparseMatrix(l.block_dim(j, p + 1), 0);
                continue;
            }
            l.theta[{j, p}] = theta_matrix(alg, m, p);
        }
    return l;
}

// ---- D* ----

SparseVec tau(const Algebra& alg, const SparseVec& x) {
    const auto& fd = alg.require_symmetric();
    const int d = alg.dim();
    SparseVec r;
    for (int l = 0; l < d; ++l) {
        SparseVec lx = alg.multiply(alg.basis(l), x);
        SparseVec dual;
        for (int c = 0; c < d; ++c) dual.push(c, fd.dual(l, c));
        dual.normalize();
        r.add(alg.multiply(lx, dual));
    }
    return r;
}

DStar::DStar(AlgebraPtr alg, DStarForm form, int window_lo, int window_hi)
    : alg_(std::move(alg)), form_(form), lo_(window_lo), hi_(window_hi) {
    if (lo_ > hi_) throw InvalidParameter("empty D* window");
    if (form_ == DStarForm::Symmetric) alg_->require_symmetric();
    else adual_ = compute_a_dual(*alg_);
}

void DStar::require_in_window(int i) const {
    if (i < lo_ || i > hi_)
        throw DegreeOutOfWindow("degree " + std::to_string(i) + " outside D* window [" + std::to_string(lo_) + ", " +
                                std::to_string(hi_) + "]");
}

Index DStar::dim(int i) const {
    const int d = alg_->dim(), nb = alg_->nbar();
    if (i >= 0) return ipow(nb, i) * d;
    int n = -i - 1;
    Index m = form_ == DStarForm::General ? adual_.dim() : static_cast<Index>(d);
    return m * ipow(nb, n);
}

SparseMatrix DStar::differential(int i, Assembly mode) const {
    const int d = alg_->dim(), nb = alg_->nbar();
    if (i >= 0) return delta_matrix(alg_, i, 0, mode);
    if (i == -1) {
        std::vector<SparseVec> cols;
        if (form_ == DStarForm::General) {
            for (const auto& v : adual_.basis) {
                SparseVec c;
                for (const auto& e : v)
                    for (const auto& [k, s] : alg_->product(static_cast<int>(e.idx / d), static_cast<int>(e.idx % d)))
                        c.push(k, e.val * s);
                c.normalize();
                cols.push_back(std::move(c));
            }
        } else {
            for (int a = 0; a < d; ++a) cols.push_back(tau(*alg_, alg_->basis(a)));
        }
        return SparseMatrix::from_columns(d, cols);
    }
    const int n = -i - 1;
    if (form_ == DStarForm::Symmetric) return b_matrix(alg_, Chain::Coeff::A, n, mode);
    check_dim("D^" + std::to_string(i), dim(i));
    const Index W = ipow(nb, n);
    std::vector<SparseVec> cols(dim(i));
    for_each_index(dim(i), mode, [&](Index s) {
        DElem x{i, {}};
        x.coords.push(s, alg_->field().one());
        Chain c = to_chain(x);
        cols[s] = from_chain(chain_b(c)).coords;
    });
    (void)W;
    return SparseMatrix::from_columns(dim(i + 1), cols);
}

DElem DStar::apply_differential(const DElem& x) const {
    if (x.degree >= 0) return from_cochain(cochain_delta(to_cochain(x)));
    if (x.degree == -1) return DElem{0, differential(-1).apply(x.coords)};
    if (form_ == DStarForm::Symmetric) {
        Chain c = to_chain(x);
        return from_chain(chain_b(c));
    }
    return from_chain(chain_b(to_chain(x)));
}

Cochain DStar::to_cochain(const DElem& x) const {
    if (x.degree < 0) throw DegreeOutOfWindow("negative degree element is not a cochain");
    const int d = alg_->dim();
    return Cochain::from_flat(alg_, WordBasis::inputs(x.degree, d), WordBasis::bar(0, d), x.coords);
}

DElem DStar::from_cochain(const Cochain& f) const {
    if (f.form_degree() != 0) throw BasisMismatch("D* cochains have coefficients in A");
    return DElem{f.arity(), f.flat()};
}

Chain DStar::to_chain(const DElem& x) const {
    if (x.degree >= 0) throw DegreeOutOfWindow("nonnegative degree element is not a chain");
    const int n = -x.degree - 1, nb = alg_->nbar();
    const Index W = ipow(nb, n);
    if (form_ == DStarForm::Symmetric) {
        Chain c = zero_chain(alg_, Chain::Coeff::A, n);
        c.v = x.coords;
        return c;
    }
    Chain c = zero_chain(alg_, Chain::Coeff::AA, n);
    for (const auto& e : x.coords) {
        Index k = e.idx / W, w = e.idx % W;
        for (const auto& a : adual_.basis[k]) c.v.push(a.idx * W + w, e.val * a.val);
    }
    c.v.normalize();
    return c;
}

DElem DStar::from_chain(const Chain& c) const {
    DElem x{-c.n - 1, {}};
    if (form_ == DStarForm::Symmetric) {
        if (c.coeff != Chain::Coeff::A) throw BasisMismatch("symmetric model expects A coefficients");
        x.coords = c.v;
        return x;
    }
    if (c.coeff != Chain::Coeff::AA) throw BasisMismatch("general model expects A-dual coefficients");
    const Index W = ipow(alg_->nbar(), c.n);
    std::map<Index, SparseVec> by_word;
    for (const auto& e : c.v) by_word[e.idx % W].push(e.idx / W, e.val);
    for (auto& [w, amb] : by_word) {
        amb.normalize();
        SparseVec k = adual_.coords(amb);
        if (!(adual_.ambient(k) == amb)) throw BasisMismatch("chain coefficient is not in A-dual");
        for (const auto& e : k) x.coords.push(e.idx * W + w, e.val);
    }
    x.coords.normalize();
    return x;
}

Chain DStar::to_dual_chain(const DElem& x) const {
    if (form_ == DStarForm::General) return to_chain(x);
    const int n = -x.degree - 1, nb = alg_->nbar();
    const Index W = ipow(nb, n);
    Chain c = zero_chain(alg_, Chain::Coeff::AA, n);
    for (const auto& e : x.coords) {
        SparseVec amb = symmetric_iso(*alg_, alg_->basis(static_cast<int>(e.idx / W)));
        for (const auto& a : amb) c.v.push(a.idx * W + e.idx % W, e.val * a.val);
    }
    c.v.normalize();
    return c;
}

DElem DStar::from_dual_chain(const Chain& c) const {
    if (form_ == DStarForm::General) return from_chain(c);
    if (c.coeff != Chain::Coeff::AA) throw BasisMismatch("expected A-dual coefficients");
    const Index W = ipow(alg_->nbar(), c.n);
    std::map<Index, SparseVec> by_word;
    for (const auto& e : c.v) by_word[e.idx % W].push(e.idx / W, e.val);
    DElem x{-c.n - 1, {}};
    for (auto& [w, amb] : by_word) {
        amb.normalize();
        SparseVec a = symmetric_iso_inverse(*alg_, amb);
        if (!(symmetric_iso(*alg_, a) == amb)) throw BasisMismatch("chain coefficient is not in A-dual");
        for (const auto& e : a) x.coords.push(e.idx * W + w, e.val);
    }
    x.coords.normalize();
    return x;
}

int iota_level(int i) { return i < 0 ? -i : 0; }

Cochain iota(const DStar& ds, const DElem& x) {
    if (x.degree >= 0) return ds.to_cochain(x);
    const auto& alg = ds.algebra();
    const int d = alg->dim(), nb = alg->nbar(), n = -x.degree - 1;
    const Index W = ipow(nb, n);
    Chain c = ds.to_dual_chain(x);
    Cochain f = zero_cochain(alg, 0, n + 1);
    for (const auto& e : c.v) {
        Index xy = e.idx / W, w = e.idx % W;
        int xx = static_cast<int>(xy / d), yy = static_cast<int>(xy % d);
        if (yy == 0) continue;
        f.col(0).push((static_cast<Index>(xx) * W + w) * nb + (yy - 1), e.val);
    }
    f.col(0).normalize();
    return f;
}

Cochain kappa(const DStar& ds, const DElem& x, int level) {
    int base = iota_level(x.degree);
    if (level < base) throw DegreeOutOfWindow("kappa level below the embedding level");
    return theta_power(iota(ds, x), level - base);
}

}  // namespace sghh
