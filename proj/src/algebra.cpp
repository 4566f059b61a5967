#include "sghh/algebra.hpp"

#include <sstream>

#include "sghh/words.hpp"

namespace sghh {

namespace {

using Table = std::vector<std::vector<Scalar>>;  // (i*d+j) -> coords

Table dense_table(const AlgebraPresentation& p) {
    Table t(static_cast<std::size_t>(p.dim) * p.dim, std::vector<Scalar>(p.dim, p.field.zero()));
    for (const auto& e : p.mul) {
        if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= p.dim || e.j >= p.dim || e.k >= p.dim)
            throw InvalidParameter("structure constant (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                                   std::to_string(e.k) + ") addresses an index outside [0," + std::to_string(p.dim) + ")");
        t[e.i * p.dim + e.j][e.k] += e.c;
    }
    return t;
}

std::vector<Scalar> unit_vector(const AlgebraPresentation& p) {
    if (p.unit_index >= 0) {
        if (p.unit_index >= p.dim) throw InvalidParameter("unit_index out of range");
        std::vector<Scalar> u(p.dim, p.field.zero());
        u[p.unit_index] = p.field.one();
        return u;
    }
    if (static_cast<int>(p.unit_coords.size()) != p.dim) throw InvalidParameter("unit_coords must have dim entries");
    return p.unit_coords;
}

std::vector<Scalar> mul_vec(const Table& t, int d, const std::vector<Scalar>& a, const std::vector<Scalar>& b,
                            const FieldSpec& f) {
    std::vector<Scalar> r(d, f.zero());
    for (int i = 0; i < d; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < d; ++j) {
            if (b[j].is_zero()) continue;
            Scalar c = a[i] * b[j];
            for (int k = 0; k < d; ++k) r[k] += c * t[i * d + j][k];
        }
    }
    return r;
}

std::vector<Scalar> basis_vec(int d, int i, const FieldSpec& f) {
    std::vector<Scalar> v(d, f.zero());
    v[i] = f.one();
    return v;
}

bool vec_eq(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

}  // namespace

ValidationReport validate_algebra(const AlgebraPresentation& p) {
    ValidationReport rep;
    if (p.dim < 1) {
        rep.ok = false;
        rep.failures.push_back("dim must be positive");
        return rep;
    }
    Table t;
    std::vector<Scalar> u;
    try {
        t = dense_table(p);
        u = unit_vector(p);
    } catch (const Error& e) {
        rep.ok = false;
        rep.failures.push_back(e.what());
        return rep;
    }
    const int d = p.dim;
    const FieldSpec& f = p.field;
    for (int j = 0; j < d; ++j) {
        auto ej = basis_vec(d, j, f);
        if (!vec_eq(mul_vec(t, d, u, ej, f), ej)) {
            rep.unit_violations.push_back({p.unit_index, j});
            rep.failures.push_back("unit law fails: 1*e_" + std::to_string(j) + " != e_" + std::to_string(j));
        }
        if (!vec_eq(mul_vec(t, d, ej, u, f), ej)) {
            rep.unit_violations.push_back({j, p.unit_index});
            rep.failures.push_back("unit law fails: e_" + std::to_string(j) + "*1 != e_" + std::to_string(j));
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                auto ij = t[i * d + j];
                auto jk = t[j * d + k];
                auto lhs = mul_vec(t, d, ij, basis_vec(d, k, f), f);
                auto rhs = mul_vec(t, d, basis_vec(d, i, f), jk, f);
                if (!vec_eq(lhs, rhs)) {
                    rep.assoc_violations.push_back({i, j, k});
                    rep.failures.push_back("associativity fails at (e_" + std::to_string(i) + " e_" + std::to_string(j) +
                                           ") e_" + std::to_string(k));
                }
            }
    rep.ok = rep.failures.empty();
    return rep;
}

AlgebraPtr Algebra::create(AlgebraPresentation pres) {
    if (pres.dim < 1) throw InvalidParameter("dim must be positive");
    if (pres.basis_labels.empty())
        for (int i = 0; i < pres.dim; ++i) pres.basis_labels.push_back("e" + std::to_string(i));
    if (static_cast<int>(pres.basis_labels.size()) != pres.dim) throw InvalidParameter("basis label count != dim");
    auto rep = validate_algebra(pres);
    if (!rep.ok) {
        std::ostringstream os;
        os << "invalid algebra:";
        for (const auto& s : rep.failures) os << "\n  " << s;
        throw InvalidParameter(os.str());
    }

    const int d = pres.dim;
    const FieldSpec f = pres.field;
    Table t = dense_table(pres);
    auto u = unit_vector(pres);

    if (pres.unit_index != 0) {
        // new basis: f_0 = 1, then old basis vectors minus one with nonzero unit coordinate
        int drop = pres.unit_index;
        if (drop < 0)
            for (int k = 0; k < d; ++k)
                if (!u[k].is_zero()) { drop = k; break; }
        DenseMatrix P(d, d, f.zero());  // columns = new basis in old coords
        std::vector<std::string> labels;
        for (int k = 0; k < d; ++k) P(k, 0) = u[k];
        labels.push_back(pres.unit_index >= 0 ? pres.basis_labels[drop] : "1");
        int c = 1;
        for (int k = 0; k < d; ++k) {
            if (k == drop) continue;
            P(k, c++) = f.one();
            labels.push_back(pres.basis_labels[k]);
        }
        auto Pinv = P.inverse();
        if (!Pinv) throw InvalidParameter("unit element is zero");
        auto col = [&](int j) {
            std::vector<Scalar> v(d);
            for (int k = 0; k < d; ++k) v[k] = P(k, j);
            return v;
        };
        AlgebraPresentation np;
        np.field = f;
        np.dim = d;
        np.basis_labels = labels;
        np.unit_index = 0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                auto prod = mul_vec(t, d, col(i), col(j), f);
                for (int k = 0; k < d; ++k) {
                    Scalar s = f.zero();
                    for (int l = 0; l < d; ++l) s += (*Pinv)(k, l) * prod[l];
                    if (!s.is_zero()) np.mul.push_back({i, j, k, s});
                }
            }
        if (pres.trace) {
            std::vector<Scalar> tr(d, f.zero());
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k) tr[j] += P(k, j) * (*pres.trace)[k];
            np.trace = tr;
        }
        auto rep2 = validate_algebra(np);
        if (!rep2.ok) throw InvalidParameter("re-based presentation failed validation");
        pres = std::move(np);
        t = dense_table(pres);
    }

    auto alg = std::shared_ptr<Algebra>(new Algebra());
    alg->field_ = f;
    alg->d_ = d;
    alg->labels_ = pres.basis_labels;
    alg->prod_.resize(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                if (!t[i * d + j][k].is_zero()) alg->prod_[i * d + j].emplace_back(k, t[i * d + j][k]);
    alg->pres_ = pres;
    if (pres.trace) {
        if (static_cast<int>(pres.trace->size()) != d) throw InvalidParameter("trace must have dim entries");
        alg->frob_ = frobenius_dual_bases(*alg, *pres.trace);
    }
    return alg;
}

AlgebraPtr Algebra::with_trace(std::vector<Scalar> trace) const {
    AlgebraPresentation p = pres_;
    p.trace = std::move(trace);
    return create(std::move(p));
}

SparseVec Algebra::basis(int i) const {
    SparseVec v;
    v.push(i, field_.one());
    return v;
}

SparseVec Algebra::multiply(const SparseVec& a, const SparseVec& b) const {
    SparseVec r;
    for (const auto& x : a)
        for (const auto& y : b) {
            Scalar c = x.val * y.val;
            for (const auto& [k, s] : product(static_cast<int>(x.idx), static_cast<int>(y.idx))) r.push(k, c * s);
        }
    r.normalize();
    return r;
}

const FrobeniusData& Algebra::require_frobenius() const {
    if (!frob_) throw MissingFrobeniusData("algebra has no trace functional");
    return *frob_;
}

const FrobeniusData& Algebra::require_symmetric() const {
    const auto& fd = require_frobenius();
    if (!fd.symmetric) throw NotSymmetric("trace form is not symmetric");
    return fd;
}

Scalar Algebra::trace(const SparseVec& a) const {
    const auto& fd = require_frobenius();
    Scalar s = field_.zero();
    for (const auto& e : a) s += e.val * fd.trace[e.idx];
    return s;
}

FrobeniusData frobenius_dual_bases(const Algebra& alg, std::vector<Scalar> trace) {
    const int d = alg.dim();
    const FieldSpec& f = alg.field();
    if (static_cast<int>(trace.size()) != d) throw InvalidParameter("trace must have dim entries");
    FrobeniusData fd;
    fd.trace = std::move(trace);
    fd.gram = DenseMatrix(d, d, f.zero());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (const auto& [k, c] : alg.product(i, j)) fd.gram(i, j) += c * fd.trace[k];
    auto inv = fd.gram.inverse();
    if (!inv) throw DegeneratePairing("Gram matrix of the trace form is singular");
    fd.dual = inv->transposed();
    fd.symmetric = true;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (!(fd.gram(i, j) == fd.gram(j, i))) fd.symmetric = false;
    return fd;
}

// ---- families ----

AlgebraPresentation truncated_poly_presentation(int n, const FieldSpec& f) {
    if (n < 2) throw InvalidParameter("truncated_poly needs n >= 2");
    AlgebraPresentation p;
    p.field = f;
    p.dim = n;
    for (int i = 0; i < n; ++i) p.basis_labels.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) p.mul.push_back({i, j, i + j, f.one()});
    p.unit_index = 0;
    return p;
}

AlgebraPtr truncated_poly(int n, const FieldSpec& f) { return Algebra::create(truncated_poly_presentation(n, f)); }

std::vector<Scalar> top_trace(int n, const FieldSpec& f) {
    std::vector<Scalar> t(n, f.zero());
    t[n - 1] = f.one();
    return t;
}

AlgebraPresentation radical_square_zero_presentation(int vertices, const std::vector<Arrow>& arrows, const FieldSpec& f) {
    if (vertices < 1) throw InvalidParameter("quiver needs at least one vertex");
    for (const auto& a : arrows)
        if (a.from < 0 || a.to < 0 || a.from >= vertices || a.to >= vertices)
            throw InvalidParameter("arrow endpoint outside the vertex range");
    AlgebraPresentation p;
    p.field = f;
    p.dim = vertices + static_cast<int>(arrows.size());
    for (int v = 0; v < vertices; ++v) p.basis_labels.push_back(vertices == 1 ? "1" : "e" + std::to_string(v));
    for (std::size_t a = 0; a < arrows.size(); ++a)
        p.basis_labels.push_back(arrows[a].label.empty() ? "a" + std::to_string(a) : arrows[a].label);
    for (int v = 0; v < vertices; ++v) p.mul.push_back({v, v, v, f.one()});
    // paths read left to right: e_from a = a = a e_to
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        int ai = vertices + static_cast<int>(a);
        p.mul.push_back({arrows[a].from, ai, ai, f.one()});
        p.mul.push_back({ai, arrows[a].to, ai, f.one()});
    }
    if (vertices == 1) {
        p.unit_index = 0;
    } else {
        p.unit_index = -1;
        p.unit_coords.assign(p.dim, f.zero());
        for (int v = 0; v < vertices; ++v) p.unit_coords[v] = f.one();
    }
    return p;
}

AlgebraPtr radical_square_zero(int vertices, const std::vector<Arrow>& arrows, const FieldSpec& f) {
    return Algebra::create(radical_square_zero_presentation(vertices, arrows, f));
}

// ---- A-dual ----

SparseVec ADual::coords(const SparseVec& ambient) const {
    SparseVec c;
    for (std::size_t k = 0; k < basis.size(); ++k) c.push(k, ambient.at(pivots[k]));
    c.normalize();
    return c;
}

SparseVec ADual::ambient(const SparseVec& coords) const {
    SparseVec v;
    for (const auto& e : coords) v.axpy(e.val, basis[e.idx]);
    return v;
}

SparseVec aa_act(const Algebra& alg, int a, const SparseVec& xy, int b) {
    const int d = alg.dim();
    SparseVec r;
    for (const auto& e : xy) {
        int x = static_cast<int>(e.idx / d), y = static_cast<int>(e.idx % d);
        for (const auto& [xb, c1] : alg.product(x, b))
            for (const auto& [ay, c2] : alg.product(a, y)) r.push(static_cast<Index>(xb) * d + ay, e.val * c1 * c2);
    }
    r.normalize();
    return r;
}

ADual compute_a_dual(const Algebra& alg) {
    const int d = alg.dim();
    const Index n = static_cast<Index>(d) * d;
    // one functional per (t, output coordinate): e_t X - X e_t for the outer actions
    std::vector<SparseMatrix::Triplet> trip;
    const FieldSpec& f = alg.field();
    for (int t = 0; t < d; ++t)
        for (int x = 0; x < d; ++x)
            for (int y = 0; y < d; ++y) {
                Index col = static_cast<Index>(x) * d + y;
                SparseVec diff;
                for (const auto& [k, c] : alg.product(t, x)) diff.push(static_cast<Index>(k) * d + y, c);
                for (const auto& [k, c] : alg.product(y, t)) diff.push(static_cast<Index>(x) * d + k, -c);
                diff.normalize();
                for (const auto& e : diff) trip.push_back({static_cast<Index>(t) * n + e.idx, col, e.val});
            }
    auto m = SparseMatrix::from_triplets(static_cast<Index>(d) * n, n, std::move(trip));
    ADual ad;
    ad.d = d;
    ad.basis = kernel_of(f, m);
    // each kernel vector has a single nonzero free coordinate, equal to 1
    Echelon e(f, n);
    for (const auto& r : m.row_data()) e.insert(r);
    std::vector<bool> pivot(n, false);
    for (const auto& r : e.basis_rows()) pivot[r.front().idx] = true;
    for (Index c = 0; c < n; ++c)
        if (!pivot[c]) ad.pivots.push_back(c);
    return ad;
}

SparseVec symmetric_iso(const Algebra& alg, const SparseVec& a) {
    const auto& fd = alg.require_symmetric();
    const int d = alg.dim();
    SparseVec r;
    for (int l = 0; l < d; ++l) {
        SparseVec la = alg.multiply(alg.basis(l), a);
        for (const auto& x : la)
            for (int c = 0; c < d; ++c)
                if (!fd.dual(l, c).is_zero()) r.push(x.idx * d + c, x.val * fd.dual(l, c));
    }
    r.normalize();
    return r;
}

SparseVec symmetric_iso_inverse(const Algebra& alg, const SparseVec& xy) {
    const auto& fd = alg.require_symmetric();
    const int d = alg.dim();
    SparseVec r;
    for (const auto& e : xy) r.push(e.idx / d, e.val * fd.trace[e.idx % d]);
    r.normalize();
    return r;
}

// ---- right action ----

SparseVec right_action(const Algebra& alg, int a0, const std::vector<int>& letters, int j, bool mutate) {
    const int n = static_cast<int>(letters.size());
    const int nb = alg.nbar();
    const FieldSpec& f = alg.field();
    // a[0..n+1] with a[n+1] = e_j
    std::vector<int> a(n + 2);
    a[0] = a0;
    for (int k = 0; k < n; ++k) a[k + 1] = letters[k];
    a[n + 1] = j;
    SparseVec out;
    std::vector<int> w;
    for (int i = 0; i <= n; ++i) {
        Scalar sign = f.one().signed_by(n - i);
        if (mutate && i == n) sign = -sign;
        if (i < n && j == 0) continue;  // trailing letter would be the unit
        for (const auto& [k, c] : alg.product(a[i], a[i + 1])) {
            w.clear();
            int slot0 = a0;
            if (i == 0) {
                slot0 = k;
            } else {
                if (k == 0) continue;
                for (int t = 1; t < i; ++t) w.push_back(a[t]);
                w.push_back(k);
            }
            for (int t = i + 2; t <= n + 1; ++t) w.push_back(a[t]);
            out.push(bar_index(slot0, w, nb), sign * c);
        }
    }
    out.normalize();
    return out;
}

SparseVec right_action(const Algebra& alg, int n, const SparseVec& w, const SparseVec& a) {
    const int nb = alg.nbar();
    const Index wn = ipow(nb, n);
    SparseVec out;
    for (const auto& we : w) {
        int a0 = static_cast<int>(we.idx / wn);
        auto letters = decode_word(we.idx % wn, n, nb);
        for (const auto& ae : a) out.axpy(we.val * ae.val, right_action(alg, a0, letters, static_cast<int>(ae.idx)));
    }
    return out;
}

bool right_action_compat_check(const Algebra& alg, int a0, const std::vector<int>& letters, int r, int s, int j, bool mutate) {
    const int len = r + s - 1;
    if (r < 1 || s < 1 || static_cast<int>(letters.size()) != len) throw InvalidParameter("word length must be r+s-1");
    const int nb = alg.nbar();
    const FieldSpec& f = alg.field();
    std::vector<int> a(len + 2);
    a[0] = a0;
    for (int k = 0; k < len; ++k) a[k + 1] = letters[k];
    a[len + 1] = j;  // a_{r+s}

    SparseVec lhs = right_action(alg, a0, letters, j, mutate);
    SparseVec rhs;

    // (-1)^{s-1} ((a0 (x) a_{1,r}) < a_{r+1}) (x) a_{r+2, r+s}
    {
        std::vector<int> head(a.begin() + 1, a.begin() + 1 + r);
        std::vector<int> tail(a.begin() + r + 2, a.begin() + r + s + 1);
        bool ok = true;
        for (int x : tail) ok = ok && x != 0;
        if (ok) {
            SparseVec h = right_action(alg, a0, head, a[r + 1], mutate);
            const Index hn = ipow(nb, r);
            for (const auto& e : h) {
                auto hl = decode_word(e.idx % hn, r, nb);
                hl.insert(hl.end(), tail.begin(), tail.end());
                rhs.push(bar_index(static_cast<int>(e.idx / hn), hl, nb), e.val.signed_by(s - 1));
            }
        }
    }
    for (int i = 1; i <= s - 1; ++i) {
        // a0 (x) a_{1,r+i-1} (x) s(a_{r+i} a_{r+i+1}) (x) a_{r+i+2, r+s}
        std::vector<int> tail(a.begin() + r + i + 2, a.begin() + r + s + 1);
        bool ok = true;
        for (int x : tail) ok = ok && x != 0;
        if (!ok) continue;
        for (const auto& [k, c] : alg.product(a[r + i], a[r + i + 1])) {
            if (k == 0) continue;
            std::vector<int> w(a.begin() + 1, a.begin() + r + i);
            w.push_back(k);
            w.insert(w.end(), tail.begin(), tail.end());
            rhs.push(bar_index(a0, w, nb), c.signed_by(s + i - 1));
        }
    }
    rhs.normalize();
    (void)f;
    return lhs == rhs;
}

}  // namespace sghh
