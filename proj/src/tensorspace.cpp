#include "sghh/tensorspace.hpp"

namespace sghh {

SignConvention& sign_convention() {
    static SignConvention c;
    return c;
}

std::size_t& resource_cap() {
    static std::size_t cap = 200000;
    return cap;
}

void check_dim(const std::string& space, Index dim) {
    if (dim > resource_cap()) throw ResourceLimit(space, dim, resource_cap());
}

std::string WordBasis::str() const {
    return (kind == Kind::Bar ? "bar(" : "inputs(") + std::to_string(n) + ")";
}

GradedMap::GradedMap(AlgebraPtr alg, WordBasis dom, WordBasis cod) : alg_(std::move(alg)), dom_(dom), cod_(cod) {
    check_dim(dom_.str(), dom_.dim());
    check_dim(cod_.str(), cod_.dim());
    check_dim("map " + dom_.str() + " -> " + cod_.str(), dom_.dim() * cod_.dim());
    cols_.resize(dom_.dim());
}

GradedMap GradedMap::identity(AlgebraPtr alg, WordBasis b) {
    GradedMap m(alg, b, b);
    for (Index i = 0; i < b.dim(); ++i) m.cols_[i].push(i, alg->field().one());
    return m;
}

SparseVec GradedMap::apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& e : x) {
        if (e.idx >= cols_.size()) throw IndexOutOfRange("vector outside map domain");
        y.axpy(e.val, cols_[e.idx]);
    }
    return y;
}

bool GradedMap::is_zero() const {
    for (const auto& c : cols_)
        if (!c.empty()) return false;
    return true;
}

std::size_t GradedMap::nnz() const {
    std::size_t n = 0;
    for (const auto& c : cols_) n += c.size();
    return n;
}

SparseVec GradedMap::flat() const {
    SparseVec v;
    const Index cd = cod_.dim();
    for (Index u = 0; u < cols_.size(); ++u)
        for (const auto& e : cols_[u]) v.push(u * cd + e.idx, e.val);
    v.normalize();
    return v;
}

GradedMap GradedMap::from_flat(AlgebraPtr alg, WordBasis dom, WordBasis cod, const SparseVec& v) {
    GradedMap m(std::move(alg), dom, cod);
    const Index cd = cod.dim();
    for (const auto& e : v) m.cols_[e.idx / cd].push(e.idx % cd, e.val);
    // flat input is sorted, so every column is already sorted
    return m;
}

namespace {
void same_shape(const GradedMap& a, const GradedMap& b) {
    if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain()))
        throw BasisMismatch("maps have different shapes: " + a.domain().str() + "->" + a.codomain().str() + " vs " +
                            b.domain().str() + "->" + b.codomain().str());
}
}  // namespace

GradedMap& GradedMap::operator+=(const GradedMap& o) {
    same_shape(*this, o);
    for (Index u = 0; u < cols_.size(); ++u) cols_[u].add(o.cols_[u]);
    return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) {
    same_shape(*this, o);
    for (Index u = 0; u < cols_.size(); ++u) cols_[u].sub(o.cols_[u]);
    return *this;
}

GradedMap GradedMap::scaled(const Scalar& c) const {
    GradedMap m = *this;
    for (auto& col : m.cols_) col = col.scaled(c);
    return m;
}

bool operator==(const GradedMap& a, const GradedMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.cols_ == b.cols_;
}

Cochain zero_cochain(AlgebraPtr alg, int m, int p) {
    const int d = alg->dim();
    return Cochain(std::move(alg), WordBasis::inputs(m, d), WordBasis::bar(p, d));
}

bool is_cochain(const GradedMap& f) {
    return f.domain().kind == WordBasis::Kind::Inputs && f.codomain().kind == WordBasis::Kind::Bar;
}

Cochain mu_bar(AlgebraPtr alg) {
    Cochain f = zero_cochain(alg, 2, 0);
    const int nb = alg->nbar();
    for (int a = 1; a <= nb; ++a)
        for (int b = 1; b <= nb; ++b) {
            auto& c = f.col(static_cast<Index>(a - 1) * nb + (b - 1));
            for (const auto& [k, s] : alg->product(a, b)) c.push(k, s);
            c.normalize();
        }
    return f;
}

Cochain constant_cochain(AlgebraPtr alg, const SparseVec& a) {
    Cochain f = zero_cochain(std::move(alg), 0, 0);
    f.col(0) = a;
    return f;
}

GradedMap pi_map(AlgebraPtr alg, int n) {
    const int d = alg->dim();
    GradedMap m(alg, WordBasis::bar(n, d), WordBasis::inputs(n + 1, d));
    const Index wn = ipow(d - 1, n);
    // a0 >= 1 keeps the same index shifted down by one block
    for (Index x = wn; x < m.domain().dim(); ++x) m.col(x).push(x - wn, alg->field().one());
    return m;
}

GradedMap koszul_tensor(const GradedMap& f, const GradedMap& g) {
    using K = WordBasis::Kind;
    if (f.algebra() != g.algebra() && f.algebra()->presentation().dim != g.algebra()->presentation().dim)
        throw BasisMismatch("maps over different algebras");
    auto combine = [](const WordBasis& a, const WordBasis& b) {
        if (b.kind != K::Inputs) throw BasisMismatch("right tensor factor must be a pure sA-bar word basis");
        return WordBasis{a.kind, a.n + b.n, a.d};
    };
    WordBasis dom = combine(f.domain(), g.domain());
    WordBasis cod = combine(f.codomain(), g.codomain());
    GradedMap t(f.algebra(), dom, cod);
    const bool sign = sign_convention().koszul && ((g.degree() * f.domain().n) & 1);
    const Index gd = g.domain().dim(), gc = g.codomain().dim();
    for (Index x = 0; x < f.domain().dim(); ++x)
        for (Index y = 0; y < gd; ++y) {
            auto& col = t.col(x * gd + y);
            for (const auto& a : f.col(x))
                for (const auto& b : g.col(y)) {
                    Scalar c = a.val * b.val;
                    col.push(a.idx * gc + b.idx, sign ? -c : c);
                }
            col.normalize();
        }
    return t;
}

GradedMap compose(const GradedMap& f, const GradedMap& g) {
    if (!(g.codomain() == f.domain())) throw BasisMismatch("compose: codomain " + g.codomain().str() + " != domain " + f.domain().str());
    GradedMap r(f.algebra(), g.domain(), f.codomain());
    for (Index u = 0; u < g.domain().dim(); ++u) r.col(u) = f.apply(g.col(u));
    return r;
}

Index Chain::dim() const {
    const int d = alg->dim();
    Index m = coeff == Coeff::A ? d : static_cast<Index>(d) * d;
    return m * ipow(d - 1, n);
}

Chain zero_chain(AlgebraPtr alg, Chain::Coeff c, int n) {
    Chain ch;
    ch.alg = std::move(alg);
    ch.coeff = c;
    ch.n = n;
    return ch;
}

}  // namespace sghh
