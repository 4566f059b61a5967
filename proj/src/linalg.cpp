#include "sghh/linalg.hpp"

#include <map>
#include <queue>
#include <unordered_map>

namespace sghh {

// ---- dense ----

DenseMatrix DenseMatrix::identity(std::size_t n, const FieldSpec& f) {
    DenseMatrix m(n, n, f.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
    if (c_ != o.r_) throw BasisMismatch("dense product shape mismatch");
    DenseMatrix m(r_, o.c_, Scalar{});
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            if ((*this)(i, k).is_zero()) continue;
            for (std::size_t j = 0; j < o.c_; ++j) m(i, j) += (*this)(i, k) * o(k, j);
        }
    return m;
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix m(c_, r_, Scalar{});
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

namespace {

// reduced row echelon in place, returns pivot columns
std::vector<std::size_t> rref(DenseMatrix& a) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t s = r;
        while (s < a.rows() && a(s, c).is_zero()) ++s;
        if (s == a.rows()) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(s, j));
        Scalar inv = a(r, c).inv();
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            Scalar f = a(i, c);
            for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

std::optional<DenseMatrix> DenseMatrix::inverse() const {
    if (r_ != c_) return std::nullopt;
    if (r_ == 0) return DenseMatrix();
    FieldSpec f = a_.front().bound() ? a_.front().field() : FieldSpec();
    for (const auto& x : a_)
        if (x.bound()) { f = x.field(); break; }
    DenseMatrix aug(r_, 2 * r_, f.zero());
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = 0; j < r_; ++j) aug(i, j) = (*this)(i, j) + f.zero();
        aug(i, r_ + i) = f.one();
    }
    auto piv = rref(aug);
    if (piv.size() < r_ || piv[r_ - 1] != r_ - 1) return std::nullopt;
    DenseMatrix inv(r_, r_, f.zero());
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < r_; ++j) inv(i, j) = aug(i, r_ + j);
    return inv;
}

std::size_t DenseMatrix::rank() const {
    DenseMatrix a = *this;
    return rref(a).size();
}

std::vector<std::vector<Scalar>> DenseMatrix::nullspace() const {
    DenseMatrix a = *this;
    auto piv = rref(a);
    FieldSpec f;
    for (const auto& x : a_)
        if (x.bound()) { f = x.field(); break; }
    std::vector<bool> is_piv(c_, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::vector<Scalar>> out;
    for (std::size_t fc = 0; fc < c_; ++fc) {
        if (is_piv[fc]) continue;
        std::vector<Scalar> v(c_, f.zero());
        v[fc] = f.one();
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a(r, fc);
        out.push_back(std::move(v));
    }
    return out;
}

// ---- sparse matrix ----

SparseMatrix SparseMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> t) {
    SparseMatrix m(rows, cols);
    for (auto& x : t) {
        if (x.row >= rows || x.col >= cols) throw IndexOutOfRange("triplet outside matrix shape");
        m.data_[x.row].push(x.col, x.val);
    }
    for (auto& r : m.data_) r.normalize();
    return m;
}

SparseMatrix SparseMatrix::from_columns(Index rows, const std::vector<SparseVec>& columns) {
    SparseMatrix m(rows, columns.size());
    for (Index c = 0; c < columns.size(); ++c)
        for (const auto& e : columns[c]) m.data_[e.idx].push(c, e.val);
    for (auto& r : m.data_) r.normalize();
    return m;
}

std::size_t SparseMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t(cols_, rows_);
    for (Index r = 0; r < rows_; ++r)
        for (const auto& e : data_[r]) t.data_[e.idx].push(r, e.val);
    for (auto& r : t.data_) r.normalize();
    return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
    SparseVec y;
    for (Index r = 0; r < rows_; ++r) {
        Scalar acc;
        // merge-style dot product
        auto it = x.begin();
        for (const auto& e : data_[r]) {
            while (it != x.end() && it->idx < e.idx) ++it;
            if (it == x.end()) break;
            if (it->idx == e.idx) acc += e.val * it->val;
        }
        y.push(r, acc);
    }
    y.normalize();
    return y;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw BasisMismatch("sparse product shape mismatch");
    SparseMatrix m(rows_, o.cols_);
    for (Index r = 0; r < rows_; ++r) {
        for (const auto& e : data_[r])
            for (const auto& f : o.data_[e.idx]) m.data_[r].push(f.idx, e.val * f.val);
        m.data_[r].normalize();
    }
    return m;
}

bool SparseMatrix::is_zero() const {
    for (const auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

// ---- echelon ----

namespace {

struct FpOps {
    using T = std::uint64_t;
    std::uint64_t p;
    T zero() const { return 0; }
    bool is_zero(T a) const { return a == 0; }
    T add(T a, T b) const { T s = a + b; return (s >= p || s < a) ? s - p : s; }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
    T sub(T a, T b) const { return add(a, neg(b)); }
    T mul(T a, T b) const { return static_cast<T>(static_cast<unsigned __int128>(a) * b % p); }
    T inv(T a) const { return Scalar(FieldSpec::prime(p), a).inv().residue(); }
    T from(const Scalar& s) const { return s.bound() ? s.residue() : 0; }
    Scalar to(T a) const { return Scalar(FieldSpec::prime(p), a); }
};

struct QOps {
    using T = mpq_class;
    T zero() const { return 0; }
    bool is_zero(const T& a) const { return a == 0; }
    T add(const T& a, const T& b) const { return a + b; }
    T neg(const T& a) const { return -a; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const { return 1 / a; }
    T from(const Scalar& s) const { return s.bound() ? s.rational() : mpq_class(0); }
    Scalar to(const T& a) const { return Scalar(a); }
};

}  // namespace

struct Echelon::Impl {
    virtual ~Impl() = default;
    virtual bool insert(const SparseVec& v) = 0;
    virtual SparseVec reduce(const SparseVec& v, SparseVec* comb) const = 0;
    virtual std::size_t rank() const = 0;
    virtual std::vector<SparseVec> kernel_basis() const = 0;
    virtual std::vector<SparseVec> basis_rows() const = 0;
    Index n = 0;
    bool track = false;
};

namespace {

template <class Ops>
struct EchelonImpl final : Echelon::Impl {
    using T = typename Ops::T;
    using Row = std::vector<std::pair<Index, T>>;
    Ops ops;
    std::vector<Row> rows;
    std::vector<Row> combs;
    std::unordered_map<Index, std::size_t> pivot_row;
    std::size_t inserted = 0;

    explicit EchelonImpl(Ops o) : ops(std::move(o)) {}

    Row load(const SparseVec& v) const {
        Row r;
        r.reserve(v.size());
        for (const auto& e : v) {
            if (e.idx >= n) throw IndexOutOfRange("vector index outside echelon ambient dimension");
            r.emplace_back(e.idx, ops.from(e.val));
        }
        return r;
    }

    // residual entries (no pivot at their index) in ascending order
    Row reduce_row(const Row& v, Row* comb) const {
        std::map<Index, T> acc;
        for (const auto& [i, c] : v) acc[i] = c;
        std::map<Index, T> cmb;
        Row residual;
        while (!acc.empty()) {
            auto it = acc.begin();
            Index i = it->first;
            T c = it->second;
            acc.erase(it);
            if (ops.is_zero(c)) continue;
            auto pr = pivot_row.find(i);
            if (pr == pivot_row.end()) {
                residual.emplace_back(i, c);
                continue;
            }
            const Row& row = rows[pr->second];
            for (std::size_t k = 1; k < row.size(); ++k) {
                auto [j, rv] = row[k];
                auto [slot, fresh] = acc.try_emplace(j, ops.zero());
                slot->second = ops.sub(slot->second, ops.mul(c, rv));
            }
            if (comb) {
                for (const auto& [t, cv] : combs[pr->second]) {
                    auto [slot, fresh] = cmb.try_emplace(t, ops.zero());
                    slot->second = ops.sub(slot->second, ops.mul(c, cv));
                }
            }
        }
        if (comb) {
            comb->clear();
            for (auto& [t, c] : cmb)
                if (!ops.is_zero(c)) comb->emplace_back(t, c);
        }
        return residual;
    }

    bool insert(const SparseVec& v) override {
        std::size_t tag = inserted++;
        Row comb;
        Row res = reduce_row(load(v), track ? &comb : nullptr);
        if (res.empty()) return false;
        T inv = ops.inv(res.front().second);
        for (auto& e : res) e.second = ops.mul(e.second, inv);
        if (track) {
            // reduced = v - sum c_s rows_s, so comb holds -c; prepend the new tag
            Row full;
            full.emplace_back(tag, ops.mul(inv, ops.add(ops.zero(), T(1))));
            for (auto& [t, c] : comb) full.emplace_back(t, ops.mul(c, inv));
            std::sort(full.begin(), full.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            combs.push_back(std::move(full));
        }
        pivot_row[res.front().first] = rows.size();
        rows.push_back(std::move(res));
        return true;
    }

    SparseVec unload(const Row& r) const {
        SparseVec out;
        for (const auto& [i, c] : r) out.push(i, ops.to(c));
        out.normalize();
        return out;
    }

    SparseVec reduce(const SparseVec& v, SparseVec* comb) const override {
        Row c;
        Row res = reduce_row(load(v), comb ? &c : nullptr);
        if (comb) {
            // v = residual + sum_s coef_s rows_s, rows_s = sum_t combs_s[t] inserted_t
            // reduce_row accumulated -coef*combs, so negate
            SparseVec out;
            for (auto& [t, x] : c) out.push(t, ops.to(ops.neg(x)));
            out.normalize();
            *comb = std::move(out);
        }
        return unload(res);
    }

    std::size_t rank() const override { return rows.size(); }

    std::vector<SparseVec> basis_rows() const override {
        std::vector<SparseVec> out;
        for (const auto& r : rows) out.push_back(unload(r));
        return out;
    }

    std::vector<SparseVec> kernel_basis() const override {
        // fully reduce: process rows by descending pivot
        std::vector<std::size_t> order(rows.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rows[a].front().first > rows[b].front().first; });
        std::vector<Row> red(rows.size());
        for (auto ri : order) {
            const Row& row = rows[ri];
            std::map<Index, T> acc;
            for (std::size_t k = 1; k < row.size(); ++k) acc[row[k].first] = row[k].second;
            Row out;
            out.push_back(row.front());
            while (!acc.empty()) {
                auto it = acc.begin();
                Index i = it->first;
                T c = it->second;
                acc.erase(it);
                if (ops.is_zero(c)) continue;
                auto pr = pivot_row.find(i);
                if (pr == pivot_row.end()) {
                    out.emplace_back(i, c);
                    continue;
                }
                // red[pr] is fully reduced: entries beyond its pivot are all free
                const Row& other = red[pr->second];
                for (std::size_t k = 1; k < other.size(); ++k) {
                    auto [slot, fresh] = acc.try_emplace(other[k].first, ops.zero());
                    slot->second = ops.sub(slot->second, ops.mul(c, other[k].second));
                }
            }
            red[ri] = std::move(out);
        }
        std::map<Index, SparseVec> ker;
        std::vector<bool> pivot(n, false);
        for (const auto& r : rows) pivot[r.front().first] = true;
        Scalar one = ops.to(T(1));
        for (Index f = 0; f < n; ++f)
            if (!pivot[f]) ker[f].push(f, one);
        for (const auto& r : red)
            for (std::size_t k = 1; k < r.size(); ++k) ker[r[k].first].push(r.front().first, ops.to(ops.neg(r[k].second)));
        std::vector<SparseVec> out;
        out.reserve(ker.size());
        for (auto& [f, v] : ker) {
            v.normalize();
            out.push_back(std::move(v));
        }
        return out;
    }
};

}  // namespace

Echelon::Echelon(const FieldSpec& f, Index ambient_dim, bool track) {
    if (f.is_rational()) impl_ = std::make_unique<EchelonImpl<QOps>>(QOps{});
    else impl_ = std::make_unique<EchelonImpl<FpOps>>(FpOps{f.characteristic()});
    impl_->n = ambient_dim;
    impl_->track = track;
}

Echelon::~Echelon() = default;
Echelon::Echelon(Echelon&&) noexcept = default;
Echelon& Echelon::operator=(Echelon&&) noexcept = default;

bool Echelon::insert(const SparseVec& v) { return impl_->insert(v); }
SparseVec Echelon::reduce(const SparseVec& v) const { return impl_->reduce(v, nullptr); }
std::size_t Echelon::rank() const { return impl_->rank(); }
Index Echelon::ambient_dim() const { return impl_->n; }
std::vector<SparseVec> Echelon::kernel_basis() const { return impl_->kernel_basis(); }
std::vector<SparseVec> Echelon::basis_rows() const { return impl_->basis_rows(); }

SparseVec Echelon::express(const SparseVec& v, SparseVec* remainder) const {
    if (!impl_->track) throw InvalidParameter("express() needs a tracking echelon");
    SparseVec comb;
    SparseVec rem = impl_->reduce(v, &comb);
    if (remainder) *remainder = std::move(rem);
    return comb;
}

std::size_t rank_of(const FieldSpec& f, Index ambient_dim, const std::vector<SparseVec>& vs) {
    Echelon e(f, ambient_dim);
    for (const auto& v : vs) e.insert(v);
    return e.rank();
}

std::vector<SparseVec> kernel_of(const FieldSpec& f, const SparseMatrix& m) {
    Echelon e(f, m.cols());
    for (const auto& r : m.row_data()) e.insert(r);
    return e.kernel_basis();
}

}  // namespace sghh
