#include "sghh/cohomology.hpp"

#include <algorithm>

namespace sghh {

CohomologyBlock::CohomologyBlock(const FieldSpec& f, Index n, SparseMatrix in, SparseMatrix out)
    : f_(f), n_(n), in_(std::move(in)), out_(std::move(out)) {
    if (in_.rows() != n_ || out_.cols() != n_) throw BasisMismatch("cohomology block: differential shapes do not match");
}

const Echelon& CohomologyBlock::coboundaries() const {
    if (!b_) {
        b_ = std::make_unique<Echelon>(f_, n_);
        SparseMatrix t = in_.transposed();
        for (const auto& c : t.row_data()) b_->insert(c);
    }
    return *b_;
}

std::size_t CohomologyBlock::image_rank() const { return coboundaries().rank(); }

std::size_t CohomologyBlock::kernel_dim() const {
    if (!out_rank_) {
        Echelon e(f_, n_);
        // the smaller side is cheaper; rank is the same
        if (out_.rows() < n_) {
            for (const auto& r : out_.row_data()) e.insert(r);
            out_rank_ = e.rank();
        } else {
            Echelon e2(f_, out_.rows());
            SparseMatrix t = out_.transposed();
            for (const auto& r : t.row_data()) e2.insert(r);
            out_rank_ = e2.rank();
        }
    }
    return n_ - *out_rank_;
}

std::size_t CohomologyBlock::dim() const { return kernel_dim() - image_rank(); }

bool CohomologyBlock::is_coboundary(const SparseVec& x) const { return coboundaries().in_span(x); }

const std::vector<SparseVec>& CohomologyBlock::cocycle_basis() const {
    if (!z_) z_ = kernel_of(f_, out_);
    return *z_;
}

void CohomologyBlock::build_h() const {
    if (h_built_) return;
    tracked_ = std::make_unique<Echelon>(f_, n_, true);
    SparseMatrix t = in_.transposed();
    std::size_t tag = 0;
    for (const auto& c : t.row_data()) {
        tracked_->insert(c);
        ++tag;
    }
    for (const auto& z : cocycle_basis()) {
        if (tracked_->insert(z)) {
            h_.push_back(z);
            h_tags_.push_back(tag);
        }
        ++tag;
    }
    h_built_ = true;
}

const std::vector<SparseVec>& CohomologyBlock::h_basis() const {
    build_h();
    return h_;
}

SparseVec CohomologyBlock::coordinates(const SparseVec& x) const {
    if (!is_cocycle(x)) throw NotACocycle("element is not a cocycle");
    build_h();
    SparseVec rem;
    SparseVec comb = tracked_->express(x, &rem);
    if (!rem.empty()) throw NotAChainMapAtDegree("cocycle outside Z = B + span(H); internal inconsistency");
    SparseVec c;
    for (const auto& e : comb) {
        auto it = std::lower_bound(h_tags_.begin(), h_tags_.end(), e.idx);
        if (it != h_tags_.end() && *it == e.idx) c.push(static_cast<Index>(it - h_tags_.begin()), e.val);
    }
    c.normalize();
    return c;
}

std::size_t induced_rank(const CohomologyBlock& src, const CohomologyBlock& tgt, const SparseMatrix& M, bool verify) {
    if (M.cols() != src.ambient_dim() || M.rows() != tgt.ambient_dim()) throw BasisMismatch("induced map shape mismatch");
    const Echelon& b = tgt.coboundaries();
    Echelon all(tgt.field(), tgt.ambient_dim());
    for (const auto& r : b.basis_rows()) all.insert(r);
    for (const auto& z : src.cocycle_basis()) {
        SparseVec y = M.apply(z);
        if (verify && !tgt.is_cocycle(y)) throw NotAChainMapAtDegree("image of a cocycle is not a cocycle");
        all.insert(y);
    }
    return all.rank() - b.rank();
}

SparseMatrix induced_matrix(const CohomologyBlock& src, const CohomologyBlock& tgt, const SparseMatrix& M) {
    std::vector<SparseVec> cols;
    for (const auto& h : src.h_basis()) cols.push_back(tgt.coordinates(M.apply(h)));
    return SparseMatrix::from_columns(tgt.dim(), cols);
}

// ---- ladder ----

CohomologyBlock ladder_block(const SgLadder& l, int j, int p) {
    return CohomologyBlock(l.alg->field(), l.block_dim(j, p), l.delta_at(j - 1, p), l.delta_at(j, p));
}

CohomologyReport h_dims(const SgLadder& l) {
    CohomologyReport rep;
    rep.complex = "hh";
    rep.field = l.alg->field().name();
    rep.deg_lo = l.deg_lo;
    rep.deg_hi = l.deg_hi;
    for (int j = l.deg_lo; j <= l.deg_hi; ++j) {
        CohomologyReport::Row row;
        row.degree = j;
        row.dim = ladder_block(l, j, 0).dim();
        row.dims = {*row.dim};
        row.verdict = "n/a";
        rep.rows.push_back(row);
    }
    return rep;
}

CohomologyReport sg_dims(const SgLadder& l, int confirm_span) {
    if (confirm_span < 2) throw InvalidParameter("confirm_span must be at least 2");
    CohomologyReport rep;
    rep.complex = "hhsg";
    rep.field = l.alg->field().name();
    rep.deg_lo = l.deg_lo;
    rep.deg_hi = l.deg_hi;
    rep.p_max = l.p_max;
    rep.confirm_span = confirm_span;
    for (int j = l.deg_lo; j <= l.deg_hi; ++j) {
        CohomologyReport::Row row;
        row.degree = j;
        std::vector<CohomologyBlock> blocks;
        for (int p = 0; p <= l.p_max; ++p) {
            blocks.push_back(ladder_block(l, j, p));
            row.dims.push_back(blocks.back().dim());
        }
        std::vector<bool> bij;
        for (int p = 0; p < l.p_max; ++p) {
            std::size_t r = induced_rank(blocks[p], blocks[p + 1], l.theta.at({j, p}));
            row.theta_ranks.push_back(r);
            bij.push_back(r == row.dims[p] && r == row.dims[p + 1]);
        }
        if (l.p_max == 0) {
            row.verdict = "n/a";
        } else {
            int p0 = l.p_max;
            while (p0 > 0 && bij[p0 - 1]) --p0;
            if (l.p_max - p0 >= confirm_span) {
                row.verdict = "stabilized";
                row.stabilized_at = p0;
                row.dim = row.dims[p0];
            } else {
                row.verdict = "not stabilized";
            }
        }
        rep.rows.push_back(row);
    }
    return rep;
}

// ---- D* ----

CohomologyBlock dstar_block(const DStar& ds, int i) {
    return CohomologyBlock(ds.algebra()->field(), ds.dim(i), ds.differential(i - 1), ds.differential(i));
}

CohomologyReport th_dims(const DStar& ds, int lo, int hi) {
    CohomologyReport rep;
    rep.complex = "th";
    rep.field = ds.algebra()->field().name();
    rep.deg_lo = lo;
    rep.deg_hi = hi;
    for (int i = lo; i <= hi; ++i) {
        CohomologyReport::Row row;
        row.degree = i;
        row.dim = dstar_block(ds, i).dim();
        row.dims = {*row.dim};
        row.verdict = "n/a";
        rep.rows.push_back(row);
    }
    return rep;
}

SparseMatrix kappa_matrix(const DStar& ds, int i, int level) {
    std::vector<SparseVec> cols(ds.dim(i));
    for (Index s = 0; s < ds.dim(i); ++s) {
        DElem x{i, {}};
        x.coords.push(s, ds.algebra()->field().one());
        cols[s] = kappa(ds, x, level).flat();
    }
    const auto& alg = ds.algebra();
    Index rows = ipow(alg->nbar(), i + level) * alg->dim() * ipow(alg->nbar(), level);
    return SparseMatrix::from_columns(rows, cols);
}

SparseMatrix theta_power_matrix(const AlgebraPtr& alg, int j, int p, int k) {
    const int m = j + p, d = alg->dim();
    Index src = m < 0 ? 0 : ipow(alg->nbar(), m) * d * ipow(alg->nbar(), p);
    Index dst = m + k < 0 ? 0 : ipow(alg->nbar(), m + k) * d * ipow(alg->nbar(), p + k);
    std::vector<SparseVec> cols(src);
    for (Index s = 0; s < src; ++s) {
        SparseVec v;
        v.push(s, alg->field().one());
        Cochain f = Cochain::from_flat(alg, WordBasis::inputs(m, d), WordBasis::bar(p, d), v);
        cols[s] = theta_power(f, k).flat();
    }
    return SparseMatrix::from_columns(dst, cols);
}

void compare_iota(CohomologyReport& th, const DStar& ds, const CohomologyReport& sg) {
    th.comparison.clear();
    bool all_stable = true, all_bij = true;
    const auto& alg = ds.algebra();
    for (const auto& row : th.rows) {
        CohomologyReport::CompareRow c;
        c.degree = row.degree;
        c.th_dim = *row.dim;
        auto it = std::find_if(sg.rows.begin(), sg.rows.end(), [&](const auto& r) { return r.degree == row.degree; });
        if (it == sg.rows.end() || !it->stabilized_at) {
            all_stable = false;
            th.comparison.push_back(c);
            continue;
        }
        int P = std::max(*it->stabilized_at, iota_level(row.degree));
        if (P > sg.p_max) {
            all_stable = false;
            th.comparison.push_back(c);
            continue;
        }
        c.sg_dim = it->dims[P];
        int i = row.degree;
        CohomologyBlock src = dstar_block(ds, i);
        const int d = alg->dim();
        auto blk = [&](int j) -> Index { return j + P < 0 ? 0 : ipow(alg->nbar(), j + P) * d * ipow(alg->nbar(), P); };
        SparseMatrix in = i - 1 + P >= 0 ? delta_matrix(alg, i - 1 + P, P) : SparseMatrix(blk(i), 0);
        SparseMatrix out = delta_matrix(alg, i + P, P);
        CohomologyBlock tgt(alg->field(), blk(i), std::move(in), std::move(out));
        c.iota_rank = induced_rank(src, tgt, kappa_matrix(ds, i, P));
        c.bijective = *c.iota_rank == c.th_dim && *c.iota_rank == *c.sg_dim;
        all_bij = all_bij && c.bijective;
        th.comparison.push_back(c);
    }
    th.quasi_iso = !all_stable ? "n/a (not stabilized)" : all_bij ? "yes" : "no";
}

}  // namespace sghh
