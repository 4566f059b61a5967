#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sghh/complexes.hpp"
#include "sghh/linalg.hpp"

namespace sghh {

// One degree of a cochain complex: C^{j-1} --in--> C^j --out--> C^{j+1}.
class CohomologyBlock {
public:
    CohomologyBlock(const FieldSpec& f, Index n, SparseMatrix in, SparseMatrix out);

    Index ambient_dim() const { return n_; }
    const FieldSpec& field() const { return f_; }
    std::size_t dim() const;
    std::size_t kernel_dim() const;
    std::size_t image_rank() const;

    bool is_cocycle(const SparseVec& x) const { return out_.apply(x).empty(); }
    bool is_coboundary(const SparseVec& x) const;
    // coordinates of [x] in the H-basis; throws NotACocycle
    SparseVec coordinates(const SparseVec& x) const;
    const std::vector<SparseVec>& cocycle_basis() const;
    const std::vector<SparseVec>& h_basis() const;
    const Echelon& coboundaries() const;

private:
    void build_h() const;

    FieldSpec f_;
    Index n_;
    SparseMatrix in_, out_;
    mutable std::optional<std::size_t> out_rank_;
    mutable std::unique_ptr<Echelon> b_;
    mutable std::optional<std::vector<SparseVec>> z_;
    mutable std::unique_ptr<Echelon> tracked_;
    mutable std::vector<SparseVec> h_;
    mutable std::vector<std::size_t> h_tags_;
    mutable bool h_built_ = false;
};

// rank of the map induced on cohomology by M : C_src -> C_tgt (a chain map at this degree)
std::size_t induced_rank(const CohomologyBlock& src, const CohomologyBlock& tgt, const SparseMatrix& M, bool verify = true);
// matrix of the induced map in the H-bases (columns = images of source basis classes)
SparseMatrix induced_matrix(const CohomologyBlock& src, const CohomologyBlock& tgt, const SparseMatrix& M);

struct CohomologyReport {
    std::string complex;  // "hh" | "hhsg" | "th"
    std::string field;
    int deg_lo = 0, deg_hi = 0, p_max = 0, confirm_span = 0;

    struct Row {
        int degree = 0;
        std::vector<std::size_t> dims;         // per ladder level p (single entry for hh/th)
        std::vector<std::size_t> theta_ranks;  // rank of H(theta_p), p = 0..p_max-1
        std::string verdict;                   // "stabilized" | "not stabilized" | "n/a"
        std::optional<int> stabilized_at;
        std::optional<std::size_t> dim;  // hh/th dim, or stabilized colimit dim
        friend bool operator==(const Row&, const Row&) = default;
    };
    std::vector<Row> rows;

    struct CompareRow {
        int degree = 0;
        std::size_t th_dim = 0;
        std::optional<std::size_t> sg_dim;
        std::optional<std::size_t> iota_rank;
        bool bijective = false;
        friend bool operator==(const CompareRow&, const CompareRow&) = default;
    };
    std::vector<CompareRow> comparison;
    std::string quasi_iso;  // "yes" | "no" | "n/a (not stabilized)" | ""

    friend bool operator==(const CohomologyReport&, const CohomologyReport&) = default;
};

// block of the ladder at (j, p)
CohomologyBlock ladder_block(const SgLadder& l, int j, int p);
CohomologyReport h_dims(const SgLadder& l);  // uses p = 0
CohomologyReport sg_dims(const SgLadder& l, int confirm_span);

CohomologyBlock dstar_block(const DStar& ds, int i);
CohomologyReport th_dims(const DStar& ds, int lo, int hi);

// matrix of kappa: D^i -> C^i(A, Omega^level)
SparseMatrix kappa_matrix(const DStar& ds, int i, int level);
// matrix of theta^k out of C^j(A, Omega^p)
SparseMatrix theta_power_matrix(const AlgebraPtr& alg, int j, int p, int k);

// appends the iota comparison to a th report using a stabilized hhsg report
void compare_iota(CohomologyReport& th, const DStar& ds, const CohomologyReport& sg);

}  // namespace sghh
