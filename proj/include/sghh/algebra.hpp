#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sghh/linalg.hpp"
#include "sghh/scalar.hpp"
#include "sghh/sparse.hpp"

namespace sghh {

struct MulEntry {
    int i, j, k;
    Scalar c;  // e_i e_j has coefficient c on e_k
};

struct AlgebraPresentation {
    FieldSpec field;
    int dim = 0;
    std::vector<std::string> basis_labels;
    std::vector<MulEntry> mul;
    // -1: 1 is not a basis vector; unit_coords must then be given
    int unit_index = 0;
    std::vector<Scalar> unit_coords;
    std::optional<std::vector<Scalar>> trace;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::array<int, 2>> unit_violations;   // (unit, j) or (j, unit)
    std::vector<std::array<int, 3>> assoc_violations;  // (i, j, k)
};

ValidationReport validate_algebra(const AlgebraPresentation& pres);

struct FrobeniusData {
    std::vector<Scalar> trace;
    DenseMatrix gram;  // tr(e_i e_j)
    DenseMatrix dual;  // row lambda: coordinates of e^lambda
    bool symmetric = false;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

FrobeniusData frobenius_dual_bases(const Algebra& alg, std::vector<Scalar> trace);

// Validated presentation with the unit at index 0.
class Algebra {
public:
    // validates (throws InvalidParameter listing failures) and re-bases the unit to index 0
    static AlgebraPtr create(AlgebraPresentation pres);

    const FieldSpec& field() const { return field_; }
    int dim() const { return d_; }
    // number of letters of s(A-bar)
    int nbar() const { return d_ - 1; }
    const std::vector<std::string>& labels() const { return labels_; }
    const AlgebraPresentation& presentation() const { return pres_; }

    // coordinates of e_i e_j
    const std::vector<std::pair<int, Scalar>>& product(int i, int j) const { return prod_[i * d_ + j]; }
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    SparseVec basis(int i) const;

    const FrobeniusData* frobenius() const { return frob_ ? &*frob_ : nullptr; }
    const FrobeniusData& require_frobenius() const;
    const FrobeniusData& require_symmetric() const;
    Scalar trace(const SparseVec& a) const;

    AlgebraPtr with_trace(std::vector<Scalar> trace) const;

private:
    FieldSpec field_;
    int d_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, Scalar>>> prod_;
    std::optional<FrobeniusData> frob_;
    AlgebraPresentation pres_;
};

// Built-in families.
struct Arrow {
    int from, to;
    std::string label;
};
AlgebraPtr truncated_poly(int n, const FieldSpec& f);
AlgebraPtr radical_square_zero(int vertices, const std::vector<Arrow>& arrows, const FieldSpec& f);
AlgebraPresentation truncated_poly_presentation(int n, const FieldSpec& f);
AlgebraPresentation radical_square_zero_presentation(int vertices, const std::vector<Arrow>& arrows, const FieldSpec& f);
// tr(x^{n-1}) = 1, else 0
std::vector<Scalar> top_trace(int n, const FieldSpec& f);

// A-dual: solution space of a x = x a inside A (x) A, ambient index x*d + y.
struct ADual {
    std::vector<SparseVec> basis;  // reduced echelon rows
    std::vector<Index> pivots;     // pivot of each basis row
    int d = 0;
    std::size_t dim() const { return basis.size(); }
    // coordinates of an element of A-dual given in ambient form
    SparseVec coords(const SparseVec& ambient) const;
    SparseVec ambient(const SparseVec& coords) const;
};
ADual compute_a_dual(const Algebra& alg);

// bimodule action on A (x) A: a.(x (x) y).b = xb (x) ay
SparseVec aa_act(const Algebra& alg, int a, const SparseVec& xy, int b);

// a -> sum_l e_l a (x) e^l, and its inverse sum x (x) y -> sum tr(y) x
SparseVec symmetric_iso(const Algebra& alg, const SparseVec& a);
SparseVec symmetric_iso_inverse(const Algebra& alg, const SparseVec& xy);

// Right action on a bar word (a0, letters) of A (x) (sA-bar)^n by the basis element e_j.
// Result indexed in bar(n).
SparseVec right_action(const Algebra& alg, int a0, const std::vector<int>& letters, int j, bool mutate = false);
SparseVec right_action(const Algebra& alg, int n, const SparseVec& w, const SparseVec& a);

bool right_action_compat_check(const Algebra& alg, int a0, const std::vector<int>& letters, int r, int s, int j, bool mutate = false);

}  // namespace sghh
