#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sghh/sparse.hpp"

namespace sghh {

// Small dense matrices (Gram blocks, change of basis).
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c, const Scalar& fill) : r_(r), c_(c), a_(r * c, fill) {}
    static DenseMatrix identity(std::size_t n, const FieldSpec& f);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    DenseMatrix operator*(const DenseMatrix& o) const;
    DenseMatrix transposed() const;
    std::optional<DenseMatrix> inverse() const;
    std::size_t rank() const;
    // basis of {v : A v = 0}
    std::vector<std::vector<Scalar>> nullspace() const;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Scalar> a_;
};

// Row-major sparse matrix; rows are SparseVecs over [0, cols).
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows) {}

    struct Triplet {
        Index row, col;
        Scalar val;
    };
    static SparseMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> t);
    // columns given as images of basis vectors
    static SparseMatrix from_columns(Index rows, const std::vector<SparseVec>& columns);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    const SparseVec& row(Index i) const { return data_[i]; }
    SparseVec& row(Index i) { return data_[i]; }
    const std::vector<SparseVec>& row_data() const { return data_; }
    std::size_t nnz() const;

    SparseMatrix transposed() const;
    SparseVec apply(const SparseVec& x) const;
    SparseMatrix operator*(const SparseMatrix& o) const;
    bool is_zero() const;
    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

private:
    Index rows_ = 0, cols_ = 0;
    std::vector<SparseVec> data_;
};

// Incremental row echelon form, pivot = lowest index of each row.
// Optional tag tracking expresses reduced vectors in the inserted ones.
class Echelon {
public:
    Echelon(const FieldSpec& f, Index ambient_dim, bool track = false);
    ~Echelon();
    Echelon(Echelon&&) noexcept;
    Echelon& operator=(Echelon&&) noexcept;

    // true iff v was independent of the current span
    bool insert(const SparseVec& v);
    SparseVec reduce(const SparseVec& v) const;
    bool in_span(const SparseVec& v) const { return reduce(v).empty(); }
    std::size_t rank() const;
    Index ambient_dim() const;

    // with tracking: v = sum_t c_t inserted_t + remainder; returns c, sets remainder
    SparseVec express(const SparseVec& v, SparseVec* remainder) const;

    // rows treated as linear functionals: basis of their common kernel
    std::vector<SparseVec> kernel_basis() const;
    std::vector<SparseVec> basis_rows() const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

std::size_t rank_of(const FieldSpec& f, Index ambient_dim, const std::vector<SparseVec>& vs);
std::vector<SparseVec> kernel_of(const FieldSpec& f, const SparseMatrix& m);

}  // namespace sghh
