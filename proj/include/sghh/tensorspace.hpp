#pragma once

#include <string>
#include <vector>

#include "sghh/algebra.hpp"
#include "sghh/sparse.hpp"
#include "sghh/words.hpp"

namespace sghh {

// ---- global switches ----

struct SignConvention {
    // true: applying a map at strand offset k carries (-1)^{|map| k}
    bool koszul = false;
    // true: sigma(m) = (-1)^{m-1} in the BV operator, else (-1)^m
    bool delta_exp_m_minus_1 = true;
};

SignConvention& sign_convention();

class ScopedSignConvention {
public:
    explicit ScopedSignConvention(SignConvention c) : saved_(sign_convention()) { sign_convention() = c; }
    ~ScopedSignConvention() { sign_convention() = saved_; }
    ScopedSignConvention(const ScopedSignConvention&) = delete;
    ScopedSignConvention& operator=(const ScopedSignConvention&) = delete;

private:
    SignConvention saved_;
};

std::size_t& resource_cap();
void check_dim(const std::string& space, Index dim);

// ---- bases ----

struct WordBasis {
    enum class Kind { Bar, Inputs };
    Kind kind = Kind::Inputs;
    int n = 0;  // number of sA-bar factors
    int d = 0;  // algebra dimension

    static WordBasis bar(int n, int d) { return {Kind::Bar, n, d}; }
    static WordBasis inputs(int m, int d) { return {Kind::Inputs, m, d}; }
    Index dim() const { return (kind == Kind::Bar ? static_cast<Index>(d) : 1) * ipow(d - 1, n); }
    // internal degree: minus the number of sA-bar factors
    int degree() const { return -n; }
    std::string str() const;
    friend bool operator==(const WordBasis&, const WordBasis&) = default;
};

// Sparse linear map between word bases; column per domain basis element.
// A Hochschild cochain f in C^{m-p}(A, Omega^p) is a map inputs(m) -> bar(p).
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(AlgebraPtr alg, WordBasis dom, WordBasis cod);
    static GradedMap identity(AlgebraPtr alg, WordBasis b);

    const AlgebraPtr& algebra() const { return alg_; }
    const WordBasis& domain() const { return dom_; }
    const WordBasis& codomain() const { return cod_; }
    int degree() const { return cod_.degree() - dom_.degree(); }
    const FieldSpec& field() const { return alg_->field(); }

    const SparseVec& col(Index w) const { return cols_[w]; }
    SparseVec& col(Index w) { return cols_[w]; }
    Index num_cols() const { return cols_.size(); }
    SparseVec apply(const SparseVec& x) const;

    bool is_zero() const;
    std::size_t nnz() const;
    // flattened coordinate u * dim(cod) + r
    SparseVec flat() const;
    static GradedMap from_flat(AlgebraPtr alg, WordBasis dom, WordBasis cod, const SparseVec& v);

    GradedMap& operator+=(const GradedMap& o);
    GradedMap& operator-=(const GradedMap& o);
    GradedMap scaled(const Scalar& c) const;
    friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
    friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
    friend bool operator==(const GradedMap& a, const GradedMap& b);

    // cochain view
    int arity() const { return dom_.n; }
    int form_degree() const { return cod_.n; }

private:
    AlgebraPtr alg_;
    WordBasis dom_, cod_;
    std::vector<SparseVec> cols_;
};

using Cochain = GradedMap;

Cochain zero_cochain(AlgebraPtr alg, int m, int p);
bool is_cochain(const GradedMap& f);
// the multiplication restricted to A-bar (x) A-bar, as a cochain (2, 0)
Cochain mu_bar(AlgebraPtr alg);
// element of A as a cochain (0, 0)
Cochain constant_cochain(AlgebraPtr alg, const SparseVec& a);
// projection bar(n) -> inputs(n+1)
GradedMap pi_map(AlgebraPtr alg, int n);

// (f (x) g)(x (x) y) = s f(x) (x) g(y), s = (-1)^{|g| deg x} when the Koszul switch is on
GradedMap koszul_tensor(const GradedMap& f, const GradedMap& g);
GradedMap compose(const GradedMap& f, const GradedMap& g);

// ---- chains ----

// Element of C_n(A, M) for M = A (index a0 * nbar^n + w) or M = A-dual in its
// ambient A (x) A form (index (x*d + y) * nbar^n + w).
struct Chain {
    enum class Coeff { A, AA };
    AlgebraPtr alg;
    Coeff coeff = Coeff::A;
    int n = 0;
    SparseVec v;

    Index dim() const;
    int degree() const { return -n - 1; }
};

Chain zero_chain(AlgebraPtr alg, Chain::Coeff c, int n);

}  // namespace sghh
