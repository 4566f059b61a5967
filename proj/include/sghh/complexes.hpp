#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "sghh/algebra.hpp"
#include "sghh/detail/parallel.hpp"
#include "sghh/linalg.hpp"
#include "sghh/tensorspace.hpp"

namespace sghh {


// ---- Hochschild cochains with coefficients in Omega^p ----

Cochain cochain_delta(const Cochain& f);
// C^{m-p}(A, Omega^p) -> C^{m-p+1}(A, Omega^p) on flattened coordinates
SparseMatrix delta_matrix(const AlgebraPtr& alg, int m, int p, Assembly mode = Assembly::Parallel);

Cochain theta(const Cochain& f);
Cochain theta_power(const Cochain& f, int k);
SparseMatrix theta_matrix(const AlgebraPtr& alg, int m, int p);

// ---- Hochschild chains ----

Chain chain_b(const Chain& c);
SparseMatrix b_matrix(const AlgebraPtr& alg, Chain::Coeff coeff, int n, Assembly mode = Assembly::Parallel);

// ---- singular ladder ----

// Block C^j(A, Omega^p) has arity j + p; keys are (j, p).
struct SgLadder {
    AlgebraPtr alg;
    int deg_lo = 0, deg_hi = 0, p_max = 0;
    std::map<std::pair<int, int>, SparseMatrix> delta;  // out of C^j(Omega^p)
    std::map<std::pair<int, int>, SparseMatrix> theta;  // C^j(Omega^p) -> C^j(Omega^{p+1})

    Index block_dim(int j, int p) const;
    const SparseMatrix& delta_at(int j, int p) const;
};

// builds delta for j in [lo-1, hi] and theta for j in [lo, hi], p in [0, p_max]
SgLadder build_sg_ladder(const AlgebraPtr& alg, int deg_lo, int deg_hi, int p_max, Assembly mode = Assembly::Parallel);

// ---- generalized Tate-Hochschild complex ----

enum class DStarForm { General, Symmetric };

// Element of D^i in the coordinates of the model:
//  i >= 0: flattened cochain (i, 0);
//  i <= -1, General: (k * nbar^n + w) with k an A-dual basis index, n = -i-1;
//  i <= -1, Symmetric: bar(n) index of C_n(A, A).
struct DElem {
    int degree = 0;
    SparseVec coords;
};

class DStar {
public:
    DStar(AlgebraPtr alg, DStarForm form, int window_lo = -32, int window_hi = 32);

    const AlgebraPtr& algebra() const { return alg_; }
    DStarForm form() const { return form_; }
    const ADual& a_dual() const { return adual_; }

    Index dim(int i) const;
    int window_lo() const { return lo_; }
    int window_hi() const { return hi_; }
    // throws DegreeOutOfWindow
    void require_in_window(int i) const;
    // D^i -> D^{i+1}
    SparseMatrix differential(int i, Assembly mode = Assembly::Parallel) const;
    DElem apply_differential(const DElem& x) const;

    Cochain to_cochain(const DElem& x) const;
    DElem from_cochain(const Cochain& f) const;
    // General: A (x) A ambient chain; Symmetric: A chain
    Chain to_chain(const DElem& x) const;
    DElem from_chain(const Chain& c) const;
    // chain over A-dual in ambient form, whichever the model (Symmetric is transported by the iso)
    Chain to_dual_chain(const DElem& x) const;
    DElem from_dual_chain(const Chain& c) const;

    DElem zero(int i) const { return DElem{i, {}}; }

private:
    AlgebraPtr alg_;
    DStarForm form_;
    ADual adual_;
    int lo_, hi_;
};

// tau(x) = sum_l e_l x e^l
SparseVec tau(const Algebra& alg, const SparseVec& x);

// Embedding into the singular complex: i >= 0 inclusion; i < 0 sum_j x_j (x) a (x) y_j-bar,
// an arity-0 cochain at level -i.
Cochain iota(const DStar& ds, const DElem& x);
// iota stabilized to level P (P >= max(0, -i))
Cochain kappa(const DStar& ds, const DElem& x, int level);
int iota_level(int i);

}  // namespace sghh
