#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "sghh/algebra.hpp"
#include "sghh/tensorspace.hpp"

namespace sghh::test {

inline FieldSpec F101() { return FieldSpec::prime(101); }
inline FieldSpec QQ() { return FieldSpec::rational(); }

inline AlgebraPtr dual_numbers(const FieldSpec& f = F101()) { return truncated_poly(2, f)->with_trace(top_trace(2, f)); }
inline AlgebraPtr cube(const FieldSpec& f = F101()) { return truncated_poly(3, f)->with_trace(top_trace(3, f)); }
inline AlgebraPtr two_loop(const FieldSpec& f = F101()) {
    return radical_square_zero(1, {{0, 0, "a"}, {0, 0, "b"}}, f);
}

inline SparseVec vec(std::initializer_list<std::pair<Index, long>> es, const FieldSpec& f) {
    SparseVec v;
    for (auto [i, c] : es) v.push(i, f.from_int(c));
    v.normalize();
    return v;
}

// entries (input word, output index, coefficient)
inline Cochain cochain(AlgebraPtr alg, int m, int p, std::initializer_list<std::tuple<Index, Index, long>> es) {
    Cochain f = zero_cochain(alg, m, p);
    for (auto [u, r, c] : es) f.col(u).axpy(alg->field().from_int(c), vec({{r, 1}}, alg->field()));
    return f;
}

inline Cochain random_cochain(AlgebraPtr alg, int m, int p, std::mt19937_64& rng, double density = 0.3) {
    Cochain f = zero_cochain(alg, m, p);
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<long> coef(1, 100);
    const Index rows = f.codomain().dim();
    for (Index u = 0; u < f.num_cols(); ++u) {
        SparseVec v;
        for (Index r = 0; r < rows; ++r)
            if (keep(rng)) v.push(r, alg->field().from_int(coef(rng)));
        v.normalize();
        f.col(u) = v;
    }
    return f;
}

}  // namespace sghh::test
