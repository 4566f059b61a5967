#include <gtest/gtest.h>

#include <random>

#include "sghh/complexes.hpp"
#include "sghh/tensorspace.hpp"
#include "sghh/words.hpp"
#include "test_util.hpp"

using namespace sghh;
using namespace sghh::test;

TEST(WordCodec, RoundTrip) {
    for (int nb : {1, 2, 3, 5})
        for (int m = 0; m <= 6; ++m) {
            Index n = ipow(nb, m);
            if (n > 100000) continue;
            for (Index w = 0; w < n; ++w) {
                auto letters = decode_word(w, m, nb);
                for (int l : letters) ASSERT_TRUE(l >= 1 && l <= nb);
                ASSERT_EQ(encode_word(letters, nb), w);
            }
        }
}

TEST(WordCodec, BarIndexLayout) {
    // a0 is the most significant digit
    EXPECT_EQ(bar_index(2, {1, 2}, 2), 2u * 4 + 1);
    EXPECT_EQ(WordBasis::bar(2, 3).dim(), 12u);
    EXPECT_EQ(WordBasis::inputs(3, 3).dim(), 8u);
    EXPECT_EQ(WordBasis::bar(3, 2).degree(), -3);
}

TEST(GradedMap, DegreeIsArityMinusForm) {
    auto A = cube();
    EXPECT_EQ(zero_cochain(A, 3, 1).degree(), 2);
    EXPECT_EQ(zero_cochain(A, 0, 2).degree(), -2);
}

TEST(GradedMap, FlatRoundTrip) {
    auto A = cube();
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        auto f = random_cochain(A, 2, 1, rng);
        EXPECT_EQ(GradedMap::from_flat(A, f.domain(), f.codomain(), f.flat()), f);
    }
}

TEST(Compose, IdentityAndZero) {
    auto A = cube();
    std::mt19937_64 rng(5);
    auto f = random_cochain(A, 2, 1, rng);
    EXPECT_EQ(compose(GradedMap::identity(A, f.codomain()), f), f);
    EXPECT_EQ(compose(f, GradedMap::identity(A, f.domain())), f);
    GradedMap z(A, WordBasis::inputs(1, 3), f.domain());
    EXPECT_TRUE(compose(f, z).is_zero());
    EXPECT_THROW(compose(f, f), BasisMismatch);
}

static GradedMap random_map(AlgebraPtr A, WordBasis dom, WordBasis cod, std::mt19937_64& rng) {
    GradedMap g(A, dom, cod);
    std::bernoulli_distribution keep(0.4);
    std::uniform_int_distribution<long> c(1, 100);
    for (Index u = 0; u < dom.dim(); ++u) {
        SparseVec v;
        for (Index r = 0; r < cod.dim(); ++r)
            if (keep(rng)) v.push(r, A->field().from_int(c(rng)));
        v.normalize();
        g.col(u) = v;
    }
    return g;
}

TEST(Compose, Associative) {
    auto A = cube();
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        auto h = random_map(A, WordBasis::inputs(1, 3), WordBasis::inputs(2, 3), rng);
        auto g = random_map(A, WordBasis::inputs(2, 3), WordBasis::inputs(1, 3), rng);
        auto f = random_map(A, WordBasis::inputs(1, 3), WordBasis::bar(1, 3), rng);
        EXPECT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
    }
}

TEST(KoszulTensor, EvenMapHasNoSign) {
    auto A = cube();
    std::mt19937_64 rng(2);
    auto f = random_cochain(A, 1, 1, rng);  // degree 0
    auto id = GradedMap::identity(A, WordBasis::inputs(1, 3));
    for (bool k : {false, true}) {
        ScopedSignConvention sc({k, true});
        auto t = koszul_tensor(f, id);
        EXPECT_EQ(t, theta(f));
    }
}

TEST(KoszulTensor, OddMapPicksUpSignWhenSwitchedOn) {
    auto A = cube();
    auto F = A->field();
    // id on one letter tensored with the odd map x-bar -> empty word
    GradedMap id = GradedMap::identity(A, WordBasis::inputs(1, 3));
    GradedMap g(A, WordBasis::inputs(1, 3), WordBasis::inputs(0, 3));
    g.col(0) = vec({{0, 1}}, F);
    ASSERT_EQ(g.degree(), 1);
    GradedMap plain, signed_;
    {
        ScopedSignConvention sc({false, true});
        plain = koszul_tensor(id, g);
    }
    {
        ScopedSignConvention sc({true, true});
        signed_ = koszul_tensor(id, g);
    }
    EXPECT_FALSE(plain.is_zero());
    EXPECT_EQ(signed_, plain.scaled(-F.one()));
    // (x-bar (x) x-bar) -> x-bar
    EXPECT_EQ(plain.col(0), vec({{0, 1}}, F));
}

TEST(KoszulTensor, AssociativeAndBilinear) {
    auto A = cube();
    std::mt19937_64 rng(9);
    for (bool k : {false, true}) {
        ScopedSignConvention sc({k, true});
        for (int t = 0; t < 10; ++t) {
            auto f = random_map(A, WordBasis::inputs(1, 3), WordBasis::bar(0, 3), rng);
            auto g = random_map(A, WordBasis::inputs(1, 3), WordBasis::inputs(0, 3), rng);
            auto g2 = random_map(A, WordBasis::inputs(1, 3), WordBasis::inputs(0, 3), rng);
            auto h = random_map(A, WordBasis::inputs(2, 3), WordBasis::inputs(1, 3), rng);
            EXPECT_EQ(koszul_tensor(koszul_tensor(f, g), h), koszul_tensor(f, koszul_tensor(g, h)));
            EXPECT_EQ(koszul_tensor(f, g + g2), koszul_tensor(f, g) + koszul_tensor(f, g2));
        }
    }
}

TEST(KoszulTensor, RightFactorMustBeInputs) {
    auto A = cube();
    auto f = zero_cochain(A, 1, 0);
    EXPECT_THROW(koszul_tensor(f, f), BasisMismatch);
}
