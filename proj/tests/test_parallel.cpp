#include <gtest/gtest.h>

#include <omp.h>

#include <random>

#include "sghh/complexes.hpp"
#include "sghh/structure_ops.hpp"
#include "sghh/verify.hpp"
#include "test_util.hpp"

using namespace sghh;
using namespace sghh::test;

// oversubscribe so the parallel paths really interleave, even on one core
class Parallel : public ::testing::Test {
protected:
    void SetUp() override {
        saved = omp_get_max_threads();
        omp_set_num_threads(4);
    }
    void TearDown() override { omp_set_num_threads(saved); }
    int saved = 1;
};

TEST_F(Parallel, Differentials) {
    for (auto A : {cube(), two_loop(), cube(QQ())}) {
        for (int p = 0; p <= 2; ++p)
            for (int m = 0; m <= 3; ++m)
                ASSERT_EQ(delta_matrix(A, m, p, Assembly::Serial), delta_matrix(A, m, p, Assembly::Parallel));
        for (auto co : {Chain::Coeff::A, Chain::Coeff::AA})
            for (int n = 1; n <= 3; ++n) ASSERT_EQ(b_matrix(A, co, n, Assembly::Serial), b_matrix(A, co, n, Assembly::Parallel));
        DStar ds(A, DStarForm::General, -4, 4);
        for (int i = -4; i < 4; ++i) ASSERT_EQ(ds.differential(i, Assembly::Serial), ds.differential(i, Assembly::Parallel));
    }
}

TEST_F(Parallel, Operations) {
    std::mt19937_64 r(31);
    for (auto A : {cube(), two_loop()})
        for (int t = 0; t < 10; ++t) {
            auto f = random_cochain(A, 1 + t % 3, t % 2, r), g = random_cochain(A, t % 3, (t / 2) % 2, r),
                 h = random_cochain(A, 1, 0, r);
            ASSERT_EQ(cup(f, g, Assembly::Serial), cup(f, g, Assembly::Parallel));
            ASSERT_EQ(circle(f, g, Assembly::Serial), circle(f, g, Assembly::Parallel));
            ASSERT_EQ(bracket(f, g, Assembly::Serial), bracket(f, g, Assembly::Parallel));
            ASSERT_EQ(brace_sg(f, {g, h}, false, Assembly::Serial), brace_sg(f, {g, h}, false, Assembly::Parallel));
        }
}

TEST_F(Parallel, Ladder) {
    auto A = two_loop();
    auto s = build_sg_ladder(A, -1, 1, 3, Assembly::Serial), p = build_sg_ladder(A, -1, 1, 3, Assembly::Parallel);
    EXPECT_EQ(s.delta, p.delta);
    EXPECT_EQ(s.theta, p.theta);
}

TEST_F(Parallel, SuiteReportsDoNotDependOnThreads) {
    SuiteSpec spec;
    spec.suite = "gerstenhaber";
    spec.alg = cube();
    spec.algebra_name = "cube";
    spec.samples = 20;
    auto a = to_json(run_suite(spec));
    omp_set_num_threads(1);
    auto b = to_json(run_suite(spec));
    EXPECT_EQ(a, b);
}
