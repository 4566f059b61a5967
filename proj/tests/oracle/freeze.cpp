// Prints the reference values frozen into the test suite.
#include <cstdio>
#include <cstdlib>

#include "dense_oracle.hpp"

int main(int argc, char** argv) {
    int pmax_loop = argc > 1 ? std::atoi(argv[1]) : 4;
    auto dual = oracle::truncated(2), cube = oracle::truncated(3), loop2 = oracle::loops_rsz(2);
    std::printf("adual dims: dual %zu cube %zu loop2 %zu\n", oracle::a_dual(dual).size(), oracle::a_dual(cube).size(),
                oracle::a_dual(loop2).size());
    for (auto* nm : {"dual", "cube", "loop2"}) {
        auto& A = nm[0] == 'd' ? dual : nm[0] == 'c' ? cube : loop2;
        std::printf("HH %s:", nm);
        for (int m = 0; m <= 4; ++m) std::printf(" %d", oracle::hh_omega(A, m, 0));
        std::printf("\nTH %s:", nm);
        for (int i = -4; i <= 4; ++i) std::printf(" %d", oracle::th(A, i));
        std::printf("\n");
    }
    std::printf("dual H^j(Omega^p) rows p=0..6, j=-4..4\n");
    for (int p = 0; p <= 6; ++p) {
        for (int j = -4; j <= 4; ++j) std::printf(" %d", oracle::hh_omega(dual, j, p));
        std::printf("\n");
    }
    std::printf("cube H^j(Omega^p) rows p=0..3, j=-3..3\n");
    for (int p = 0; p <= 3; ++p) {
        for (int j = -3; j <= 3; ++j) std::printf(" %d", oracle::hh_omega(cube, j, p));
        std::printf("\n");
    }
    std::printf("loop2 H^0(Omega^p):");
    for (int p = 0; p <= pmax_loop; ++p) {
        std::printf(" %d", oracle::hh_omega(loop2, 0, p));
        std::fflush(stdout);
    }
    std::printf("\n");
}
