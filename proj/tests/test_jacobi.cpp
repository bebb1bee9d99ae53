#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smf2/jacobi.hpp"
#include "smf2/binquad.hpp"
#include "smf2/qmatrix.hpp"

using namespace smf2;

TEST_CASE("cohen H values") {
    // Hurwitz class numbers via automorphism-weighted class counts:
    // H(1, N) = sum over classes of disc -N of 2/|Aut|
    auto hurwitz = [](long N) {
        Rat acc = 0;
        for (auto& t : class_reps(-N)) acc += rat(2) / rat(aut_order(t));
        return acc;
    };
    CHECK(cohen_H(1, 3) == rat(1, 3));
    CHECK(cohen_H(1, 4) == rat(1, 2));
    for (long N : {3L, 4L, 7L, 8L, 11L, 12L, 15L, 16L, 19L, 20L, 23L, 24L})
        CHECK(cohen_H(1, N) == hurwitz(N));

    // congruence vanishing: (-1)^r N = 2, 3 mod 4
    CHECK(cohen_H(1, 1) == rat(0));
    CHECK(cohen_H(1, 2) == rat(0));
    CHECK(cohen_H(2, 2) == rat(0));
    CHECK(cohen_H(3, 5) == rat(0));

    // H(r, 0) = zeta(1 - 2r)
    CHECK(cohen_H(1, 0) == rat(-1, 12));
    CHECK(cohen_H(3, 0) == rat(-1, 252));
    CHECK(cohen_H(5, 0) == rat(-1, 132));

    // batch table matches single-shot
    auto table = cohen_H_table(3, 40);
    for (long N = 0; N <= 40; ++N) CHECK(table[N] == cohen_H(3, N));
}

TEST_CASE("jacobi eisenstein E_{4,1}") {
    auto e41 = jacobi_eisenstein(4, 60);
    CHECK(e41.c(0) == rat(1));
    CHECK(e41.c(3) == rat(56));
    CHECK(e41.c(4) == rat(126));
    CHECK(e41.c(7) == rat(576));
    CHECK(e41.c(8) == rat(756));
    CHECK(e41.c(1) == rat(0));
    CHECK(e41.c(2) == rat(0));
    CHECK(e41.c(-5) == rat(0));
    CHECK_THROWS_AS((void)e41.c(100), ExtendPrecisionError);

    // independent determination: c(0)=1 plus the two n=1 development
    // equations D0(E41) = E4, D2(E41) = 0 pin c(3), c(4)
    // D0 at n=1: c(4) + 2c(3) + 2c(0) = 240
    // D2 at n=1: -2c(4) + 4c(3) + 28 c(0) = 0
    QMatrix A(2, 2);
    A.at(0, 0) = rat(2);
    A.at(0, 1) = rat(1);
    A.at(1, 0) = rat(4);
    A.at(1, 1) = rat(-2);
    std::vector<Rat> x;
    REQUIRE(solve_linear(A, {rat(238), rat(-28)}, x));
    CHECK(x[0] == e41.c(3));
    CHECK(x[1] == e41.c(4));
}

TEST_CASE("jacobi eisenstein E_{6,1}") {
    auto e61 = jacobi_eisenstein(6, 20);
    CHECK(e61.c(0) == rat(1));
    CHECK(e61.c(3) == rat(-88));
    CHECK(e61.c(4) == rat(-330));
}

TEST_CASE("jacobi space dimensions") {
    CHECK(jacobi_space(2, 40).empty());
    CHECK(jacobi_space(4, 40).size() == 1);
    CHECK(jacobi_space(10, 60).size() == 2);
    for (long k = 4; k <= 40; k += 2) {
        long expect = dim_M(k) + dim_S(k + 2);
        CHECK((long)jacobi_space(k, std::max(60L, 4 * k)).size() == expect);
    }
}

TEST_CASE("development maps") {
    auto e41 = jacobi_eisenstein(4, 80);
    QSeries d0 = dev_D0(e41, 10);
    QSeries e4 = eisenstein(4, 10);
    for (size_t n = 0; n < 10; ++n) CHECK(d0.coeff(n) == e4.coeff(n));

    QSeries d2 = dev_D2(e41, 10);
    CHECK(d2.is_zero());

    auto e61 = jacobi_eisenstein(6, 80);
    CHECK(dev_D2(e61, 10).is_zero());
    QSeries d06 = dev_D0(e61, 10);
    QSeries e6 = eisenstein(6, 10);
    for (size_t n = 0; n < 10; ++n) CHECK(d06.coeff(n) == e6.coeff(n));

    // dev_D0 of the zero combination is zero
    auto zero = build_combo(4, {}, 40);
    CHECK(dev_D0(zero, 8).is_zero());

    // D2 lands in the cusp space: constant term always zero
    for (auto& f : jacobi_space(16, 80)) CHECK(dev_D2(f, 6).coeff(0) == rat(0));
}

TEST_CASE("dev_D0 lands in M_k: expressible in the victor-miller basis") {
    long k = 16;
    auto space = jacobi_space(k, 120);
    size_t prec = 12;
    auto vm = victor_miller_basis(k, prec);
    for (auto& f : space) {
        QSeries d0 = dev_D0(f, prec);
        // subtract VM projection; residual must vanish identically
        QSeries res = d0;
        for (size_t i = 0; i < vm.size(); ++i) {
            Rat ci = res.coeff(i);
            if (ci != 0) res = res - ci * vm[i];
        }
        CHECK(res.is_zero());
    }
}

TEST_CASE("(D0, D2) injective on jacobi_space") {
    for (long k : {10L, 12L, 16L, 20L}) {
        auto space = jacobi_space(k, 40 + 4 * k);
        size_t n0 = space.size() + 2;
        QMatrix M(space.size(), 2 * n0);
        for (size_t j = 0; j < space.size(); ++j) {
            QSeries d0 = dev_D0(space[j], n0), d2 = dev_D2(space[j], n0);
            for (size_t i = 0; i < n0; ++i) {
                M.at(j, i) = d0.coeff(i);
                M.at(j, n0 + i) = d2.coeff(i);
            }
        }
        CHECK(rank_exact(M) == space.size());
    }
}

TEST_CASE("spezialschar labels") {
    auto labels4 = spezialschar_labels(4, 60);
    REQUIRE(labels4.size() == 1);
    CHECK(labels4[0].label.str() == "4|_0");
    auto e41 = jacobi_eisenstein(4, 40);
    for (long D = 0; D <= 40; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        CHECK(labels4[0].form.c(D) == e41.c(D));
    }

    auto labels10 = spezialschar_labels(10, 80);
    REQUIRE(labels10.size() == 2);
    CHECK(labels10[0].label.str() == "10|_0");
    CHECK(labels10[1].label.str() == "10|^1");

    // the weight-10 solve: dev_D2(10|^1) = f_{12,1} = Delta exactly
    QSeries d2 = dev_D2(labels10[1].form, 8);
    QSeries dl = delta(8);
    for (size_t n = 0; n < 8; ++n) CHECK(d2.coeff(n) == dl.coeff(n));
    CHECK(dev_D0(labels10[1].form, 8).is_zero());

    // 10|_0 maps to (E10, 0)
    QSeries d0 = dev_D0(labels10[0].form, 8);
    QSeries e10 = eisenstein(10, 8);
    for (size_t n = 0; n < 8; ++n) CHECK(d0.coeff(n) == e10.coeff(n));
    CHECK(dev_D2(labels10[0].form, 8).is_zero());

    // label count = dim M_k + dim S_{k+2}
    for (long k = 4; k <= 30; k += 2)
        CHECK((long)spezialschar_labels(k, 4 * k + 60).size() == dim_M(k) + dim_S(k + 2));

    // linear independence of the weight-10 labels
    QMatrix M(2, 20);
    for (size_t j = 0; j < 2; ++j)
        for (long D = 0; D < 20; ++D) M.at(j, (size_t)D) = (D % 4 == 1 || D % 4 == 2)
                                                               ? rat(0)
                                                               : labels10[j].form.c(D);
    CHECK(rank_exact(M) == 2);
}

TEST_CASE("weight-10 cusp label has the classical coefficient ratios") {
    auto labels = spezialschar_labels(10, 80);
    const auto& phi = labels[1].form; // 10|^1, proportional to phi_{10,1}
    REQUIRE(phi.c(3) != 0);
    CHECK(phi.c(4) / phi.c(3) == rat(-2));
    CHECK(phi.c(7) / phi.c(3) == rat(-16));
    CHECK(phi.c(8) / phi.c(3) == rat(36));
    CHECK(phi.c(11) / phi.c(3) == rat(99));
    CHECK(phi.c(12) / phi.c(3) == rat(-272));
    CHECK(phi.c(0) == rat(0));
}

TEST_CASE("table extension preserves values") {
    auto labels = spezialschar_labels(10, 60);
    auto phi = labels[1].form;
    auto ext = extend_to(phi, 200);
    for (long D = 0; D <= 60; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        CHECK(ext.c(D) == phi.c(D));
    }
    CHECK_NOTHROW((void)ext.c(199));
}
