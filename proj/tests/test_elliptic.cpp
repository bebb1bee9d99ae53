#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smf2/qseries.hpp"

using namespace smf2;

TEST_CASE("eisenstein series") {
    QSeries e4 = eisenstein(4, 3);
    CHECK(e4.coeff(0) == rat(1));
    CHECK(e4.coeff(1) == rat(240));
    CHECK(e4.coeff(2) == rat(2160));
    QSeries e6 = eisenstein(6, 2);
    CHECK(e6.coeff(0) == rat(1));
    CHECK(e6.coeff(1) == rat(-504));
    CHECK_THROWS(eisenstein(5, 4));
    CHECK_THROWS(eisenstein(2, 4));
}

TEST_CASE("delta") {
    QSeries d = delta(5);
    CHECK(d.coeff(0) == rat(0));
    CHECK(d.coeff(1) == rat(1));
    CHECK(d.coeff(2) == rat(-24));
    CHECK(d.coeff(3) == rat(252));
    CHECK(d.coeff(4) == rat(-1472));
}

TEST_CASE("E4^3 - E6^2 definition consistency") {
    QSeries e4 = eisenstein(4, 4), e6 = eisenstein(6, 4);
    QSeries g = e4 * e4 * e4 - e6 * e6;
    CHECK(g.coeff(0) == rat(0));
    CHECK(g.coeff(1) == rat(1728));
}

TEST_CASE("precision discipline") {
    QSeries e4 = eisenstein(4, 5), e6 = eisenstein(6, 3);
    QSeries p = e4 * e6;
    CHECK(p.prec == 3);
    CHECK_THROWS(p.coeff(3));
    CHECK_THROWS(e4.coeff(5));
}

TEST_CASE("dimension formulas") {
    CHECK(dim_M(0) == 1);
    CHECK(dim_M(2) == 0);
    CHECK(dim_M(12) == 2);
    CHECK(dim_S(10) == 0);
    CHECK(dim_S(12) == 1);
    CHECK(dim_M(-4) == 0);
    CHECK(dim_M(7) == 0);
    for (long k = 4; k <= 60; k += 2) CHECK(dim_M(k) == dim_S(k) + 1);
}

TEST_CASE("victor-miller basis") {
    auto vm = victor_miller_basis(12, 8);
    REQUIRE(vm.size() == 2);
    // identity leading block
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(vm[i].coeff(j) == (i == j ? rat(1) : rat(0)));
    CHECK(vm[0].coeff(2) == rat(196560));
    CHECK(vm[1].coeff(2) == rat(-24)); // f_{12,1} = Delta

    auto vm0 = victor_miller_basis(0, 3);
    REQUIRE(vm0.size() == 1);
    CHECK(vm0[0].coeff(0) == rat(1));

    CHECK_THROWS(victor_miller_basis(12, 1));

    // identity block at a larger weight
    auto vm36 = victor_miller_basis(36, 10);
    REQUIRE(vm36.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) CHECK(vm36[i].coeff(j) == (i == j ? rat(1) : rat(0)));
}

TEST_CASE("elliptic hecke matrices") {
    QMatrix t2 = elliptic_hecke_matrix(12, 2);
    REQUIRE(t2.rows == 1);
    CHECK(t2.at(0, 0) == rat(-24)); // tau(2)

    QMatrix t18 = elliptic_hecke_matrix(18, 2);
    REQUIRE(t18.rows == 1);
    CHECK(t18.at(0, 0) == rat(-528));

    // commuting T_2, T_3 on S_k for k <= 40
    for (long k = 12; k <= 40; k += 2) {
        if (dim_S(k) == 0) continue;
        QMatrix a = elliptic_hecke_matrix(k, 2);
        QMatrix b = elliptic_hecke_matrix(k, 3);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("hecke eigenvalue bound |alpha| <= 2 p^((k-1)/2)") {
    for (long k : {12L, 16L, 18L, 20L, 22L, 26L}) {
        for (long p : {2L, 3L}) {
            QMatrix m = elliptic_hecke_matrix(k, p);
            if (m.rows != 1) continue;
            double alpha = std::abs(m.at(0, 0).get_d());
            double bound = 2.0 * std::pow((double)p, (k - 1) / 2.0);
            CHECK(alpha <= bound);
        }
    }
}
