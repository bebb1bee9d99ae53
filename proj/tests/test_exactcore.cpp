#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smf2/arith.hpp"
#include "smf2/numberfield.hpp"
#include "smf2/polyfactor.hpp"
#include "smf2/qmatrix.hpp"

#include <random>

using namespace smf2;

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == rat(1));
    CHECK(bernoulli(1) == rat(-1, 2));
    CHECK(bernoulli(4) == rat(-1, 30));
    CHECK(bernoulli(12) == rat(-691, 2730));
    CHECK(bernoulli(3) == rat(0));
    // recurrence check: sum_j C(n+1,j) B_j = 0 for a few n
    for (unsigned n = 2; n <= 20; ++n) {
        Rat acc = 0;
        Int binom = 1;
        for (unsigned j = 0; j <= n; ++j) {
            acc += Rat(binom) * bernoulli(j);
            binom *= (long)(n + 1 - j);
            binom /= (long)(j + 1);
        }
        CHECK(acc == rat(0));
    }
}

TEST_CASE("kronecker symbol") {
    CHECK(kronecker(-3, 6) == 0);
    CHECK(kronecker(-4, 3) == -1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 1) == 1);
    // complete multiplicativity in n
    for (long D : {-3L, -4L, -7L, -20L}) {
        for (long m = 1; m <= 30; ++m)
            for (long n = 1; n <= 30; ++n)
                CHECK(kronecker(D, m * n) == kronecker(D, m) * kronecker(D, n));
    }
}

TEST_CASE("discriminant splitting") {
    CHECK(is_fundamental_disc(-3));
    CHECK(is_fundamental_disc(-4));
    CHECK(!is_fundamental_disc(-12));
    CHECK(!is_fundamental_disc(-9));
    auto s = split_discriminant(-12);
    CHECK(s.fundamental == -3);
    CHECK(s.conductor == 2);
    s = split_discriminant(-75);
    CHECK(s.fundamental == -3);
    CHECK(s.conductor == 5);
}

TEST_CASE("charpoly agrees with trivial cases") {
    QMatrix I2 = QMatrix::identity(2);
    RatPoly chi = charpoly(I2);
    // (x-1)^2 = x^2 - 2x + 1
    CHECK(chi == RatPoly::from_longs({1, -2, 1}));

    QMatrix sw(2, 2);
    sw.at(0, 1) = 1;
    sw.at(1, 0) = 1;
    CHECK(charpoly(sw) == RatPoly::from_longs({-1, 0, 1}));
}

TEST_CASE("charpoly randomized against cofactor oracle and fraction-free path") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> dist(-9, 9);
    for (int iter = 0; iter < 100; ++iter) {
        size_t n = 1 + (size_t)(rng() % 5);
        QMatrix M(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) M.at(i, j) = rat(dist(rng));
        RatPoly a = charpoly(M);
        RatPoly b = charpoly_cofactor(M);
        RatPoly c = charpoly_fraction_free(M);
        CHECK(a == b);
        CHECK(a == c);
    }
}

TEST_CASE("rank and solve") {
    QMatrix M(3, 3);
    long vals[3][3] = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M.at(i, j) = rat(vals[i][j]);
    CHECK(rank_exact(M) == 2);
    CHECK(rank_mod_p(M, multimod_primes()[0]) == 2);

    QMatrix A(2, 2);
    A.at(0, 0) = rat(2);
    A.at(0, 1) = rat(1);
    A.at(1, 0) = rat(1);
    A.at(1, 1) = rat(3);
    std::vector<Rat> x;
    CHECK(solve_linear(A, {rat(5), rat(10)}, x));
    CHECK(x[0] == rat(1));
    CHECK(x[1] == rat(3));
}

TEST_CASE("factor_over_Q examples") {
    auto f = factor_over_Q(RatPoly::from_longs({-1, 0, 1})); // x^2 - 1
    CHECK(f.factors.size() == 2);
    CHECK(f.unit == rat(1));

    f = factor_over_Q(RatPoly::from_longs({1, 0, 1})); // x^2 + 1
    CHECK(f.factors.size() == 1);
    CHECK(f.factors[0].second == 1);
    CHECK(is_irreducible_over_Q(RatPoly::from_longs({1, 0, 1})));

    // x^4 - 10x^2 + 1: irreducible over Q, splits mod every prime
    CHECK(is_irreducible_over_Q(RatPoly::from_longs({1, 0, -10, 0, 1})));

    // (x^2-2)(x^2-3)(x-1)^2
    RatPoly p = RatPoly::from_longs({-2, 0, 1}) * RatPoly::from_longs({-3, 0, 1}) *
                RatPoly::from_longs({-1, 1}) * RatPoly::from_longs({-1, 1});
    f = factor_over_Q(p);
    CHECK(f.factors.size() == 3);
    int total_deg = 0;
    for (auto& [g, m] : f.factors) total_deg += g.degree() * m;
    CHECK(total_deg == 6);
}

TEST_CASE("factor_over_Q properties: product reconstructs, no rational roots") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> dist(-6, 6);
    for (int iter = 0; iter < 25; ++iter) {
        RatPoly p;
        int deg = 2 + (int)(rng() % 5);
        for (int i = 0; i <= deg; ++i) p.c.push_back(rat(dist(rng)));
        p.trim();
        if (p.degree() < 1) continue;
        auto f = factor_over_Q(p);
        RatPoly prod = RatPoly::constant(f.unit);
        for (auto& [g, m] : f.factors) {
            CHECK(g.lead() == rat(1));
            for (int t = 0; t < m; ++t) prod = prod * g;
            // rational root theorem check on reported irreducibles of degree >= 2
            if (g.degree() >= 2) {
                Rat unit2;
                RatPoly gz = primitive_part(g, unit2);
                Int a0 = abs(gz.c[0].get_num());
                Int an = abs(gz.lead().get_num());
                bool has_root = false;
                if (a0 == 0) has_root = true;
                else {
                    for (Int r = 1; r <= a0; ++r) {
                        if (a0 % r != 0) continue;
                        for (Int s = 1; s <= an; ++s) {
                            if (an % s != 0) continue;
                            Rat cand(r, s);
                            cand.canonicalize();
                            if (gz.eval(cand) == 0 || gz.eval(-cand) == 0) has_root = true;
                        }
                    }
                }
                CHECK(!has_root);
            }
        }
        CHECK(prod == p);
    }
}

TEST_CASE("number field arithmetic") {
    auto F = std::make_shared<NumberField>(RatPoly::from_longs({-2, 0, 1})); // x^2-2
    NFElem x = NFElem::generator(F);
    NFElem two = x * x;
    CHECK(two == NFElem::from_rat(F, rat(2)));
    NFElem inv = nf_inverse(x);
    CHECK(x * inv == NFElem::from_rat(F, rat(1)));
}

TEST_CASE("real embeddings: sqrt 2") {
    auto F = std::make_shared<NumberField>(RatPoly::from_longs({-2, 0, 1}));
    NFElem x = NFElem::generator(F);
    auto rep = nf_real_embeddings(x, 64);
    REQUIRE(rep.values.size() == 2);
    CHECK(rep.nonreal_pairs == 0);
    Real lo = rep.values[0], hi = rep.values[1];
    Real target(0L, 128);
    mpfr_sqrt_ui(target.get(), 2, MPFR_RNDN);
    CHECK(real_abs(lo + target) < real_2pow(-60, 128));
    CHECK(real_abs(hi - target) < real_2pow(-60, 128));
}

TEST_CASE("real embeddings: golden ratio vs quadratic formula") {
    auto F = std::make_shared<NumberField>(RatPoly::from_longs({-1, -1, 1})); // x^2-x-1
    NFElem x = NFElem::generator(F);
    auto rep = nf_real_embeddings(x, 80);
    REQUIRE(rep.values.size() == 2);
    Real s5(0L, 160);
    mpfr_sqrt_ui(s5.get(), 5, MPFR_RNDN);
    Real phi = (Real(1L, 160) + s5) / Real(2L, 160);
    Real conj = (Real(1L, 160) - s5) / Real(2L, 160);
    CHECK(real_abs(rep.values[0] - conj) < real_2pow(-70, 160));
    CHECK(real_abs(rep.values[1] - phi) < real_2pow(-70, 160));
}

TEST_CASE("real embeddings: rational element is constant across embeddings") {
    auto F = std::make_shared<NumberField>(RatPoly::from_longs({-2, 0, 1}));
    NFElem e = NFElem::from_rat(F, rat(7, 3));
    auto rep = nf_real_embeddings(e, 64);
    REQUIRE(rep.values.size() == 2);
    Real target(rat(7, 3), 128);
    for (auto& v : rep.values) CHECK(real_abs(v - target) < real_2pow(-60, 128));
}

TEST_CASE("real root enclosures contain a sign change of the polynomial") {
    RatPoly p = RatPoly::from_longs({-2, 0, 1}) * RatPoly::from_longs({-3, 0, 1}) *
                RatPoly::from_longs({5, 1});
    auto roots = real_roots(p, 64);
    REQUIRE(roots.size() == 5);
    for (auto& r : roots) {
        if (r.lo == r.hi) {
            CHECK(p.eval(r.lo) == 0);
        } else {
            Rat va = p.eval(r.lo), vb = p.eval(r.hi);
            CHECK(((va < 0 && vb > 0) || (va > 0 && vb < 0)));
        }
    }
    CHECK(count_real_roots(RatPoly::from_longs({1, 0, 1})) == 0);
    CHECK(count_real_roots(RatPoly::from_longs({-2, 0, 1})) == 2);
}
