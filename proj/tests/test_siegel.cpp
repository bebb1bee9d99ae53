#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smf2/siegel.hpp"
#include "smf2/arith.hpp"

#include <cstdio>
#include <fstream>

using namespace smf2;

TEST_CASE("igusa dimensions") {
    CHECK(igusa_dim(0) == 1);
    CHECK(igusa_dim(2) == 0);
    CHECK(igusa_dim(4) == 1);
    CHECK(igusa_dim(10) == 2);
    CHECK(igusa_dim(12) == 3);
    CHECK(igusa_dim(20) == 5);
    CHECK(igusa_dim(30) == 11);
    CHECK(igusa_dim(34) == 14);
}

TEST_CASE("gritsenko lift coefficients") {
    auto e41 = jacobi_eisenstein(4, 200);
    auto lift = gritsenko_lift(e41, "4|_0");
    // a([1,1,1]) = c(3)
    CHECK(lift->coeff({1, 1, 1}) == rat(56));
    // a([2,2,2]) = c(12) + 2^{k-1} c(3)
    CHECK(lift->coeff({2, 2, 2}) == e41.c(12) + rat(8) * rat(56));
    // a(0) = 1/240 for the weight-4 Eisenstein lift
    CHECK(lift->coeff({0, 0, 0}) == rat(1, 240));
    // GL2 invariance through reduction
    CHECK(lift->coeff({1, -1, 1}) == lift->coeff({1, 1, 1}));
    CHECK(lift->coeff({5, -4, 1}) == lift->coeff(reduce({5, -4, 1}).form));
}

TEST_CASE("siegel operator consistency: a([n,0,0]) = sigma_{k-1}(n) c(0)") {
    for (long k : {4L, 6L, 10L}) {
        auto labels = spezialschar_labels(k, 4 * k + 80);
        for (auto& lf : labels) {
            auto lift = gritsenko_lift(lf.form, lf.label.str());
            Rat c0 = lf.form.c(0);
            for (long n = 1; n <= 20; ++n)
                CHECK(lift->coeff({0, 0, n}) == Rat(sigma_pow(n, (unsigned)(k - 1))) * c0);
        }
    }
}

TEST_CASE("product coefficients") {
    auto labels10 = spezialschar_labels(10, 400);
    auto g1 = std::make_shared<LiftSource>(labels10[0].form, "10|_0");
    auto g2 = std::make_shared<LiftSource>(labels10[1].form, "10|^1");
    auto prod = std::make_shared<ProductSource>(g1, g2);
    auto prod_sym = std::make_shared<ProductSource>(g2, g1);

    // T = 0: a1(0) a2(0)
    CHECK(prod->coeff({0, 0, 0}) == g1->coeff({0, 0, 0}) * g2->coeff({0, 0, 0}));
    // T = [1,1,1]: only two decompositions
    CHECK(prod->coeff({1, 1, 1}) ==
          g1->coeff({0, 0, 0}) * g2->coeff({1, 1, 1}) +
              g1->coeff({1, 1, 1}) * g2->coeff({0, 0, 0}));
    // symmetry
    for (auto t : {BQF{1, 1, 1}, BQF{1, 0, 1}, BQF{2, 1, 3}, BQF{0, 0, 4}})
        CHECK(prod->coeff(t) == prod_sym->coeff(t));

    // aggregated equals the naive decomposition sum for all reduced T with
    // 4 det T <= 20
    for (auto& t : reduced_forms_up_to(20, 4)) {
        Rat naive = 0;
        for (long a1 = 0; a1 <= t.a; ++a1)
            for (long c1 = 0; c1 <= t.c; ++c1)
                for (long b1 = -2 * (t.a + t.c) - 2; b1 <= 2 * (t.a + t.c) + 2; ++b1) {
                    BQF t1{a1, b1, c1}, t2{t.a - a1, t.b - b1, t.c - c1};
                    if (!is_psd(t1) || !is_psd(t2)) continue;
                    naive += g1->coeff(t1) * g2->coeff(t2);
                }
        CHECK(prod->coeff(t) == naive);
    }
}

TEST_CASE("combo source linearity") {
    auto labels10 = spezialschar_labels(10, 200);
    auto g1 = gritsenko_lift(labels10[0].form, "10|_0");
    auto g2 = gritsenko_lift(labels10[1].form, "10|^1");
    ComboSource combo(10, {{rat(3), g1}, {rat(-2, 7), g2}}, "combo");
    for (auto t : {BQF{1, 1, 1}, BQF{1, 0, 2}, BQF{0, 0, 3}})
        CHECK(combo.coeff(t) == rat(3) * g1->coeff(t) + rat(-2, 7) * g2->coeff(t));
}

TEST_CASE("verify_generating small weights: spezialschar suffices up to 18") {
    for (long k = 4; k <= 18; k += 2) {
        auto rep = verify_generating(k);
        CHECK(rep.ok);
        CHECK(rep.rank == igusa_dim(k));
        CHECK(rep.products.empty());
    }
}

TEST_CASE("verify_generating weight 20 matches the reference products") {
    auto rep = verify_generating(20);
    CHECK(rep.ok);
    REQUIRE(rep.products.size() == 2);
    CHECK(rep.products[0].str() == "10|_0*10|_0");
    CHECK(rep.products[1].str() == "10|_0*10|^1");
}

TEST_CASE("product_basis counts") {
    auto b12 = product_basis(12);
    CHECK(b12.dim == 3);
    long nprod = 0;
    for (auto& l : b12.labels) nprod += l.is_product;
    CHECK(nprod == 0);

    auto b24 = product_basis(24);
    CHECK(b24.dim == 8);
    std::vector<std::string> prods;
    for (auto& l : b24.labels)
        if (l.is_product) prods.push_back(l.str());
    REQUIRE(prods.size() == 4);
    CHECK(prods[0] == "12|_0*12|_0");
    CHECK(prods[1] == "12|_0*12|_1");
    CHECK(prods[2] == "12|_1*12|_1");
    CHECK(prods[3] == "10|_0*14|_0");
}

TEST_CASE("pivot_max_discriminant trivial case") {
    auto b4 = product_basis(4);
    CHECK(pivot_max_discriminant(4, b4) == 0);
}

TEST_CASE("slope fit") {
    // constant data -> slope 0
    CHECK(slope_fit({{100, 7}, {120, 7}, {140, 7}}) == doctest::Approx(0.0).epsilon(1e-12));
    // exact quadratic maxD = k^2 -> slope 2
    std::vector<std::pair<long, long>> quad;
    for (long k = 10; k <= 60; k += 10) quad.push_back({k, k * k});
    CHECK(slope_fit(quad) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("cache round trip") {
    auto e41 = jacobi_eisenstein(4, 200);
    LiftSource src(e41, "4|_0");
    for (auto t : {BQF{0, 0, 0}, BQF{1, 1, 1}, BQF{1, 0, 1}, BQF{2, 2, 3}, BQF{0, 0, 5}})
        (void)src.coeff(t);
    std::string path = "test_cache_roundtrip.txt";
    cache_store(src, path);

    LiftSource fresh(e41, "4|_0");
    size_t n = cache_load(fresh, path);
    CHECK(n == 5);
    auto a = src.memo_snapshot();
    auto b = fresh.memo_snapshot();
    CHECK(a.size() == b.size());
    for (auto& [t, v] : a) {
        REQUIRE(b.count(t) == 1);
        CHECK(b.at(t) == v);
    }

    // corrupted digit -> checksum error
    {
        std::ifstream in(path);
        std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        auto pos = content.rfind("56");
        REQUIRE(pos != std::string::npos);
        content[pos] = '7';
        std::ofstream out(path + ".bad", std::ios::trunc);
        out << content;
    }
    LiftSource fresh2(e41, "4|_0");
    CHECK_THROWS_WITH_AS(cache_load(fresh2, path + ".bad"),
                         doctest::Contains("checksum"), std::runtime_error);

    // wrong label -> header mismatch
    LiftSource other(e41, "different-label");
    CHECK_THROWS_WITH_AS(cache_load(other, path), doctest::Contains("header"),
                         std::runtime_error);

    std::remove(path.c_str());
    std::remove((path + ".bad").c_str());
}

TEST_CASE("jacobi cache round trip") {
    auto e41 = jacobi_eisenstein(4, 60);
    std::string path = "test_jacobi_cache.txt";
    jacobi_cache_store(e41, "eis4", path);
    auto loaded = jacobi_cache_load(4, "eis4", path);
    REQUIRE(loaded.has_value());
    for (long D = 0; D <= 60; ++D) {
        if (D % 4 == 1 || D % 4 == 2) continue;
        CHECK((*loaded)[(size_t)D] == e41.c(D));
    }
    std::remove(path.c_str());
}
