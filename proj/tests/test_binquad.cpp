#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "smf2/binquad.hpp"

#include <map>
#include <random>
#include <set>

using namespace smf2;

namespace {

// brute-force GL2 orbit search with bounded transform entries
BQF brute_min_form(const BQF& t, long bound) {
    BQF best = t;
    auto better = [](const BQF& x, const BQF& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.c != y.c) return x.c < y.c;
        return x.b < y.b;
    };
    for (long u0 = -bound; u0 <= bound; ++u0)
        for (long u1 = -bound; u1 <= bound; ++u1)
            for (long v0 = -bound; v0 <= bound; ++v0)
                for (long v1 = -bound; v1 <= bound; ++v1) {
                    long det = u0 * v1 - u1 * v0;
                    if (det != 1 && det != -1) continue;
                    BQF s = apply_transform(t, {u0, v0, u1, v1});
                    if (is_reduced(s) && better(s, best)) best = s;
                    if (is_reduced(s) && !is_reduced(best)) best = s;
                }
    return best;
}

} // namespace

TEST_CASE("reduce basic examples") {
    auto r = reduce({1, 1, 1});
    CHECK(r.form == BQF{1, 1, 1});

    r = reduce({5, -4, 1});
    CHECK(is_reduced(r.form));
    CHECK(det_key(r.form) == det_key(BQF{5, -4, 1}));
    CHECK(apply_transform(BQF{5, -4, 1}, r.U) == r.form);

    r = reduce({2, 0, 0});
    CHECK(r.form == BQF{0, 0, 2});
    CHECK(apply_transform(BQF{2, 0, 0}, r.U) == r.form);

    r = reduce({0, 0, 0});
    CHECK(r.form == BQF{0, 0, 0});

    CHECK_THROWS(reduce({1, 5, 1})); // indefinite
}

TEST_CASE("reduce is idempotent and preserves content and det") {
    std::mt19937 rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        long a = (long)(rng() % 12), c = (long)(rng() % 12);
        long bmax = (long)std::sqrt(4.0 * a * c);
        long b = bmax ? (long)(rng() % (2 * bmax + 1)) - bmax : 0;
        BQF t{a, b, c};
        if (!is_psd(t)) continue;
        auto r = reduce(t);
        CHECK(is_reduced(r.form));
        CHECK(det_key(r.form) == det_key(t));
        CHECK(content(r.form) == content(t));
        CHECK(reduce(r.form).form == r.form);
        CHECK(apply_transform(t, r.U) == r.form);
    }
}

TEST_CASE("reduction agrees with brute-force GL2 orbit search, |D| <= 40") {
    // two definite forms of equal small discriminant are GL2-equivalent iff
    // reduce gives the same normal form
    std::map<long, std::set<std::tuple<long, long, long>>> by_disc;
    for (long a = 1; a <= 6; ++a)
        for (long b = -6; b <= 6; ++b)
            for (long c = 1; c <= 8; ++c) {
                BQF t{a, b, c};
                long dk = det_key(t);
                if (dk <= 0 || dk > 40) continue;
                BQF red = reduce(t).form;
                BQF brute = brute_min_form(t, 12);
                CHECK(red == brute);
                by_disc[dk].insert({red.a, red.b, red.c});
            }
    // cross-check: the reduced forms of disc -3 and -4 are unique
    CHECK(by_disc[3].size() == 1);
    CHECK(by_disc[4].size() == 1);
}

TEST_CASE("class representatives") {
    auto c3 = class_reps(-3);
    REQUIRE(c3.size() == 1);
    CHECK(c3[0] == BQF{1, 1, 1});

    auto c4 = class_reps(-4);
    REQUIRE(c4.size() == 1);
    CHECK(c4[0] == BQF{1, 0, 1});

    auto c20 = class_reps(-20);
    REQUIRE(c20.size() == 2);
    CHECK(c20[0] == BQF{1, 0, 5});
    CHECK(c20[1] == BQF{2, 2, 3});

    CHECK_THROWS(class_reps(-5));
    CHECK_THROWS(class_reps(4));
}

TEST_CASE("class counts match naive enumeration for -100 <= D < 0") {
    // naive triple loop over |b| <= a <= c <= |D| counting each class once
    // (b >= 0 at the ambiguous boundaries |b| = a or a = c)
    for (long D = -100; D < 0; ++D) {
        long r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        long count = 0;
        for (long a = 1; a <= -D; ++a)
            for (long b = -a; b <= a; ++b)
                for (long c = a; c <= -D; ++c) {
                    if (b * b - 4 * a * c != D) continue;
                    if (b < 0 && (-b == a || a == c)) continue;
                    ++count;
                }
        CHECK((long)class_reps(D).size() == count);
    }
}

TEST_CASE("automorphism orders") {
    CHECK(aut_order({1, 1, 1}) == 6);
    CHECK(aut_order({1, 0, 1}) == 4);
    CHECK(aut_order({1, 0, 5}) == 2);
    CHECK(aut_order({2, 2, 2}) == 6);
    CHECK(aut_order({3, 0, 3}) == 4);
    CHECK_THROWS(aut_order({0, 0, 2}));

    // brute force over SL2 matrices with entries bounded by 2
    auto brute_aut = [](const BQF& t) {
        int count = 0;
        for (long u0 = -2; u0 <= 2; ++u0)
            for (long u1 = -2; u1 <= 2; ++u1)
                for (long v0 = -2; v0 <= 2; ++v0)
                    for (long v1 = -2; v1 <= 2; ++v1) {
                        if (u0 * v1 - u1 * v0 != 1) continue;
                        if (apply_transform(t, {u0, v0, u1, v1}) == t) ++count;
                    }
        return count;
    };
    for (long D = -100; D < 0; ++D) {
        long r = ((D % 4) + 4) % 4;
        if (r != 0 && r != 1) continue;
        for (auto& t : class_reps(D)) {
            CHECK(aut_order(t) == brute_aut(t));
            long g = content(t);
            long core = det_key(t) / (g * g);
            if (core != 3 && core != 4) CHECK(aut_order(t) == 2);
        }
    }
}

TEST_CASE("decompositions") {
    auto v0 = decompositions({0, 0, 0});
    REQUIRE(v0.size() == 1);
    CHECK(v0.begin()->second == 1);
    CHECK(v0.begin()->first == VKey{0, 0, 0, 0});

    auto v1 = decompositions({1, 1, 1});
    long total = 0;
    for (auto& [k, c] : v1) total += c;
    CHECK(total == 2); // only (0, t) and (t, 0)

    // totals match an independent naive triple loop
    std::mt19937 rng(4242);
    for (int iter = 0; iter < 20; ++iter) {
        long a = 1 + (long)(rng() % 4);
        long c = a + (long)(rng() % 4);
        long b = (long)(rng() % (a + 1));
        BQF t{a, b, c};
        long naive = 0;
        for (long a1 = 0; a1 <= t.a; ++a1)
            for (long c1 = 0; c1 <= t.c; ++c1)
                for (long b1 = -2 * t.a - 2 * t.c - 2; b1 <= 2 * t.a + 2 * t.c + 2; ++b1) {
                    BQF t1{a1, b1, c1}, t2{t.a - a1, t.b - b1, t.c - c1};
                    if (is_psd(t1) && is_psd(t2)) ++naive;
                }
        long agg = 0;
        for (auto& [k, cnt] : decompositions(t)) agg += cnt;
        CHECK(agg == naive);
    }

    // sum for [2, 0, 2]
    long agg = 0;
    for (auto& [k, cnt] : decompositions({2, 0, 2})) agg += cnt;
    long naive = 0;
    for (long a1 = 0; a1 <= 2; ++a1)
        for (long c1 = 0; c1 <= 2; ++c1)
            for (long b1 = -10; b1 <= 10; ++b1) {
                BQF t1{a1, b1, c1}, t2{2 - a1, -b1, 2 - c1};
                if (is_psd(t1) && is_psd(t2)) ++naive;
            }
    CHECK(agg == naive);
}

TEST_CASE("reduced form enumeration ordering") {
    auto forms = reduced_forms_up_to(20, 3);
    // singular block first
    CHECK(forms[0] == BQF{0, 0, 0});
    CHECK(forms[1] == BQF{0, 0, 1});
    long prev = 0;
    for (auto& t : forms) {
        CHECK(is_reduced(t));
        CHECK(det_key(t) >= prev);
        prev = det_key(t);
        CHECK(det_key(t) <= 20);
    }
    // contains [1,1,1] (disc 3) and [1,0,1] (disc 4)
    bool has111 = false, has101 = false;
    for (auto& t : forms) {
        if (t == BQF{1, 1, 1}) has111 = true;
        if (t == BQF{1, 0, 1}) has101 = true;
    }
    CHECK(has111);
    CHECK(has101);
}
