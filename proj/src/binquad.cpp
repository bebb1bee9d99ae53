#include "smf2/binquad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace smf2 {

long content(const BQF& t) {
    long g = std::gcd(std::gcd(std::abs(t.a), std::abs(t.b)), std::abs(t.c));
    return g;
}

bool is_psd(const BQF& t) {
    return t.a >= 0 && t.c >= 0 && 4 * t.a * t.c - t.b * t.b >= 0;
}

bool is_reduced(const BQF& t) {
    return 0 <= t.b && t.b <= t.a && t.a <= t.c;
}

namespace {

// right-multiply U by V (2x2, row major)
std::array<long, 4> umul(const std::array<long, 4>& U, const std::array<long, 4>& V) {
    return {U[0] * V[0] + U[1] * V[2], U[0] * V[1] + U[1] * V[3],
            U[2] * V[0] + U[3] * V[2], U[2] * V[1] + U[3] * V[3]};
}

} // namespace

BQF apply_transform(const BQF& t, const std::array<long, 4>& U) {
    // T' = U^tr T U for T = [a, b/2; b/2, c]; columns u = (U[0],U[2]), v = (U[1],U[3])
    long u0 = U[0], u1 = U[2], v0 = U[1], v1 = U[3];
    long a2 = t.a * u0 * u0 + t.b * u0 * u1 + t.c * u1 * u1;
    long c2 = t.a * v0 * v0 + t.b * v0 * v1 + t.c * v1 * v1;
    long b2 = 2 * t.a * u0 * v0 + t.b * (u0 * v1 + u1 * v0) + 2 * t.c * u1 * v1;
    return {a2, b2, c2};
}

ReduceResult reduce(const BQF& t0) {
    if (!is_psd(t0)) throw std::domain_error("reduce: form not positive semidefinite");
    BQF t = t0;
    std::array<long, 4> U = {1, 0, 0, 1};

    if (det_key(t) == 0) {
        // rank <= 1: q = (content) * (alpha x + beta y)^2 / g^2 form; send the
        // kernel direction to the first basis vector, giving [0, 0, n].
        if (t.a == 0 && t.c == 0) {
            // b = 0 forced by PSD
            return {{0, 0, 0}, U};
        }
        long alpha, beta; // primitive vector with q(alpha, beta) = 0
        if (t.a == 0) {
            alpha = 1;
            beta = 0;
        } else {
            // q(x, y) = (2a x + b y)^2 / (4a): kernel (b, -2a)/gcd
            long g = std::gcd(std::abs(t.b), std::abs(2 * t.a));
            alpha = t.b / g;
            beta = -2 * t.a / g;
        }
        // complete (alpha, beta) to a unimodular matrix with first column (alpha, beta)
        long x, y, g;
        // extended euclid: g = alpha*x + beta*y
        {
            long r0 = alpha, r1 = beta;
            long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                long q = r0 / r1;
                long r2 = r0 - q * r1, s2 = s0 - q * s1, t2 = t0 - q * t1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
                t0 = t1; t1 = t2;
            }
            g = r0;
            x = s0;
            y = t0;
            if (g < 0) { g = -g; x = -x; y = -y; }
        }
        if (g != 1) throw std::logic_error("reduce: kernel vector not primitive");
        std::array<long, 4> V = {alpha, -y, beta, x}; // det = alpha*x + beta*y = 1
        BQF r = apply_transform(t, V);
        // r = [0, 0, n] with n = content
        if (r.a != 0 || r.b != 0) throw std::logic_error("reduce: rank-1 normalization failed");
        return {r, V};
    }

    // positive definite: Gauss reduction under GL2 (b kept nonnegative)
    for (int guard = 0; guard < 1024; ++guard) {
        if (t.b < 0) {
            std::array<long, 4> V = {1, 0, 0, -1};
            t = apply_transform(t, V);
            U = umul(U, V);
        }
        if (t.a > t.c) {
            std::array<long, 4> V = {0, 1, 1, 0};
            t = apply_transform(t, V);
            U = umul(U, V);
            continue;
        }
        if (t.b > t.a) {
            // translate: b -> b - 2ka with k = round(b / 2a)
            long k = (t.b + t.a) / (2 * t.a); // floor((b+a)/2a): brings b into (-a, a]
            std::array<long, 4> V = {1, -k, 0, 1};
            t = apply_transform(t, V);
            U = umul(U, V);
            continue;
        }
        if (0 <= t.b && t.b <= t.a && t.a <= t.c) return {t, U};
    }
    throw std::logic_error("reduce: failed to terminate");
}

std::vector<BQF> class_reps(long D) {
    if (D >= 0) throw std::domain_error("class_reps: D must be negative");
    long r = ((D % 4) + 4) % 4;
    if (r != 0 && r != 1) throw std::domain_error("class_reps: D must be 0 or 1 mod 4");
    std::vector<BQF> out;
    for (long a = 1; 3 * a * a <= -D; ++a) {
        for (long b = -a + 1; b <= a; ++b) {
            long num = (long)b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (b < 0 && (a == c || b == -a)) continue; // ambiguous classes once
            // convention: -a < b <= a <= c with b >= 0 if a == c
            if (a == c && b < 0) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end(), [](const BQF& x, const BQF& y) {
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });
    return out;
}

int aut_order(const BQF& t) {
    if (!is_psd(t) || det_key(t) == 0) throw std::domain_error("aut_order: form not definite");
    long g = content(t);
    BQF r = reduce({t.a / g, t.b / g, t.c / g}).form;
    if (r.a == r.b && r.b == r.c) return 6; // ~ [1,1,1] scaled
    if (r.b == 0 && r.a == r.c) return 4;   // ~ [1,0,1] scaled
    return 2;
}

VTable decompositions(const BQF& t) {
    if (!is_reduced(t)) throw std::domain_error("decompositions: form must be reduced");
    VTable table;
    for (long a1 = 0; a1 <= t.a; ++a1) {
        long a2 = t.a - a1;
        for (long c1 = 0; c1 <= t.c; ++c1) {
            long c2 = t.c - c1;
            // PSD windows for b1: b1^2 <= 4 a1 c1 and (b - b1)^2 <= 4 a2 c2
            double w1 = 2.0 * std::sqrt((double)a1 * (double)c1);
            double w2 = 2.0 * std::sqrt((double)a2 * (double)c2);
            long lo = std::max((long)std::ceil(-w1 - 1), t.b - (long)std::floor(w2 + 1));
            long hi = std::min((long)std::floor(w1 + 1), t.b + (long)std::floor(w2 + 1));
            for (long b1 = lo; b1 <= hi; ++b1) {
                if ((long)b1 * b1 > 4 * a1 * c1) continue;
                long b2 = t.b - b1;
                if ((long)b2 * b2 > 4 * a2 * c2) continue;
                BQF t1{a1, b1, c1}, t2{a2, b2, c2};
                VKey key{content(t1), det_key(t1), content(t2), det_key(t2)};
                ++table[key];
            }
        }
    }
    return table;
}

std::vector<BQF> reduced_forms_up_to(long maxkey, long singular_nmax) {
    std::vector<BQF> out;
    for (long n = 0; n <= singular_nmax; ++n) out.push_back({0, 0, n});
    std::vector<BQF> definite;
    for (long a = 1; a * a * 3 <= maxkey + a * a; ++a) { // a <= c and 4ac - b^2 <= maxkey with b <= a: 3a^2 <= maxkey
        if (3 * a * a > maxkey) break;
        for (long b = 0; b <= a; ++b) {
            for (long c = a;; ++c) {
                long key = 4 * a * c - b * b;
                if (key > maxkey) break;
                if (key <= 0) continue;
                definite.push_back({a, b, c});
            }
        }
    }
    std::sort(definite.begin(), definite.end(), [](const BQF& x, const BQF& y) {
        long kx = det_key(x), ky = det_key(y);
        if (kx != ky) return kx < ky;
        if (x.a != y.a) return x.a < y.a;
        if (x.b != y.b) return x.b < y.b;
        return x.c < y.c;
    });
    out.insert(out.end(), definite.begin(), definite.end());
    return out;
}

} // namespace smf2
