#ifndef SMF2_BINQUAD_HPP
#define SMF2_BINQUAD_HPP

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace smf2 {

// Binary quadratic form a x^2 + b xy + c y^2, i.e. the half-integral matrix
// [a, b/2; b/2, c]. Storage normal form (GL2(Z)): 0 <= b <= a <= c, with
// rank-1 forms stored as [0, 0, n] and the zero form as [0, 0, 0].
struct BQF {
    long a = 0, b = 0, c = 0;
    bool operator==(const BQF& o) const { return a == o.a && b == o.b && c == o.c; }
};

struct BQFHash {
    size_t operator()(const BQF& t) const {
        uint64_t h = (uint64_t)t.a * 0x9e3779b97f4a7c15ull;
        h ^= (uint64_t)(t.b + (1ll << 40)) + (h << 6) + (h >> 2);
        h ^= (uint64_t)t.c * 0xc2b2ae3d27d4eb4full + (h << 16);
        return (size_t)h;
    }
};

inline long det_key(const BQF& t) { return 4 * t.a * t.c - t.b * t.b; } // = 4 det T
long content(const BQF& t); // gcd of (a, b, c); 0 for the zero form
bool is_psd(const BQF& t);
bool is_reduced(const BQF& t);

struct ReduceResult {
    BQF form;
    std::array<long, 4> U; // [u00, u01, u10, u11], U^tr T U = form, det U = ±1
};
ReduceResult reduce(const BQF& t);
BQF apply_transform(const BQF& t, const std::array<long, 4>& U);

// SL2(Z)-reduced positive definite forms of discriminant D = b^2 - 4ac < 0,
// imprimitive forms included.
std::vector<BQF> class_reps(long D);

int aut_order(const BQF& t); // |SL2(Z) stabilizer| of a definite form: 2, 4 or 6

// Decomposition counts for t1 + t2 = t over PSD half-integral pairs,
// bucketed by (content(t1), 4 det t1, content(t2), 4 det t2).
struct VKey {
    long e1, d1, e2, d2;
    bool operator==(const VKey& o) const {
        return e1 == o.e1 && d1 == o.d1 && e2 == o.e2 && d2 == o.d2;
    }
};
struct VKeyHash {
    size_t operator()(const VKey& k) const {
        uint64_t h = (uint64_t)k.e1;
        h = h * 1000003ull ^ (uint64_t)k.d1;
        h = h * 1000003ull ^ (uint64_t)k.e2;
        h = h * 1000003ull ^ (uint64_t)k.d2;
        return (size_t)h;
    }
};
using VTable = std::unordered_map<VKey, long, VKeyHash>;

VTable decompositions(const BQF& t);

// All reduced PSD forms with det_key <= maxkey; singular block [0,0,n]
// limited to n <= singular_nmax. Sorted by (det_key, a, b, c).
std::vector<BQF> reduced_forms_up_to(long maxkey, long singular_nmax);

} // namespace smf2

#endif
