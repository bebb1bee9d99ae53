#ifndef SMF2_ARITH_HPP
#define SMF2_ARITH_HPP

#include "smf2/rational.hpp"
#include <vector>
#include <cstdint>

namespace smf2 {

// n-th Bernoulli number, convention B_1 = -1/2.
Rat bernoulli(unsigned n);

// Bernoulli polynomial B_n(x), exact.
Rat bernoulli_poly(unsigned n, const Rat& x);

// Kronecker symbol (D/n), completely multiplicative in n.
int kronecker(const Int& D, const Int& n);
inline int kronecker(long D, long n) { return kronecker(Int(D), Int(n)); }

bool is_prime(long n);
std::vector<long> primes_up_to(long n);
std::vector<long> divisors(long n);
int moebius(long n);
Int sigma_pow(long n, unsigned k); // sum of k-th powers of divisors

// D < 0 with D = D0 * f^2, D0 a fundamental discriminant.
struct DiscSplit {
    long fundamental;
    long conductor;
};
DiscSplit split_discriminant(long D);
bool is_fundamental_disc(long D);
std::vector<long> fundamental_discs_in(long lo, long hi); // lo < D < hi, D < 0

// Trial-division factorization (n fits the smooth numbers this project
// meets; leftover cofactor is reported with exponent 1 and flagged).
struct Factorization {
    std::vector<std::pair<Int, int>> factors;
    bool complete = true;
};
Factorization factor_integer(const Int& n);

uint64_t fnv1a64(const void* data, size_t len);

} // namespace smf2

#endif
