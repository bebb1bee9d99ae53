#include "smf2/arith.hpp"

#include <mutex>
#include <cmath>

namespace smf2 {

// --- Bernoulli numbers ------------------------------------------------

namespace {
std::vector<Rat> g_bernoulli = {rat(1)};
std::mutex g_bernoulli_mu;
}

Rat bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lk(g_bernoulli_mu);
    while (g_bernoulli.size() <= n) {
        unsigned m = (unsigned)g_bernoulli.size();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0  =>  B_m
        Rat acc = 0;
        Int binom = 1; // C(m+1, 0)
        for (unsigned j = 0; j < m; ++j) {
            acc += Rat(binom) * g_bernoulli[j];
            // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
            binom *= (long)(m + 1 - j);
            binom /= (long)(j + 1);
        }
        // binom == C(m+1, m) now
        Rat bm = -acc / Rat(binom);
        g_bernoulli.push_back(bm);
    }
    return g_bernoulli[n];
}

Rat bernoulli_poly(unsigned n, const Rat& x) {
    // B_n(x) = sum_j C(n, j) B_j x^{n-j}
    Rat acc = 0;
    Int binom = 1;
    Rat xp = rat_pow(x, n);
    // iterate j = 0..n, maintaining x^{n-j}
    for (unsigned j = 0; j <= n; ++j) {
        acc += Rat(binom) * bernoulli(j) * xp;
        if (j < n) {
            binom *= (long)(n - j);
            binom /= (long)(j + 1);
            if (x == 0) {
                xp = (j + 1 == n) ? rat(1) : rat(0);
            } else {
                xp /= x;
            }
        }
    }
    return acc;
}

// --- Kronecker symbol -------------------------------------------------

int kronecker(const Int& D, const Int& n) {
    return mpz_kronecker(D.get_mpz_t(), n.get_mpz_t());
}

// --- primes and multiplicative helpers ---------------------------------

bool is_prime(long n) {
    if (n < 2) return false;
    Int m(n);
    return mpz_probab_prime_p(m.get_mpz_t(), 30) != 0;
}

std::vector<long> primes_up_to(long n) {
    std::vector<long> out;
    if (n < 2) return out;
    std::vector<bool> sieve(n + 1, true);
    for (long p = 2; p <= n; ++p) {
        if (!sieve[p]) continue;
        out.push_back(p);
        for (long q = p * p; q <= n; q += p) sieve[q] = false;
    }
    return out;
}

std::vector<long> divisors(long n) {
    if (n <= 0) throw std::domain_error("divisors of nonpositive");
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int moebius(long n) {
    if (n <= 0) throw std::domain_error("moebius of nonpositive");
    int mu = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            mu = -mu;
        }
    }
    if (n > 1) mu = -mu;
    return mu;
}

Int sigma_pow(long n, unsigned k) {
    Int acc = 0;
    for (long d : divisors(n)) acc += int_pow(Int(d), k);
    return acc;
}

// --- discriminants ------------------------------------------------------

bool is_fundamental_disc(long D) {
    if (D >= 0) return false;
    long r = ((D % 4) + 4) % 4;
    auto squarefree = [](long m) {
        for (long p = 2; p * p <= m; ++p)
            if (m % (p * p) == 0) return false;
        return true;
    };
    if (r == 1) return squarefree(-D);
    if (r == 0) {
        long m = D / 4;
        long mr = ((m % 4) + 4) % 4;
        return (mr == 2 || mr == 3) && squarefree(-m);
    }
    return false;
}

DiscSplit split_discriminant(long D) {
    if (D >= 0 || (((D % 4) + 4) % 4 != 0 && ((D % 4) + 4) % 4 != 1))
        throw std::domain_error("not a negative discriminant");
    long f = 1;
    for (long g = 1; (long)g * g <= -D; ++g) {
        if (D % (g * g) == 0) {
            long d0 = D / (g * g);
            long r = ((d0 % 4) + 4) % 4;
            if (r == 0 || r == 1) f = g;
        }
    }
    // largest g with D/g^2 still a discriminant gives the fundamental part
    while (!is_fundamental_disc(D / (f * f))) {
        // back off: divide f by its largest prime, keeping D/f^2 a discriminant
        bool moved = false;
        for (long p = 2; p <= f; ++p) {
            if (f % p == 0) {
                long fc = f / p;
                long d0 = D / (fc * fc);
                long r = ((d0 % 4) + 4) % 4;
                if (r == 0 || r == 1) { f = fc; moved = true; break; }
            }
        }
        if (!moved) throw std::logic_error("discriminant split failed");
    }
    return {D / (f * f), f};
}

std::vector<long> fundamental_discs_in(long lo, long hi) {
    std::vector<long> out;
    for (long D = hi - 1; D > lo; --D)
        if (is_fundamental_disc(D)) out.push_back(D);
    return out;
}

Factorization factor_integer(const Int& n) {
    Factorization out;
    Int m = abs(n);
    if (m <= 1) return out;
    long bound = 2000000;
    for (long p = 2; (long)p <= bound && Int(p) * p <= m; ++p) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            out.factors.push_back({Int(p), e});
        }
    }
    if (m > 1) {
        if (mpz_probab_prime_p(m.get_mpz_t(), 30)) {
            out.factors.push_back({m, 1});
        } else {
            out.factors.push_back({m, 1});
            out.complete = false;
        }
    }
    return out;
}

uint64_t fnv1a64(const void* data, size_t len) {
    const unsigned char* p = (const unsigned char*)data;
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace smf2
