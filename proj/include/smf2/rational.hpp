#ifndef SMF2_RATIONAL_HPP
#define SMF2_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace smf2 {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class canonicalizes on construction and after arithmetic, so the
// gcd(num, den) = 1, den >= 1 invariant is maintained by GMP itself.
// rat_assert_canonical exists for the paranoid paths (deserialization).
inline void rat_assert_canonical(const Rat& q) {
    if (mpz_sgn(q.get_den().get_mpz_t()) <= 0)
        throw std::logic_error("rational with nonpositive denominator");
    Int g;
    mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    if (g != 1 && q.get_num() != 0)
        throw std::logic_error("rational not in lowest terms");
}

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_parse(const std::string& s) {
    Rat q;
    if (q.set_str(s, 10) != 0) throw std::runtime_error("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Int int_pow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

inline Rat rat_pow(const Rat& b, long e) {
    if (e >= 0) {
        Rat r;
        mpz_pow_ui(r.get_num().get_mpz_t(), b.get_num().get_mpz_t(), (unsigned long)e);
        mpz_pow_ui(r.get_den().get_mpz_t(), b.get_den().get_mpz_t(), (unsigned long)e);
        return r;
    }
    if (b == 0) throw std::domain_error("0^negative");
    return rat(1) / rat_pow(b, -e);
}

} // namespace smf2

#endif
