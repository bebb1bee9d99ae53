#ifndef SMF2_REAL_HPP
#define SMF2_REAL_HPP

#include "smf2/rational.hpp"
#include <mpfr.h>
#include <string>
#include <utility>

namespace smf2 {

// Arbitrary-precision real backed by mpfr. Value semantics; the precision
// is fixed per value and explicit at construction (no global state).
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Rat& q, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 2); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    static mpfr_prec_t join(const Real& a, const Real& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    // scientific string with sig_digits significant digits
    std::string str(int sig_digits = 20) const {
        if (!is_finite()) return "nan";
        if (mpfr_zero_p(v_)) return "0";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, (size_t)sig_digits, v_, MPFR_RNDN);
        std::string digits(s);
        mpfr_free_str(s);
        std::string sign;
        if (digits[0] == '-') { sign = "-"; digits = digits.substr(1); }
        std::string mant = digits.substr(0, 1) + "." + digits.substr(1);
        return sign + mant + "e" + std::to_string((long)(e - 1));
    }

    friend Real operator+(const Real& a, const Real& b) { Real r(join(a, b)); mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator-(const Real& a, const Real& b) { Real r(join(a, b)); mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator*(const Real& a, const Real& b) { Real r(join(a, b)); mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, const Real& b) { Real r(join(a, b)); mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r; }
    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

private:
    mpfr_t v_;
};

inline Real real_abs(const Real& a) { Real r(a.prec()); mpfr_abs(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_exp(const Real& a) { Real r(a.prec()); mpfr_exp(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_log(const Real& a) { Real r(a.prec()); mpfr_log(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_sqrt(const Real& a) { Real r(a.prec()); mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_cosh(const Real& a) { Real r(a.prec()); mpfr_cosh(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_pow_si(const Real& a, long e) { Real r(a.prec()); mpfr_pow_si(r.get(), a.get(), e, MPFR_RNDN); return r; }
inline Real real_pow(const Real& a, const Real& b) { Real r(Real::join(a, b)); mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
inline Real real_gamma(const Real& a) { Real r(a.prec()); mpfr_gamma(r.get(), a.get(), MPFR_RNDN); return r; }
inline Real real_pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
inline Real real_2pow(long e, mpfr_prec_t prec) { Real r(prec); mpfr_set_si_2exp(r.get(), 1, e, MPFR_RNDN); return r; }
inline Real real_mul_2exp(const Real& a, long e) { Real r(a.prec()); mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN); return r; }
inline Real real_min(const Real& a, const Real& b) { return a <= b ? a : b; }
inline Real real_max(const Real& a, const Real& b) { return a >= b ? a : b; }

} // namespace smf2

#endif
