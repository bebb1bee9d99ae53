#include "smf2/lseries.hpp"
#include "smf2/arith.hpp"
#include "smf2/binquad.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace smf2 {

namespace {

// K_{n+1/2}(x) = sqrt(pi/(2x)) e^{-x} sum_{j=0}^{n} (n+j)! / (j! (n-j)!) (2x)^{-j}
Real bessel_K_half(long n, const Real& x, mpfr_prec_t wp) {
    Real sum(0L, wp);
    Rat coef = 1;
    Real inv2x = Real(1L, wp) / (Real(2L, wp) * x);
    Real pw(1L, wp);
    for (long j = 0; j <= n; ++j) {
        sum = sum + Real(coef, wp) * pw;
        coef *= Rat((n + j + 1) * (n - j));
        coef /= Rat(j + 1);
        pw = pw * inv2x;
    }
    Real pref = real_sqrt(real_pi(wp) / (Real(2L, wp) * x));
    return pref * real_exp(-x) * sum;
}

// ascending series for K_0, K_1 (caller supplies cancellation guard bits)
void bessel_K01_series(const Real& x, mpfr_prec_t wp, Real& K0, Real& K1) {
    Real x2_4 = x * x / Real(4L, wp);
    Real gamma(0L, wp);
    mpfr_const_euler(gamma.get(), MPFR_RNDN);
    Real c = real_log(x / Real(2L, wp)) + gamma;

    Real I0(1L, wp), I1sum(1L, wp), S0(0L, wp), S1(1L, wp); // S1 m=0 term: H_0+H_1 = 1
    Real term(1L, wp);  // (x^2/4)^m / (m!)^2
    Real term1(1L, wp); // (x^2/4)^m / (m! (m+1)!)
    Real H(0L, wp);
    Real eps = real_2pow(-(long)wp + 4, wp);
    for (long m = 1; m < 1000000; ++m) {
        term = term * x2_4 / Real(m * m, wp);
        term1 = term1 * x2_4 / Real(m * (m + 1), wp);
        H = H + Real(1L, wp) / Real(m, wp);
        Real Hm1 = H + Real(1L, wp) / Real(m + 1, wp);
        I0 = I0 + term;
        S0 = S0 + term * H;
        I1sum = I1sum + term1;
        S1 = S1 + term1 * (H + Hm1);
        if (term < eps * I0 && term1 < eps * I1sum) break;
    }
    Real I1 = I1sum * x / Real(2L, wp);
    K0 = S0 - c * I0;
    K1 = Real(1L, wp) / x + c * I1 - x / Real(4L, wp) * S1;
}

Real bessel_K_recurrence(long nu, const Real& x, mpfr_prec_t wp) {
    // the K0/K1 series cancels about x*log2(e) bits; also guard for the
    // recurrence growth
    double xd = mpfr_get_d(x.get(), MPFR_RNDN);
    mpfr_prec_t swp = wp + (mpfr_prec_t)(1.45 * std::max(0.0, xd)) + 64;
    Real xs(0L, swp);
    mpfr_set(xs.get(), x.get(), MPFR_RNDN);
    Real K0(0L, swp), K1(0L, swp);
    bessel_K01_series(xs, swp, K0, K1);
    if (nu == 0) return K0;
    Real prev = K0, cur = K1;
    for (long m = 1; m < nu; ++m) {
        Real next = prev + Real(2 * m, swp) / xs * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

struct QuadResult {
    Real value;
    Real err;
};

// trapezoid for int_0^inf f with f even in t and decaying like
// exp(-c e^t): the even extension makes the trapezoid spectrally accurate
QuadResult integrate_even_decaying(const std::function<Real(const Real&)>& f, long bits,
                                   mpfr_prec_t wp) {
    Real f0 = f(Real(0L, wp));
    Real scale = real_abs(f0) + real_2pow(-(long)wp, wp);
    Real tol = scale * real_2pow(-(bits + 8), wp);
    // cutoff
    Real U(1L, wp);
    for (int i = 0; i < 1000; ++i) {
        Real v = real_abs(f(U));
        if (v > scale) scale = v;
        if (v < tol) break;
        U = U + Real(1L, wp);
    }
    tol = scale * real_2pow(-(bits + 8), wp);
    long nsub = 8;
    Real h = U / Real(nsub, wp);
    Real acc = (f0 + f(U)) / Real(2L, wp);
    for (long i = 1; i < nsub; ++i) acc = acc + f(Real(i, wp) * h);
    Real I = acc * h;
    Real err = real_abs(I) + Real(1L, wp);
    for (int round = 0; round < 30; ++round) {
        Real mid(0L, wp);
        for (long i = 0; i < nsub; ++i)
            mid = mid + f((Real(i, wp) + Real(Rat(1, 2), wp)) * h);
        Real I2 = (I + h * mid) / Real(2L, wp);
        nsub *= 2;
        h = U / Real(nsub, wp);
        err = real_abs(I2 - I);
        I = I2;
        if (err < tol) break;
    }
    return {I, err * Real(2L, wp) + tol};
}

// int_a^inf f(u) du via the exp-sinh transform u = a + exp((pi/2) sinh w);
// f positive, eventually exponentially decaying. Error estimate from grid
// halving, doubled.
QuadResult integrate_expsinh(const std::function<Real(const Real&)>& f, const Real& a,
                             long bits, mpfr_prec_t wp) {
    Real pi_half = real_pi(wp) / Real(2L, wp);
    auto h_of = [&](const Real& w) {
        Real sh(0L, wp), ch(0L, wp);
        mpfr_sinh_cosh(sh.get(), ch.get(), w.get(), MPFR_RNDN);
        Real t = real_exp(pi_half * sh);
        Real val = f(a + t);
        return val * t * pi_half * ch;
    };
    // scale from a few probes
    Real scale(0L, wp);
    for (double wd : {-1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0}) {
        Real v = real_abs(h_of(Real(wd, wp)));
        if (v > scale) scale = v;
    }
    if (scale.sign() == 0) scale = real_2pow(-(long)wp / 2, wp);
    Real tol = scale * real_2pow(-(bits + 8), wp);
    // cutoffs: march outward until negligible
    Real Wneg(1L, wp), Wpos(1L, wp);
    {
        Real step(Rat(1, 4), wp);
        while (real_abs(h_of(-Wneg)) > tol && Wneg < Real(8L, wp)) Wneg = Wneg + step;
        while (real_abs(h_of(Wpos)) > tol && Wpos < Real(8L, wp)) Wpos = Wpos + step;
        Wneg = Wneg + Real(Rat(1, 2), wp);
        Wpos = Wpos + Real(Rat(1, 2), wp);
    }
    long nsub = 16;
    Real span = Wpos + Wneg;
    Real h = span / Real(nsub, wp);
    Real acc = (h_of(-Wneg) + h_of(Wpos)) / Real(2L, wp);
    for (long i = 1; i < nsub; ++i) acc = acc + h_of(-Wneg + Real(i, wp) * h);
    Real I = acc * h;
    Real err = real_abs(I) + Real(1L, wp);
    for (int round = 0; round < 24; ++round) {
        Real mid(0L, wp);
        for (long i = 0; i < nsub; ++i)
            mid = mid + h_of(-Wneg + (Real(i, wp) + Real(Rat(1, 2), wp)) * h);
        Real I2 = (I + h * mid) / Real(2L, wp);
        nsub *= 2;
        h = span / Real(nsub, wp);
        err = real_abs(I2 - I);
        I = I2;
        if (err < tol * span) break;
    }
    return {I, err * Real(2L, wp) + tol};
}

} // namespace

Real bessel_K_integral(long two_nu, const Real& x, long bits) {
    if (x.sign() <= 0) throw std::domain_error("bessel_K: x > 0 required");
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    Real nu = Real(two_nu, wp) / Real(2L, wp);
    Real xs(0L, wp);
    mpfr_set(xs.get(), x.get(), MPFR_RNDN);
    auto f = [&](const Real& t) {
        return real_exp(-(xs * real_cosh(t))) * real_cosh(nu * t);
    };
    auto res = integrate_even_decaying(f, bits, wp);
    return res.value;
}

Real bessel_K(long two_nu, const Real& x, long bits, bool self_check) {
    if (two_nu < 0) throw std::domain_error("bessel_K: nonnegative order only");
    if (x.sign() <= 0) throw std::domain_error("bessel_K: x > 0 required");
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 48);
    Real v(0L, wp);
    if (two_nu % 2 == 1) {
        v = bessel_K_half((two_nu - 1) / 2, x, wp);
    } else {
        v = bessel_K_recurrence(two_nu / 2, x, wp);
    }
    if (self_check) {
        long cb = std::min<long>(bits, 48);
        Real w = bessel_K_integral(two_nu, x, cb);
        Real rel = real_abs(v - w) / real_abs(v);
        if (!(rel < real_2pow(-(cb - 16), wp)))
            throw std::logic_error("bessel_K: dual-path self-check failed");
    }
    return v;
}

namespace {

bool is_nonpositive_integer(const Rat& s) {
    return s.get_den() == 1 && s.get_num() <= 0;
}

// prefactor 2 (2 pi / |D|)^{2-k+2s} / (Gamma(s) Gamma(s-k+2)); zero when a
// Gamma pole is hit
Real kernel_prefactor(long k, long D, const Rat& s, mpfr_prec_t wp) {
    if (is_nonpositive_integer(s) || is_nonpositive_integer(s - Rat(k) + 2))
        return Real(0L, wp);
    Real pi = real_pi(wp);
    Real base = Real(2L, wp) * pi / Real(std::abs(D), wp);
    Rat expo = Rat(2 - k) + 2 * s;
    Real power = real_pow(base, Real(expo, wp));
    Real gs = real_gamma(Real(s, wp));
    Real gs2 = real_gamma(Real(s - Rat(k) + 2, wp));
    return Real(2L, wp) * power / (gs * gs2);
}

bool is_central(long k, const Rat& s) { return s == Rat(k - 1); }

// central closed form: the two integrand exponents collapse to (y/n)^{k/2-1}
// and d/dt [t^{nu+1} K_{nu+1}(ct)] = -c t^{nu+1} K_nu(ct) gives
//   g_D(n) = 2 (2pi/|D|)^k (|D|/pi) n^{(1-k)/2} K_{k-1}(4 pi sqrt n/|D|)/Gamma(k-1)
Real g_central(long n, long k, long D, long bits) {
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    Real pi = real_pi(wp);
    Real aD(std::abs(D), wp);
    Real arg = Real(4L, wp) * pi * real_sqrt(Real(n, wp)) / aD;
    Real K = bessel_K(2 * (k - 1), arg, bits + 16);
    Real pref = Real(2L, wp) * real_pow_si(Real(2L, wp) * pi / aD, k) * (aD / pi);
    Real npow = real_pow(Real(n, wp), Real(Rat(1 - k, 2), wp));
    return pref * npow * K / real_gamma(Real(k - 1, wp));
}

Rat rat_floor(const Rat& s) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return Rat(q);
}
Rat rat_ceil(const Rat& s) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), s.get_num().get_mpz_t(), s.get_den().get_mpz_t());
    return Rat(q);
}

// int_n^inf K_{k-2}(4 pi sqrt y/|D|) ((y/n)^{e1} + (y/n)^{e2}) dy, rounded up
Real kernel_integral_quad(long n, long k, long D, const Rat& e1, const Rat& e2, long bits) {
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    Real pi = real_pi(wp);
    Real c = Real(4L, wp) * pi / Real(std::abs(D), wp);
    Real nn(n, wp);
    Real ee1(e1, wp), ee2(e2, wp);
    auto f = [&](const Real& y) {
        Real K = bessel_K(2 * (k - 2), c * real_sqrt(y), bits + 16, false);
        Real y_over_n = y / nn;
        return K * (real_pow(y_over_n, ee1) + real_pow(y_over_n, ee2));
    };
    auto res = integrate_expsinh(f, nn, bits, wp);
    return res.value + res.err;
}

} // namespace

Real g_kernel_quadrature(long n, long k, long D, const Rat& s, long bits) {
    if (n < 1 || D >= 0) throw std::domain_error("g_kernel arguments");
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    Rat e1 = Rat(3 * k, 2) - 2 - s;
    Rat e2 = s - Rat(k, 2);
    Real pref = kernel_prefactor(k, D, s, wp);
    if (pref.sign() == 0) return Real(0L, wp);
    Real npow = real_pow(Real(n, wp), Real(Rat(-k, 2), wp));
    return pref * npow * kernel_integral_quad(n, k, D, e1, e2, bits);
}

Real g_kernel(long n, long k, long D, const Rat& s, long bits) {
    if (n < 1 || D >= 0) throw std::domain_error("g_kernel arguments");
    if (is_central(k, s)) return g_central(n, k, D, bits);
    return g_kernel_quadrature(n, k, D, s, bits);
}

Real g_tilde(long n, long k, long D, const Rat& s, long bits) {
    if (n < 1 || D >= 0) throw std::domain_error("g_tilde arguments");
    if (is_central(k, s)) return g_central(n, k, D, bits);
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    Rat e1 = Rat(3 * k, 2) - 2 - rat_floor(s);
    Rat e2 = rat_ceil(s) - Rat(k, 2);
    Real pref = kernel_prefactor(k, D, s, wp);
    if (pref.sign() == 0) return Real(0L, wp);
    Real npow = real_pow(Real(n, wp), Real(Rat(-k, 2), wp));
    return pref * npow * kernel_integral_quad(n, k, D, e1, e2, bits);
}

Real z_truncated(const std::map<long, Real>& lambda, long k, long D, const Rat& s,
                 long P, long N, long bits) {
    if (!is_fundamental_disc(D)) throw std::domain_error("z_truncated: fundamental D < 0 only");
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    std::vector<bool> smooth((size_t)N + 1, true);
    for (long q = 2; q <= N; ++q) {
        if (!is_prime(q) || q < P) continue;
        for (long t = q; t <= N; t += q) smooth[(size_t)t] = false;
    }
    Real acc(0L, wp);
    for (long n = 1; n <= N; ++n) {
        if (!smooth[(size_t)n]) continue;
        int chi = kronecker(D, n);
        if (chi == 0) continue;
        auto it = lambda.find(n);
        if (it == lambda.end()) throw std::runtime_error("z_truncated: missing lambda entry");
        Real term = g_kernel(n, k, D, s, bits) * it->second;
        acc = (chi > 0) ? acc + term : acc - term;
    }
    return acc;
}

Real eta_bound(const std::vector<Real>& lambda_abs, long k, long N, long P, long D,
               const Rat& s, long bits) {
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    const Rat& sigma = s;
    Real total(0L, wp);

    // prime tail: 4 p^{k-3/2} |lambda(nu)| g~_D(nu p), N > p > P, nu <= N/p
    auto primes = primes_up_to(N - 1);
    for (long p : primes) {
        if (p <= P) continue;
        long numax = N / p;
        if (numax < 1) continue;
        if ((long)lambda_abs.size() < numax)
            throw std::domain_error("eta_bound: not enough |lambda| values");
        Real pk = real_pow(Real(p, wp), Real(Rat(2 * k - 3, 2), wp));
        for (long nu = 1; nu <= numax; ++nu) {
            Real gt = g_tilde(nu * p, k, D, s, bits);
            total = total + Real(4L, wp) * pk * lambda_abs[(size_t)(nu - 1)] * gt;
        }
    }

    // indicator-gated tail integrals
    Real pref = kernel_prefactor(k, D, s, wp);
    if (pref.sign() != 0) {
        Real pi = real_pi(wp);
        Real c = Real(4L, wp) * pi / Real(std::abs(D), wp);
        Real NN(N, wp);
        auto KK = [&](const Real& y) {
            return bessel_K(2 * (k - 2), c * real_sqrt(y), bits + 16, false);
        };
        long ind12 = 0;
        if (sigma > Rat(k) - Rat(5, 2)) ++ind12;
        if (sigma < Rat(k) + Rat(1, 2)) ++ind12;
        if (ind12 > 0) {
            auto f = [&](const Real& y) {
                return KK(y) * real_pow(y, Real(Rat(k + 1, 2), wp)) * (y - NN);
            };
            auto res = integrate_expsinh(f, Real(N + 1, wp), bits, wp);
            total = total + Real(ind12, wp) * pref * (res.value + res.err);
        }
        if (sigma <= Rat(k) - Rat(5, 2)) {
            Rat fl = rat_floor(sigma);
            auto f = [&](const Real& y) {
                Real ym1 = y - Real(1L, wp);
                return KK(y) * real_pow(ym1 / y, Real(fl, wp)) *
                       real_pow(ym1, Real(Rat(-2 * k + 5, 2), wp)) *
                       real_pow(y, Real(Rat(3 * k, 2) - 2, wp)) * (y - NN);
            };
            auto res = integrate_expsinh(f, Real(N + 1, wp), bits, wp);
            total = total + pref * (res.value + res.err);
        }
        if (sigma >= Rat(k) + Rat(1, 2)) {
            Rat ce = rat_ceil(sigma);
            auto f = [&](const Real& y) {
                Real ym1 = y - Real(1L, wp);
                return KK(y) * real_pow(y / ym1, Real(ce, wp)) *
                       real_pow(ym1, Real(k + 1, wp)) *
                       real_pow(y, Real(Rat(-k + 1, 2), wp)) * (y - NN);
            };
            auto res = integrate_expsinh(f, Real(N + 1, wp), bits, wp);
            total = total + pref * (res.value + res.err);
        }
    }
    return total;
}

Real eta_tilde_raw(const Real& z1, const Real& z2) { return real_abs(z1 - z2); }

NFElem b_factor(const EigenformHandle& f, long D) {
    auto reps = class_reps(D);
    NFElem acc = NFElem::from_rat(f.field, rat(0));
    for (const BQF& t : reps) {
        NFElem a = f.a_coeff(t);
        if (a.is_zero()) continue;
        acc = acc + Rat(1, aut_order(t)) * a;
    }
    return acc * acc;
}

Real b_factor_embedded(const EigenformHandle& f, long D, size_t embedding, long bits) {
    NFElem B = b_factor(f, D);
    if (f.constituent.degree() == 1) {
        Rat q;
        B.is_rational(&q);
        return Real(q, (mpfr_prec_t)bits);
    }
    auto rep = nf_real_embeddings(B, bits);
    if (embedding >= rep.values.size()) throw std::domain_error("b_factor embedding index");
    return rep.values[embedding];
}

CPrimeResult c_prime_interval(const Real& ztrunc, const Real& B, const Real& beta) {
    CPrimeResult out;
    if (B.sign() == 0) {
        out.skipped = true;
        return out;
    }
    out.c_prime = ztrunc / B;
    Real radius = real_abs(beta / B);
    out.interval = {out.c_prime - radius, out.c_prime + radius};
    return out;
}

IntersectResult intersect_intervals(const std::vector<Interval>& list) {
    if (list.empty()) throw std::domain_error("intersect_intervals: empty list");
    IntersectResult out;
    Real lo = list[0].lo, hi = list[0].hi;
    for (const auto& iv : list) {
        lo = real_max(lo, iv.lo);
        hi = real_min(hi, iv.hi);
    }
    out.nonempty = (lo <= hi);
    out.common = {lo, hi};
    return out;
}

std::map<std::string, long> default_kappa_table() {
    return {{"20", 180},  {"22", 90}, {"24a", 70}, {"24b", 45}, {"26a", 400},
            {"26b", 220}, {"28", 90}, {"30", 150}, {"32", 120}, {"34", 2300},
            {"36", 85},   {"38", 400}};
}

std::map<std::string, long> load_kappa_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open kappa table: " + path);
    std::map<std::string, long> table;
    std::string label;
    long value;
    while (in >> label >> value) table[label] = value;
    return table;
}

} // namespace smf2
