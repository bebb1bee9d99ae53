#ifndef SMF2_LSERIES_HPP
#define SMF2_LSERIES_HPP

#include "smf2/hecke.hpp"
#include "smf2/real.hpp"
#include <map>
#include <optional>
#include <string>

namespace smf2 {

struct Interval {
    Real lo, hi;
};

// Modified Bessel function of the second kind, order two_nu/2 >= 0.
// Primary path: closed form (half-integer order) or upward recurrence from
// series-evaluated K_0, K_1; self-check against the integral representation
// at reduced precision unless disabled.
Real bessel_K(long two_nu, const Real& x, long bits, bool self_check = true);
// Independent path: int_0^inf exp(-x cosh t) cosh(nu t) dt by trapezoid
// refinement with estimated error and tail, safety factor 2.
Real bessel_K_integral(long two_nu, const Real& x, long bits);

// Kohnen kernel g_D(n) at real s. At the central point s = k-1 the two
// integrand exponents collapse and the integral evaluates to a single
// K_{k-1}; off-center it is done by adaptive quadrature.
Real g_kernel(long n, long k, long D, const Rat& s, long bits);
// companion with floor/ceil exponents (equals g_kernel at integral s = k-1)
Real g_tilde(long n, long k, long D, const Rat& s, long bits);

// quadrature evaluation of g_kernel without the central-point shortcut
// (the closed form's independent check)
Real g_kernel_quadrature(long n, long k, long D, const Rat& s, long bits);

// truncated twisted series: sum over P-smooth n <= N of g_D(n) lambda(n) chi_D(n)
Real z_truncated(const std::map<long, Real>& lambda, long k, long D, const Rat& s,
                 long P, long N, long bits);

// the displayed truncation-error bound; lambda_abs[i] = |lambda(i+1)| for
// i + 1 <= floor(N / (P+1)). All quadratures rounded up, safety factor 2.
Real eta_bound(const std::vector<Real>& lambda_abs, long k, long N, long P, long D,
               const Rat& s, long bits);

// second estimate |Z~(P,N) - Z~(P',N')| (caller multiplies by kappa)
Real eta_tilde_raw(const Real& z1, const Real& z2);

// B_f(D) = (sum over SL2 classes of a_f(t)/|Aut t|)^2, exact in the field
NFElem b_factor(const EigenformHandle& f, long D);
Real b_factor_embedded(const EigenformHandle& f, long D, size_t embedding, long bits);

struct CPrimeResult {
    bool skipped = false; // B_f(D) = 0
    Real c_prime;
    Interval interval;
};
CPrimeResult c_prime_interval(const Real& ztrunc, const Real& B, const Real& beta);

struct IntersectResult {
    bool nonempty = false;
    Interval common;
};
IntersectResult intersect_intervals(const std::vector<Interval>& list);

// correction factors (Table-4 style labels: "20", "24a", ...)
std::map<std::string, long> default_kappa_table();
std::map<std::string, long> load_kappa_table(const std::string& path);

} // namespace smf2

#endif
