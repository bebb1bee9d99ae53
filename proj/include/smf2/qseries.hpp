#ifndef SMF2_QSERIES_HPP
#define SMF2_QSERIES_HPP

#include "smf2/rational.hpp"
#include "smf2/qmatrix.hpp"
#include <vector>

namespace smf2 {

// Truncated q-expansion with explicit precision: coefficients valid for
// exponents 0..prec-1. Reads beyond prec throw (never silently zero);
// arithmetic carries prec = min of the operands.
struct QSeries {
    long weight = 0;
    size_t prec = 0;
    std::vector<Rat> a;

    QSeries() = default;
    QSeries(long w, size_t p) : weight(w), prec(p), a(p, rat(0)) {}

    const Rat& coeff(size_t n) const;
    Rat& coeff_mut(size_t n);
    QSeries truncated(size_t new_prec) const;
    bool is_zero() const;
};

QSeries operator+(const QSeries& x, const QSeries& y);
QSeries operator-(const QSeries& x, const QSeries& y);
QSeries operator*(const QSeries& x, const QSeries& y);
QSeries operator*(const Rat& s, const QSeries& x);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k >= 4 even
QSeries eisenstein(long k, size_t prec);
// Delta = (E4^3 - E6^2)/1728
QSeries delta(size_t prec);

long dim_M(long k);
long dim_S(long k);

// Echelonized basis of M_k with identity leading coefficient block.
std::vector<QSeries> victor_miller_basis(long k, size_t prec);
// Tail of the above: f_{k,1}, ..., f_{k,dim S_k}.
std::vector<QSeries> victor_miller_cusp_basis(long k, size_t prec);

// Matrix of T_p on the cuspidal Victor-Miller basis, b(n) = a(pn) + p^{k-1} a(n/p).
QMatrix elliptic_hecke_matrix(long k, long p);

// T_p applied to one series.
QSeries hecke_Tp_elliptic(const QSeries& f, long p);

} // namespace smf2

#endif
