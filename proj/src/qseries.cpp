#include "smf2/qseries.hpp"
#include "smf2/arith.hpp"

#include <stdexcept>

namespace smf2 {

const Rat& QSeries::coeff(size_t n) const {
    if (n >= prec) throw std::out_of_range("q-series coefficient beyond precision");
    return a[n];
}

Rat& QSeries::coeff_mut(size_t n) {
    if (n >= prec) throw std::out_of_range("q-series coefficient beyond precision");
    return a[n];
}

QSeries QSeries::truncated(size_t new_prec) const {
    if (new_prec > prec) throw std::out_of_range("cannot extend q-series by truncation");
    QSeries r(weight, new_prec);
    for (size_t i = 0; i < new_prec; ++i) r.a[i] = a[i];
    return r;
}

bool QSeries::is_zero() const {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

QSeries operator+(const QSeries& x, const QSeries& y) {
    QSeries r(x.weight, std::min(x.prec, y.prec));
    for (size_t i = 0; i < r.prec; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

QSeries operator-(const QSeries& x, const QSeries& y) {
    QSeries r(x.weight, std::min(x.prec, y.prec));
    for (size_t i = 0; i < r.prec; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

QSeries operator*(const QSeries& x, const QSeries& y) {
    QSeries r(x.weight + y.weight, std::min(x.prec, y.prec));
    for (size_t i = 0; i < r.prec && i < x.prec; ++i) {
        if (x.a[i] == 0) continue;
        for (size_t j = 0; i + j < r.prec && j < y.prec; ++j) {
            if (y.a[j] == 0) continue;
            r.a[i + j] += x.a[i] * y.a[j];
        }
    }
    return r;
}

QSeries operator*(const Rat& s, const QSeries& x) {
    QSeries r = x;
    for (auto& v : r.a) v *= s;
    return r;
}

QSeries eisenstein(long k, size_t prec) {
    if (k < 4 || k % 2 != 0) throw std::domain_error("eisenstein: k must be even >= 4");
    QSeries e(k, prec);
    e.a[0] = 1;
    Rat factor = rat(-2) * rat(k) / bernoulli((unsigned)k);
    for (size_t n = 1; n < prec; ++n) e.a[n] = factor * Rat(sigma_pow((long)n, (unsigned)(k - 1)));
    return e;
}

QSeries delta(size_t prec) {
    QSeries e4 = eisenstein(4, prec);
    QSeries e6 = eisenstein(6, prec);
    QSeries d = e4 * e4 * e4 - e6 * e6;
    d.weight = 12;
    return rat(1, 1728) * d;
}

long dim_M(long k) {
    if (k < 0 || k % 2 != 0) return 0;
    // monomials E4^a E6^b with 4a + 6b = k
    long count = 0;
    for (long b = 0; 6 * b <= k; ++b)
        if ((k - 6 * b) % 4 == 0) ++count;
    return count;
}

long dim_S(long k) {
    if (k < 4 || k % 2 != 0) return 0;
    return dim_M(k) - 1;
}

std::vector<QSeries> victor_miller_basis(long k, size_t prec) {
    long d = dim_M(k);
    if (d == 0) return {};
    if ((long)prec < d) throw std::domain_error("victor_miller_basis: prec < dim");
    if (k == 0) {
        QSeries one(0, prec);
        one.a[0] = 1;
        return {one};
    }
    // spanning monomials E4^a E6^b, echelonize
    std::vector<QSeries> gens;
    QSeries e4 = eisenstein(4, prec), e6 = eisenstein(6, prec);
    for (long b = 0; 6 * b <= k; ++b) {
        if ((k - 6 * b) % 4 != 0) continue;
        long a = (k - 6 * b) / 4;
        QSeries m(k, prec);
        m.a[0] = 1;
        for (long i = 0; i < a; ++i) m = m * e4;
        for (long i = 0; i < b; ++i) m = m * e6;
        m.weight = k;
        gens.push_back(m);
    }
    // Gaussian elimination to reduced echelon in the leading d x d block
    size_t rows = gens.size();
    for (size_t col = 0, r = 0; col < (size_t)d && r < rows; ++col) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (gens[i].a[col] != 0) { piv = i; break; }
        if (piv == rows) throw std::logic_error("victor_miller_basis: unexpected rank drop");
        std::swap(gens[r], gens[piv]);
        Rat inv = rat(1) / gens[r].a[col];
        gens[r] = inv * gens[r];
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || gens[i].a[col] == 0) continue;
            Rat f = gens[i].a[col];
            gens[i] = gens[i] - f * gens[r];
        }
        ++r;
    }
    gens.resize(d);
    return gens;
}

std::vector<QSeries> victor_miller_cusp_basis(long k, size_t prec) {
    auto vm = victor_miller_basis(k, prec);
    if (vm.empty()) return {};
    return std::vector<QSeries>(vm.begin() + 1, vm.end());
}

QSeries hecke_Tp_elliptic(const QSeries& f, long p) {
    if (f.prec <= 1) throw std::domain_error("hecke_Tp_elliptic: empty series");
    size_t new_prec = (f.prec - 1) / (size_t)p + 1;
    QSeries r(f.weight, new_prec);
    Int pk1 = int_pow(Int(p), (unsigned long)(f.weight - 1));
    for (size_t n = 0; n < new_prec; ++n) {
        Rat v = f.coeff(n * (size_t)p);
        if (n % (size_t)p == 0) v += Rat(pk1) * f.coeff(n / (size_t)p);
        r.a[n] = v;
    }
    return r;
}

QMatrix elliptic_hecke_matrix(long k, long p) {
    long d = dim_S(k);
    if (d <= 0) return QMatrix(0, 0);
    size_t prec = (size_t)(p * d + 2);
    auto basis = victor_miller_cusp_basis(k, prec);
    QMatrix M(d, d);
    for (long j = 0; j < d; ++j) {
        QSeries t = hecke_Tp_elliptic(basis[j], p);
        // cuspidal VM coordinates read off at q^1..q^d
        for (long i = 0; i < d; ++i) M.at(i, j) = t.coeff((size_t)(i + 1));
    }
    return M;
}

} // namespace smf2
