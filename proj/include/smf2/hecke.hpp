#ifndef SMF2_HECKE_HPP
#define SMF2_HECKE_HPP

#include "smf2/siegel.hpp"
#include "smf2/numberfield.hpp"
#include "smf2/qmatrix.hpp"
#include <map>

namespace smf2 {

// Fourier-coefficient action of T(p) on a degree-2 expansion,
//   b(n,r,m) = a(pn,pr,pm)
//            + p^{k-2} [ sum_{j mod p, p | n+rj+mj^2} a((n+rj+mj^2)/p, r+2jm, pm)
//                        + (p | m) a(pn, r, m/p) ]
//            + p^{2k-3} a(n/p, r/p, m/p),
// non-half-integral arguments contributing 0.
Rat hecke_tp_coeff(SiegelSource& F, long p, const BQF& T);

// Same action through explicit coset enumeration at similitude p^delta
// (delta = 1 reproduces the formula above; delta = 2 is T(p^2)).
Rat hecke_coeff_generic(SiegelSource& F, long p, int delta, const BQF& T);

Rat hecke_tp2_coeff(SiegelSource& F, long p, const BQF& T);

// matrix of T(p) on a product basis via the pivot solve (exact)
QMatrix tp_matrix(const ProductBasis& basis, long p);
QMatrix t2_matrix(const ProductBasis& basis);

struct SplitReport {
    long weight = 0;
    RatPoly full;        // charpoly of T(2) on the whole space
    RatPoly eisenstein;  // x - (1+2^{k-2})(1+2^{k-1})
    RatPoly klingen;     // elliptic S_k charpoly, alpha -> alpha (1+2^{k-2})
    RatPoly maass;       // elliptic S_{2k-2} charpoly, beta -> beta + 2^{k-1} + 2^{k-2}
    RatPoly sprime;      // exact cofactor
    bool sprime_irreducible = false;
    std::vector<RatPoly> sprime_factors;
};
SplitReport split_charpoly(long k);
SplitReport split_charpoly(const ProductBasis& basis, const QMatrix& t2);

struct EigenformHandle {
    long weight = 0;
    RatPoly constituent; // irreducible factor of the S'_k charpoly
    FieldPtr field;      // Q[x]/(constituent)
    std::vector<NFElem> coords; // w.r.t. the basis sources, first nonzero = 1
    size_t norm_index = 0;      // which coordinate was normalized to 1
    std::shared_ptr<ProductBasis> basis;
    std::string tag; // e.g. "24a"

    NFElem a_coeff(const BQF& T) const; // sum coords_l * a_{B_l}(T)
};

std::vector<EigenformHandle> eigenforms(long k);
std::vector<EigenformHandle> eigenforms(std::shared_ptr<ProductBasis> basis,
                                        const QMatrix& t2, const SplitReport& split);

// lambda(p) = b(T0)/a(T0) at T0 = [1,1,1] via the coefficient action
NFElem lambda_via_action(const EigenformHandle& f, long p);
NFElem lambda2_via_action(const EigenformHandle& f, long p);

// Andrianov route: lambda(n) = a(T0)^{-1} sum_{m d = n} u(m) m^{k-2} A(d),
// u(m) = sum_{a b^2 = m} mu(b) r(a), r(a) = sum_{d | a} (-3/d),
// A(d) = sum_{e^2 | d} e^{2k-4} a_f((d/e^2) T0).
NFElem lambda_andrianov(const EigenformHandle& f, long n);

struct SpinorEulerFactor {
    long p = 0;
    long weight = 0;
    NFElem lambda_p, lambda_p2;
    // Q_p(X) = 1 - l X + (l^2 - l2 - p^{2k-4}) X^2 - l p^{2k-3} X^3 + p^{4k-6} X^4
    std::vector<NFElem> q_coeffs() const;
};

// lambda(n) for all P-smooth n <= N: prime data via the actions, prime powers
// via the Euler-factor recursion, composites by multiplicativity. Exact.
std::map<long, NFElem> lambda_table_exact(const EigenformHandle& f, long P, long N);

// table embedded at a chosen real embedding of the coefficient field
std::map<long, Real> lambda_table_embedded(const EigenformHandle& f, long P, long N,
                                           size_t embedding, long bits);

size_t num_real_embeddings(const EigenformHandle& f);

struct CoordinateReport {
    std::string tag;
    std::vector<Rat> coords;
    std::vector<bool> zero_pattern;
    std::vector<std::string> factored; // per coordinate, num/den factorizations
    Int largest_prime = 0;
};
std::vector<CoordinateReport> coordinates_report(long k);

} // namespace smf2

#endif
