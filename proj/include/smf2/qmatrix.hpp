#ifndef SMF2_QMATRIX_HPP
#define SMF2_QMATRIX_HPP

#include "smf2/ratpoly.hpp"
#include <vector>
#include <cstdint>

namespace smf2 {

struct QMatrix {
    size_t rows = 0, cols = 0;
    std::vector<Rat> a;

    QMatrix() = default;
    QMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, rat(0)) {}
    Rat& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Rat& at(size_t i, size_t j) const { return a[i * cols + j]; }
    static QMatrix identity(size_t n);
};

QMatrix operator*(const QMatrix& A, const QMatrix& B);
bool operator==(const QMatrix& A, const QMatrix& B);

// Monic characteristic polynomial det(xI - M). Multimodular: Hessenberg
// mod word primes with the prime-set product exceeding twice the coefficient
// bound, then CRT.
RatPoly charpoly(const QMatrix& M);

// Faddeev-LeVerrier in exact rational arithmetic; division-free oracle path.
RatPoly charpoly_fraction_free(const QMatrix& M);

// Naive cofactor-expansion charpoly for n <= 6 (test oracle).
RatPoly charpoly_cofactor(const QMatrix& M);

// Exact rank via fraction-free (Bareiss-style) elimination over Q.
size_t rank_exact(const QMatrix& M);

// Rank mod a word prime (lower bound on the rational rank; throws if a
// denominator vanishes mod p).
size_t rank_mod_p(const QMatrix& M, uint64_t p);

// Solve A x = b over Q (A square nonsingular). Returns false if singular.
bool solve_linear(const QMatrix& A, const std::vector<Rat>& b, std::vector<Rat>& x);

// Nullspace basis of A (cols vectors) over Q.
std::vector<std::vector<Rat>> nullspace(const QMatrix& A);

// Incremental independent-set tracker over GF(p): add vectors, report
// whether each is independent of the span so far. A reported "independent"
// verdict is an exact certificate (a nonzero minor mod p).
class FpSpan {
public:
    explicit FpSpan(uint64_t p) : p_(p) {}
    bool add(std::vector<uint64_t> v); // true if rank increased
    size_t rank() const { return echelon_.size(); }

private:
    uint64_t p_;
    std::vector<std::vector<uint64_t>> echelon_; // rows with distinct pivots
    std::vector<size_t> pivot_;
};

std::vector<uint64_t> reduce_row_mod_p(const std::vector<Rat>& row, uint64_t p);

// primes just under 2^62 for multimodular work
const std::vector<uint64_t>& multimod_primes();

} // namespace smf2

#endif
