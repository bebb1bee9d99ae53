#ifndef SMF2_JACOBI_HPP
#define SMF2_JACOBI_HPP

#include "smf2/qseries.hpp"
#include <memory>
#include <string>
#include <vector>

namespace smf2 {

// Raised when a coefficient past the materialized table depth is requested;
// holders that know the construction recipe catch it and rebuild deeper.
struct ExtendPrecisionError : std::runtime_error {
    long needed;
    explicit ExtendPrecisionError(long D)
        : std::runtime_error("jacobi coefficient beyond table depth"), needed(D) {}
};

// Cohen's function H(r, N). H(r, 0) = zeta(1 - 2r); zero unless
// (-1)^r N = 0, 1 mod 4; otherwise L(1-r, chi_D0) times the divisor sum
// over the conductor square part.
Rat cohen_H(long r, long N);

// Batch table H(r, N) for N = 0..X (shared sieve, per-discriminant L-values).
std::vector<Rat> cohen_H_table(long r, long X);

// coeff * E_{eis,1} * E4^e4 * E6^e6  (eis in {4, 6})
struct JTerm {
    int eis;
    long e4, e6;
    Rat coeff;
};

// Index-1 Jacobi form of even weight, stored by Jacobi discriminant
// D = 4n - r^2 (index-1 coefficients depend only on D). Entries are kept
// for 0 <= D <= Dmax; the recipe allows deepening the table on demand.
struct JacobiIndex1Form {
    long weight = 0;
    long Dmax = -1;
    std::shared_ptr<const std::vector<Rat>> table; // index by D
    enum Kind { COHEN_EIS, COMBO, FIXED } kind = FIXED;
    std::vector<JTerm> recipe; // for COMBO

    // c(D): 0 for D < 0 or D = 1, 2 mod 4; throws ExtendPrecisionError past Dmax
    const Rat& c(long D) const;
    bool extendable() const { return kind != FIXED; }
};

JacobiIndex1Form jacobi_eisenstein(long k, long Dmax);
JacobiIndex1Form build_combo(long weight, std::vector<JTerm> terms, long Dmax);
JacobiIndex1Form extend_to(const JacobiIndex1Form& f, long newDmax);

// Structure basis E_{4,1} * M_{k-4} + E_{6,1} * M_{k-6} (Victor-Miller
// factors), independence verified up to Dmax.
std::vector<JacobiIndex1Form> jacobi_space(long k, long Dmax);

// developments: D0 phi in M_k, D2 phi in S_{k+2}
QSeries dev_D0(const JacobiIndex1Form& phi, size_t prec);
QSeries dev_D2(const JacobiIndex1Form& phi, size_t prec);

// "k|_i" (maps to (f_{k,i}, 0)) and "k|^i" (maps to (0, f_{k+2,i})).
struct JacobiLabel {
    long weight = 0;
    bool upper = false; // false: k|_i, true: k|^i
    long index = 0;
    std::string str() const;
    bool operator==(const JacobiLabel& o) const {
        return weight == o.weight && upper == o.upper && index == o.index;
    }
    bool operator<(const JacobiLabel& o) const {
        if (weight != o.weight) return weight < o.weight;
        if (upper != o.upper) return !upper;
        return index < o.index;
    }
};

struct LabeledJacobiForm {
    JacobiLabel label;
    JacobiIndex1Form form;
};

// All spezialschar labels of weight k: k|_0..k|_{dim M_k - 1}, then
// k|^1..k|^{dim S_{k+2}}.
std::vector<LabeledJacobiForm> spezialschar_labels(long k, long Dmax);

} // namespace smf2

#endif
