#ifndef SMF2_POLYFACTOR_HPP
#define SMF2_POLYFACTOR_HPP

#include "smf2/ratpoly.hpp"

namespace smf2 {

struct QFactorization {
    Rat unit; // input = unit * prod factor^mult, factors monic irreducible
    std::vector<std::pair<RatPoly, int>> factors;
};

// Zassenhaus: squarefree split, factor mod a good prime, Hensel lift,
// subset recombination. Input nonzero.
QFactorization factor_over_Q(const RatPoly& p);

bool is_irreducible_over_Q(const RatPoly& p);

} // namespace smf2

#endif
