#ifndef SMF2_NUMBERFIELD_HPP
#define SMF2_NUMBERFIELD_HPP

#include "smf2/ratpoly.hpp"
#include "smf2/real.hpp"
#include <memory>
#include <vector>

namespace smf2 {

// Q[x]/(m), m monic irreducible.
struct NumberField {
    RatPoly modulus;
    explicit NumberField(RatPoly m) : modulus(std::move(m)) {}
    int degree() const { return modulus.degree(); }
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr rational_field(); // Q itself, modulus x - 0 ... degree 1 (x)

struct NFElem {
    FieldPtr F;
    std::vector<Rat> c; // length deg(m), coefficient of x^i

    NFElem() = default;
    NFElem(FieldPtr f, std::vector<Rat> cc);
    static NFElem from_rat(FieldPtr f, const Rat& q);
    static NFElem generator(FieldPtr f); // class of x

    bool is_zero() const;
    bool is_rational(Rat* out = nullptr) const;
    std::string str() const;
};

NFElem operator+(const NFElem& a, const NFElem& b);
NFElem operator-(const NFElem& a, const NFElem& b);
NFElem operator*(const NFElem& a, const NFElem& b);
NFElem operator*(const Rat& s, const NFElem& a);
NFElem nf_inverse(const NFElem& a);
NFElem operator/(const NFElem& a, const NFElem& b);
bool operator==(const NFElem& a, const NFElem& b);

// Real root isolation for a squarefree rational polynomial (Sturm + bisection).
// Each root is returned as an mpfr enclosure midpoint accurate to 2^(4-bits),
// together with exact dyadic bracketing endpoints.
struct RealRoot {
    Real approx;
    Rat lo, hi; // exact bracket with sign change, p(lo)*p(hi) < 0 or root hit exactly
};
std::vector<RealRoot> real_roots(const RatPoly& p, long bits);

// Count of real roots (Sturm over the whole line).
int count_real_roots(const RatPoly& p);

struct EmbeddingReport {
    std::vector<Real> values;   // one per real root of the defining polynomial
    int nonreal_pairs = 0;      // flagged complex embeddings (omitted)
};

// Evaluate e at every real embedding of its field, each accurate to 2^(4-bits).
EmbeddingReport nf_real_embeddings(const NFElem& e, long bits);

} // namespace smf2

#endif
