#ifndef SMF2_RATPOLY_HPP
#define SMF2_RATPOLY_HPP

#include "smf2/rational.hpp"
#include <vector>
#include <string>

namespace smf2 {

// Dense univariate polynomial over Q. coeffs[i] is the x^i coefficient;
// the leading coefficient is nonzero unless the polynomial is zero.
struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> cc) : c(std::move(cc)) { trim(); }
    static RatPoly zero() { return RatPoly(); }
    static RatPoly constant(const Rat& a);
    static RatPoly x();
    static RatPoly from_longs(std::initializer_list<long> cs);

    void trim();
    bool is_zero() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for zero
    const Rat& lead() const;
    Rat coeff(size_t i) const { return i < c.size() ? c[i] : Rat(0); }

    RatPoly monic() const;
    RatPoly derivative() const;
    Rat eval(const Rat& x) const;

    // p(s*x) and p(x + s), exact
    RatPoly scale_arg(const Rat& s) const;
    RatPoly shift_arg(const Rat& s) const;

    std::string str() const; // human-readable, variable "x"
};

RatPoly operator+(const RatPoly& a, const RatPoly& b);
RatPoly operator-(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const RatPoly& a, const RatPoly& b);
RatPoly operator*(const Rat& s, const RatPoly& a);
bool operator==(const RatPoly& a, const RatPoly& b);

// division with remainder: a = q*b + r, deg r < deg b
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r);
RatPoly poly_mod(const RatPoly& a, const RatPoly& b);
bool divides_exactly(const RatPoly& d, const RatPoly& a, RatPoly* quotient = nullptr);

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b); // monic gcd
// g = gcd = s*a + t*b
RatPoly poly_xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t);

// clears denominators and integer content: returns primitive integer
// polynomial (as RatPoly with integer coefficients) and the rational unit u
// with input = u * primitive.
RatPoly primitive_part(const RatPoly& a, Rat& unit);

} // namespace smf2

#endif
