#include "smf2/ratpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace smf2 {

RatPoly RatPoly::constant(const Rat& a) {
    RatPoly p;
    if (a != 0) p.c.push_back(a);
    return p;
}

RatPoly RatPoly::x() {
    RatPoly p;
    p.c = {rat(0), rat(1)};
    return p;
}

RatPoly RatPoly::from_longs(std::initializer_list<long> cs) {
    RatPoly p;
    for (long v : cs) p.c.push_back(rat(v));
    p.trim();
    return p;
}

void RatPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

const Rat& RatPoly::lead() const {
    if (c.empty()) throw std::logic_error("lead of zero polynomial");
    return c.back();
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    RatPoly p = *this;
    Rat l = lead();
    for (auto& a : p.c) a /= l;
    return p;
}

RatPoly RatPoly::derivative() const {
    RatPoly p;
    for (size_t i = 1; i < c.size(); ++i) p.c.push_back(Rat((long)i) * c[i]);
    p.trim();
    return p;
}

Rat RatPoly::eval(const Rat& x) const {
    Rat acc = 0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

RatPoly RatPoly::scale_arg(const Rat& s) const {
    RatPoly p = *this;
    Rat sp = 1;
    for (size_t i = 0; i < p.c.size(); ++i) {
        p.c[i] *= sp;
        sp *= s;
    }
    p.trim();
    return p;
}

RatPoly RatPoly::shift_arg(const Rat& s) const {
    // Horner: p(x+s)
    RatPoly acc;
    for (size_t i = c.size(); i-- > 0;) {
        // acc = acc*(x+s) + c[i]
        RatPoly next;
        next.c.assign(acc.c.size() + 1, rat(0));
        for (size_t j = 0; j < acc.c.size(); ++j) {
            next.c[j + 1] += acc.c[j];
            next.c[j] += s * acc.c[j];
        }
        if (next.c.empty()) next.c.push_back(rat(0));
        next.c[0] += c[i];
        next.trim();
        acc = next;
    }
    return acc;
}

std::string RatPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c.size(); i-- > 0;) {
        if (c[i] == 0) continue;
        if (!first) os << (c[i] > 0 ? " + " : " - ");
        else if (c[i] < 0) os << "-";
        Rat a = abs(c[i]);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    r.trim();
    return r;
}

RatPoly operator-(const RatPoly& a, const RatPoly& b) {
    RatPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    r.trim();
    return r;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    RatPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
}

RatPoly operator*(const Rat& s, const RatPoly& a) {
    if (s == 0) return RatPoly();
    RatPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

bool operator==(const RatPoly& a, const RatPoly& b) { return a.c == b.c; }

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    r = a;
    q = RatPoly();
    int db = b.degree();
    if (a.degree() < db) return;
    q.c.assign(a.degree() - db + 1, rat(0));
    while (r.degree() >= db) {
        int k = r.degree() - db;
        Rat f = r.lead() / b.lead();
        q.c[k] = f;
        for (size_t i = 0; i < b.c.size(); ++i) r.c[k + i] -= f * b.c[i];
        r.trim();
    }
    q.trim();
}

RatPoly poly_mod(const RatPoly& a, const RatPoly& b) {
    RatPoly q, r;
    divmod(a, b, q, r);
    return r;
}

bool divides_exactly(const RatPoly& d, const RatPoly& a, RatPoly* quotient) {
    RatPoly q, r;
    divmod(a, d, q, r);
    if (!r.is_zero()) return false;
    if (quotient) *quotient = q;
    return true;
}

RatPoly poly_gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = poly_mod(x, y);
        x = y;
        y = r;
    }
    return x.is_zero() ? x : x.monic();
}

RatPoly poly_xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(rat(1)), s1;
    RatPoly t0, t1 = RatPoly::constant(rat(1));
    while (!r1.is_zero()) {
        RatPoly q, r;
        divmod(r0, r1, q, r);
        RatPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        Rat l = r0.lead();
        r0 = r0.monic();
        Rat il = rat(1) / l;
        s0 = il * s0;
        t0 = il * t0;
    }
    s = s0;
    t = t0;
    return r0;
}

RatPoly primitive_part(const RatPoly& a, Rat& unit) {
    if (a.is_zero()) { unit = 0; return a; }
    Int den = 1;
    for (const Rat& x : a.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den().get_mpz_t());
    Int num = 0;
    for (const Rat& x : a.c) {
        Int v = x.get_num() * (den / x.get_den());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_mpz_t());
    }
    if (num == 0) num = 1;
    Rat u(num, den);
    u.canonicalize();
    if (a.lead() < 0) u = -u;
    RatPoly p;
    p.c.reserve(a.c.size());
    for (const Rat& x : a.c) p.c.push_back(x / u);
    p.trim();
    unit = u;
    return p;
}

} // namespace smf2
