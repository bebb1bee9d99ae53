#include "smf2/polyfactor.hpp"
#include "smf2/arith.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace smf2 {

namespace {

// ----- GF(p) polynomial arithmetic, word-sized p -----

using u64 = uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((__uint128_t)a * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod_u(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invmod(u64 a, u64 p) { return powmod_u(a % p, p - 2, p); }

struct PPoly {
    std::vector<u64> c; // c[i] coefficient of x^i
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    int deg() const { return (int)c.size() - 1; }
    bool zero() const { return c.empty(); }
};

PPoly pp_mul(const PPoly& a, const PPoly& b, u64 p) {
    if (a.zero() || b.zero()) return {};
    PPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (!a.c[i]) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = addmod(r.c[i + j], mulmod(a.c[i], b.c[j], p), p);
    }
    r.trim();
    return r;
}

void pp_divmod(const PPoly& a, const PPoly& b, u64 p, PPoly& q, PPoly& r) {
    r = a;
    q = {};
    int db = b.deg();
    if (db < 0) throw std::domain_error("pp_divmod by zero");
    if (a.deg() < db) return;
    q.c.assign(a.deg() - db + 1, 0);
    u64 binv = invmod(b.c.back(), p);
    while (r.deg() >= db) {
        int k = r.deg() - db;
        u64 f = mulmod(r.c.back(), binv, p);
        q.c[k] = f;
        for (int i = 0; i <= db; ++i)
            r.c[k + i] = submod(r.c[k + i], mulmod(f, b.c[i], p), p);
        r.trim();
    }
    q.trim();
}

PPoly pp_mod(const PPoly& a, const PPoly& b, u64 p) {
    PPoly q, r;
    pp_divmod(a, b, p, q, r);
    return r;
}

PPoly pp_gcd(PPoly a, PPoly b, u64 p) {
    while (!b.zero()) {
        PPoly r = pp_mod(a, b, p);
        a = b;
        b = r;
    }
    if (!a.zero()) {
        u64 inv = invmod(a.c.back(), p);
        for (auto& x : a.c) x = mulmod(x, inv, p);
    }
    return a;
}

PPoly pp_powmod(PPoly a, Int e, const PPoly& f, u64 p) {
    PPoly r;
    r.c = {1};
    a = pp_mod(a, f, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = pp_mod(pp_mul(r, a, p), f, p);
        a = pp_mod(pp_mul(a, a, p), f, p);
        e >>= 1;
    }
    return r;
}

PPoly pp_deriv(const PPoly& a, u64 p) {
    PPoly r;
    for (size_t i = 1; i < a.c.size(); ++i) r.c.push_back(mulmod(a.c[i], i % p, p));
    r.trim();
    return r;
}

// deterministic LCG so factorization is reproducible
struct Lcg {
    u64 s = 0x9e3779b97f4a7c15ull;
    u64 next() { s = s * 6364136223846793005ull + 1442695040888963407ull; return s >> 11; }
};

// distinct-degree then equal-degree splitting (Cantor-Zassenhaus), f monic squarefree mod p
void pp_factor(const PPoly& f, u64 p, std::vector<PPoly>& out, Lcg& rng) {
    if (f.deg() <= 0) return;
    if (f.deg() == 1) {
        out.push_back(f);
        return;
    }
    // distinct degree
    std::vector<std::pair<PPoly, int>> stages; // (product of irred of degree d, d)
    PPoly rem = f;
    PPoly xq; // x^(p^d) mod f, iterated
    xq.c = {0, 1};
    for (int d = 1; 2 * d <= rem.deg(); ++d) {
        xq = pp_powmod(xq, Int((long)p), rem, p);
        PPoly xqmx = xq;
        // subtract x
        if (xqmx.c.size() < 2) xqmx.c.resize(2, 0);
        xqmx.c[1] = submod(xqmx.c[1], 1, p);
        xqmx.trim();
        PPoly g = pp_gcd(rem, xqmx, p);
        if (g.deg() > 0) {
            stages.push_back({g, d});
            PPoly q, r;
            pp_divmod(rem, g, p, q, r);
            rem = q;
            xq = pp_mod(xq, rem, p);
        }
    }
    if (rem.deg() > 0) stages.push_back({rem, rem.deg()});

    // equal degree split
    for (auto& [prod, d] : stages) {
        std::vector<PPoly> work = {prod};
        std::vector<PPoly> done;
        Int exp = (int_pow(Int((long)p), d) - 1) / 2;
        while (!work.empty()) {
            PPoly g = work.back();
            work.pop_back();
            if (g.deg() == d) {
                done.push_back(g);
                continue;
            }
            // random split
            PPoly a;
            a.c.resize(g.deg());
            for (auto& x : a.c) x = rng.next() % p;
            a.trim();
            if (a.zero()) { work.push_back(g); continue; }
            PPoly b = pp_powmod(a, exp, g, p);
            if (b.c.empty()) b.c = {0};
            b.c[0] = submod(b.c[0], 1, p);
            b.trim();
            PPoly h = pp_gcd(g, b, p);
            if (h.deg() <= 0 || h.deg() == g.deg()) {
                work.push_back(g); // retry with another random a
                continue;
            }
            PPoly q, r;
            pp_divmod(g, h, p, q, r);
            work.push_back(h);
            work.push_back(q);
        }
        for (auto& g : done) out.push_back(g);
    }
}

// ----- Z/m arithmetic (m = p^k), mpz coefficients -----

struct MPoly {
    std::vector<Int> c;
    void trim() { while (!c.empty() && c.back() == 0) c.pop_back(); }
    int deg() const { return (int)c.size() - 1; }
};

Int mreduce(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

MPoly m_reduce(const MPoly& a, const Int& m) {
    MPoly r = a;
    for (auto& x : r.c) x = mreduce(x, m);
    r.trim();
    return r;
}

MPoly m_add(const MPoly& a, const MPoly& b, const Int& m) {
    MPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
    return m_reduce(r, m);
}

MPoly m_sub(const MPoly& a, const MPoly& b, const Int& m) {
    MPoly r;
    r.c.assign(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
    return m_reduce(r, m);
}

MPoly m_mul(const MPoly& a, const MPoly& b, const Int& m) {
    if (a.c.empty() || b.c.empty()) return {};
    MPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    return m_reduce(r, m);
}

// divide by monic b
void m_divmod_monic(const MPoly& a, const MPoly& b, const Int& m, MPoly& q, MPoly& r) {
    r = m_reduce(a, m);
    q = {};
    int db = b.deg();
    if (db < 0 || b.c.back() != 1) throw std::logic_error("m_divmod needs monic divisor");
    if (r.deg() < db) return;
    q.c.assign(r.deg() - db + 1, 0);
    while (r.deg() >= db) {
        int k = r.deg() - db;
        Int f = r.c.back();
        q.c[k] = f;
        for (int i = 0; i <= db; ++i) r.c[k + i] = mreduce(r.c[k + i] - f * b.c[i], m);
        r.trim();
    }
    q.trim();
}

// symmetric representative in (-m/2, m/2]
Int symlift(const Int& a, const Int& m) {
    Int r = mreduce(a, m);
    if (2 * r > m) r -= m;
    return r;
}

// Hensel: f ≡ g*h (mod q), s*g + t*h ≡ 1 (mod q), all inputs mod q, g,h monic.
// Returns lift mod q^2 (von zur Gathen & Gerhard, Alg. 15.10).
void hensel_step(const MPoly& f, MPoly& g, MPoly& h, MPoly& s, MPoly& t, const Int& q) {
    Int q2 = q * q;
    MPoly e = m_sub(f, m_mul(g, h, q2), q2);
    MPoly se = m_mul(s, e, q2);
    MPoly qq, rr;
    m_divmod_monic(se, h, q2, qq, rr);
    MPoly g1 = m_add(m_add(g, m_mul(t, e, q2), q2), m_mul(qq, g, q2), q2);
    MPoly h1 = m_add(h, rr, q2);
    MPoly b = m_sub(m_add(m_mul(s, g1, q2), m_mul(t, h1, q2), q2), MPoly{{Int(1)}}, q2);
    MPoly sb = m_mul(s, b, q2);
    MPoly cc, dd;
    m_divmod_monic(sb, h1, q2, cc, dd);
    MPoly s1 = m_sub(s, dd, q2);
    MPoly t1 = m_sub(m_sub(t, m_mul(t, b, q2), q2), m_mul(cc, g1, q2), q2);
    g = g1; h = h1; s = s1; t = t1;
}

MPoly from_ppoly(const PPoly& a) {
    MPoly r;
    for (u64 x : a.c) r.c.push_back(Int((unsigned long)x));
    return r;
}

// lift factorization f ≡ prod(factors) mod p to mod p^(2^rounds) via a factor tree
void hensel_tree(const MPoly& f, const std::vector<PPoly>& fac_p, u64 p, int rounds,
                 std::vector<MPoly>& out, const Int& target_mod) {
    if (fac_p.size() == 1) {
        MPoly g = m_reduce(f, target_mod);
        out.push_back(g);
        return;
    }
    size_t half = fac_p.size() / 2;
    std::vector<PPoly> left(fac_p.begin(), fac_p.begin() + half);
    std::vector<PPoly> right(fac_p.begin() + half, fac_p.end());
    PPoly gl, gr;
    gl.c = {1};
    gr.c = {1};
    for (auto& a : left) gl = pp_mul(gl, a, p);
    for (auto& a : right) gr = pp_mul(gr, a, p);
    // Bezout mod p
    PPoly s_p, t_p;
    {
        // extended euclid over GF(p)
        PPoly r0 = gl, r1 = gr;
        PPoly s0, s1, t0, t1;
        s0.c = {1};
        t1.c = {1};
        while (!r1.zero()) {
            PPoly q, r;
            pp_divmod(r0, r1, p, q, r);
            PPoly s2 = r0, t2;
            // s2 = s0 - q*s1 ; t2 = t0 - q*t1
            {
                PPoly qs = pp_mul(q, s1, p);
                s2.c.assign(std::max(s0.c.size(), qs.c.size()), 0);
                for (size_t i = 0; i < s0.c.size(); ++i) s2.c[i] = s0.c[i];
                for (size_t i = 0; i < qs.c.size(); ++i) s2.c[i] = submod(s2.c[i], qs.c[i], p);
                s2.trim();
                PPoly qt = pp_mul(q, t1, p);
                t2.c.assign(std::max(t0.c.size(), qt.c.size()), 0);
                for (size_t i = 0; i < t0.c.size(); ++i) t2.c[i] = t0.c[i];
                for (size_t i = 0; i < qt.c.size(); ++i) t2.c[i] = submod(t2.c[i], qt.c[i], p);
                t2.trim();
            }
            r0 = r1; r1 = r;
            s0 = s1; s1 = s2;
            t0 = t1; t1 = t2;
        }
        // r0 = gcd (a nonzero constant since gl, gr coprime)
        if (r0.deg() != 0) throw std::logic_error("hensel: factors not coprime mod p");
        u64 inv = invmod(r0.c[0], p);
        for (auto& x : s0.c) x = mulmod(x, inv, p);
        for (auto& x : t0.c) x = mulmod(x, inv, p);
        s_p = s0;
        t_p = t0;
    }
    MPoly g = from_ppoly(gl), h = from_ppoly(gr), s = from_ppoly(s_p), t = from_ppoly(t_p);
    Int q((unsigned long)p);
    for (int i = 0; i < rounds; ++i) {
        hensel_step(m_reduce(f, q * q), g, h, s, t, q);
        q = q * q;
    }
    hensel_tree(m_reduce(g, target_mod), left, p, rounds, out, target_mod);
    hensel_tree(m_reduce(h, target_mod), right, p, rounds, out, target_mod);
}

// ----- Zassenhaus on a monic squarefree integer polynomial -----

Int poly_norm2_sq(const std::vector<Int>& c) {
    Int s = 0;
    for (const Int& x : c) s += x * x;
    return s;
}

std::vector<std::vector<Int>> zassenhaus_monic(const std::vector<Int>& f) {
    int n = (int)f.size() - 1;
    if (n <= 0) return {};
    if (n == 1) return {f};

    // pick a prime: f squarefree mod p
    u64 p = 0;
    PPoly fp;
    for (u64 cand = 3;; cand += 2) {
        if (!is_prime((long)cand)) continue;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), (unsigned long)cand)) continue;
        PPoly g;
        for (const Int& x : f) {
            Int r = mreduce(x, Int((unsigned long)cand));
            g.c.push_back(r.get_ui());
        }
        g.trim();
        PPoly d = pp_deriv(g, cand);
        if (d.zero()) continue;
        PPoly gc = pp_gcd(g, d, cand);
        if (gc.deg() == 0) {
            p = cand;
            fp = g;
            break;
        }
    }

    Lcg rng;
    std::vector<PPoly> fac_p;
    pp_factor(fp, p, fac_p, rng);
    if (fac_p.size() == 1) return {f}; // irreducible mod p => irreducible
    std::sort(fac_p.begin(), fac_p.end(), [](const PPoly& a, const PPoly& b) {
        return a.c < b.c;
    });

    // Landau-Mignotte style bound: any monic factor has |coeff| <= 2^n * ||f||_2
    Int norm2 = poly_norm2_sq(f);
    Int bound = 1;
    mpz_sqrt(bound.get_mpz_t(), norm2.get_mpz_t());
    bound = (bound + 1) << (unsigned)n;
    Int need = 2 * bound + 1;
    int rounds = 0;
    Int q((unsigned long)p);
    while (q < need) {
        q = q * q;
        ++rounds;
    }

    MPoly fm;
    for (const Int& x : f) fm.c.push_back(x);
    std::vector<MPoly> lifted;
    hensel_tree(m_reduce(fm, q), fac_p, p, rounds, lifted, q);

    // subset recombination
    std::vector<int> alive(lifted.size());
    for (size_t i = 0; i < alive.size(); ++i) alive[i] = (int)i;
    std::vector<Int> rem = f;
    std::vector<std::vector<Int>> result;

    auto try_subset = [&](const std::vector<int>& subset) -> bool {
        MPoly prod;
        prod.c = {Int(1)};
        for (int idx : subset) prod = m_mul(prod, lifted[idx], q);
        // symmetric lift
        std::vector<Int> cand(prod.c.size());
        for (size_t i = 0; i < prod.c.size(); ++i) cand[i] = symlift(prod.c[i], q);
        // trial division rem / cand over Z (both monic)
        std::vector<Int> a = rem, b = cand;
        if (a.size() < b.size()) return false;
        std::vector<Int> quo(a.size() - b.size() + 1, 0);
        while (a.size() >= b.size()) {
            size_t k = a.size() - b.size();
            Int fq = a.back(); // b monic
            quo[k] = fq;
            for (size_t i = 0; i < b.size(); ++i) a[k + i] -= fq * b[i];
            while (!a.empty() && a.back() == 0) a.pop_back();
            if (a.empty()) break;
        }
        if (!a.empty()) return false; // nonzero remainder
        // success: record
        result.push_back(cand);
        rem = quo;
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        return true;
    };

    size_t card = 1;
    while (2 * card <= alive.size()) {
        bool found = true;
        while (found) {
            found = false;
            // iterate subsets of `alive` of size `card`
            std::vector<int> idx(card);
            for (size_t i = 0; i < card; ++i) idx[i] = (int)i;
            while (true) {
                std::vector<int> subset;
                for (size_t i = 0; i < card; ++i) subset.push_back(alive[idx[i]]);
                if (try_subset(subset)) {
                    std::vector<int> next_alive;
                    for (int a : alive)
                        if (std::find(subset.begin(), subset.end(), a) == subset.end())
                            next_alive.push_back(a);
                    alive = next_alive;
                    found = true;
                    break;
                }
                // next combination
                int i = (int)card - 1;
                while (i >= 0 && idx[i] == (int)(alive.size() - card + i)) --i;
                if (i < 0) break;
                ++idx[i];
                for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
            }
            if (2 * card > alive.size()) break;
        }
        ++card;
    }
    if (!rem.empty() && (int)rem.size() - 1 > 0) result.push_back(rem);
    return result;
}

} // namespace

QFactorization factor_over_Q(const RatPoly& p) {
    if (p.is_zero()) throw std::domain_error("factor_over_Q(0)");
    QFactorization out;
    Rat unit;
    RatPoly prim = primitive_part(p, unit);
    out.unit = unit;
    if (prim.degree() == 0) {
        out.unit = out.unit * prim.c[0];
        return out;
    }

    // squarefree decomposition (Yun) over Q
    std::vector<std::pair<RatPoly, int>> squarefree;
    {
        RatPoly f = prim;
        RatPoly d = f.derivative();
        RatPoly a = poly_gcd(f, d);
        if (a.degree() == 0) {
            squarefree.push_back({f, 1});
        } else {
            RatPoly b, c, dd, q, r;
            divmod(f, a, b, r);
            divmod(d, a, c, r);
            int i = 1;
            while (b.degree() > 0) {
                dd = c - b.derivative();
                RatPoly g = poly_gcd(b, dd);
                if (g.degree() > 0) squarefree.push_back({g, i});
                divmod(b, g, q, r);
                b = q;
                divmod(dd, g, c, r);
                ++i;
            }
        }
    }

    for (auto& [sf, mult] : squarefree) {
        Rat u2;
        RatPoly sfz = primitive_part(sf, u2);
        // monicize: F(x) = lc^(d-1) * sfz(x/lc), integer monic
        Int lc = sfz.lead().get_num(); // sfz integral primitive, lead > 0
        int d = sfz.degree();
        std::vector<Int> F(d + 1);
        // coefficient of x^i in F: sfz[i] * lc^(d-1-i)
        for (int i = 0; i <= d; ++i) {
            Int v = sfz.c[i].get_num();
            F[i] = (i <= d - 1) ? v * int_pow(lc, (unsigned long)(d - 1 - i)) : v;
        }
        // remove integer content except leading 1 handling: F monic already when i=d coeff = lc^0 * lead... fix:
        // lead of F is sfz[d] = lc, times lc^{-1}? Use standard: F[i] = sfz[i]*lc^{d-1-i} gives lead lc^{0}*sfz[d] = lc. Normalize:
        // Actually we want monic: G(x) = lc^{d-1} sfz(x/lc) has G[i] = sfz[i] * lc^{d-1-i}; G[d] = sfz[d]/lc = 1 only if computed as lc^{d-1}*sfz_d/lc^d.
        F[d] = 1;
        auto irr = zassenhaus_monic(F);
        for (auto& G : irr) {
            // map back: g(x) = G(lc * x), then monic over Q
            RatPoly g;
            Int pw = 1;
            for (size_t i = 0; i < G.size(); ++i) {
                g.c.push_back(Rat(G[i] * pw));
                pw *= lc;
            }
            g.trim();
            out.factors.push_back({g.monic(), mult});
        }
    }

    // unit = p / prod(factors^mult): recompute exactly to absorb monic scalings
    RatPoly prod = RatPoly::constant(rat(1));
    for (auto& [f, m] : out.factors)
        for (int i = 0; i < m; ++i) prod = prod * f;
    // p = unit * prod with prod monic
    out.unit = p.lead();
    RatPoly check = out.unit * prod;
    if (!(check == p)) throw std::logic_error("factor_over_Q: product check failed");

    std::sort(out.factors.begin(), out.factors.end(),
              [](const std::pair<RatPoly, int>& a, const std::pair<RatPoly, int>& b) {
                  if (a.first.degree() != b.first.degree())
                      return a.first.degree() < b.first.degree();
                  for (int i = a.first.degree(); i >= 0; --i) {
                      if (a.first.c[i] != b.first.c[i]) return a.first.c[i] < b.first.c[i];
                  }
                  return a.second < b.second;
              });
    return out;
}

bool is_irreducible_over_Q(const RatPoly& p) {
    if (p.degree() <= 0) return false;
    auto f = factor_over_Q(p);
    return f.factors.size() == 1 && f.factors[0].second == 1;
}

} // namespace smf2
