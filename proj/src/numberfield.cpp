#include "smf2/numberfield.hpp"

#include <sstream>
#include <stdexcept>

namespace smf2 {

FieldPtr rational_field() {
    static FieldPtr F = std::make_shared<NumberField>(RatPoly::x());
    return F;
}

NFElem::NFElem(FieldPtr f, std::vector<Rat> cc) : F(std::move(f)), c(std::move(cc)) {
    if ((int)c.size() != F->degree()) throw std::domain_error("NFElem coordinate length");
}

NFElem NFElem::from_rat(FieldPtr f, const Rat& q) {
    std::vector<Rat> cc(f->degree(), rat(0));
    cc[0] = q;
    return NFElem(std::move(f), std::move(cc));
}

NFElem NFElem::generator(FieldPtr f) {
    if (f->degree() < 2) throw std::domain_error("generator needs degree >= 2");
    std::vector<Rat> cc(f->degree(), rat(0));
    cc[1] = 1;
    return NFElem(std::move(f), std::move(cc));
}

bool NFElem::is_zero() const {
    for (const Rat& x : c)
        if (x != 0) return false;
    return true;
}

bool NFElem::is_rational(Rat* out) const {
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    if (out) *out = c.empty() ? Rat(0) : c[0];
    return true;
}

std::string NFElem::str() const {
    RatPoly p;
    p.c = c;
    p.trim();
    return p.str();
}

namespace {
void check_same(const NFElem& a, const NFElem& b) {
    if (a.F != b.F && !(a.F->modulus == b.F->modulus))
        throw std::domain_error("NFElem field mismatch");
}
} // namespace

NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    NFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    NFElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    RatPoly pa, pb;
    pa.c = a.c;
    pa.trim();
    pb.c = b.c;
    pb.trim();
    RatPoly pr = poly_mod(pa * pb, a.F->modulus);
    std::vector<Rat> cc(a.F->degree(), rat(0));
    for (size_t i = 0; i < pr.c.size(); ++i) cc[i] = pr.c[i];
    return NFElem(a.F, std::move(cc));
}

NFElem operator*(const Rat& s, const NFElem& a) {
    NFElem r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

NFElem nf_inverse(const NFElem& a) {
    if (a.is_zero()) throw std::domain_error("inverse of zero field element");
    RatPoly pa;
    pa.c = a.c;
    pa.trim();
    RatPoly s, t;
    RatPoly g = poly_xgcd(pa, a.F->modulus, s, t);
    if (g.degree() != 0) throw std::logic_error("modulus not irreducible (gcd found)");
    // g = 1 (monic deg 0) = s*a + t*m  =>  a^{-1} = s mod m
    RatPoly inv = poly_mod(s, a.F->modulus);
    std::vector<Rat> cc(a.F->degree(), rat(0));
    for (size_t i = 0; i < inv.c.size(); ++i) cc[i] = inv.c[i];
    return NFElem(a.F, std::move(cc));
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * nf_inverse(b); }

bool operator==(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return a.c == b.c;
}

// --- Sturm isolation ----------------------------------------------------

namespace {

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain;
    chain.push_back(p);
    chain.push_back(p.derivative());
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(rat(-1) * r);
    }
    return chain;
}

int sign_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    int last = 0, var = 0;
    for (const auto& q : chain) {
        Rat v = q.eval(x);
        int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

int sign_variations_at_inf(const std::vector<RatPoly>& chain, int dir) {
    int last = 0, var = 0;
    for (const auto& q : chain) {
        if (q.is_zero()) continue;
        int s = (q.lead() > 0) ? 1 : -1;
        if (dir < 0 && q.degree() % 2 == 1) s = -s;
        if (last != 0 && s != last) ++var;
        last = s;
    }
    return var;
}

Rat cauchy_bound(const RatPoly& p) {
    Rat m = 0;
    for (int i = 0; i < p.degree(); ++i) {
        Rat v = abs(p.c[i] / p.lead());
        if (v > m) m = v;
    }
    return m + 1;
}

} // namespace

int count_real_roots(const RatPoly& p) {
    if (p.degree() <= 0) return 0;
    auto chain = sturm_chain(p);
    return sign_variations_at_inf(chain, -1) - sign_variations_at_inf(chain, +1);
}

std::vector<RealRoot> real_roots(const RatPoly& p, long bits) {
    if (p.degree() <= 0) return {};
    RatPoly sq = poly_gcd(p, p.derivative());
    if (sq.degree() > 0) throw std::domain_error("real_roots requires squarefree polynomial");
    auto chain = sturm_chain(p);
    Rat B = cauchy_bound(p);

    struct Seg {
        Rat lo, hi;
        int nroots;
    };
    auto roots_in = [&](const Rat& lo, const Rat& hi) {
        return sign_variations_at(chain, lo) - sign_variations_at(chain, hi);
    };
    std::vector<Seg> work = {{-B, B, roots_in(-B, B)}};
    std::vector<Seg> isolated;
    while (!work.empty()) {
        Seg s = work.back();
        work.pop_back();
        if (s.nroots == 0) continue;
        if (s.nroots == 1) {
            isolated.push_back(s);
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        if (p.eval(mid) == 0) {
            // nudge the midpoint so endpoints stay off the roots
            Rat eps = (s.hi - s.lo) / 1024;
            while (p.eval(mid + eps) == 0 || p.eval(mid - eps) == 0) eps /= 2;
            int left = roots_in(s.lo, mid - eps);
            int midc = roots_in(mid - eps, mid + eps);
            int right = s.nroots - left - midc;
            work.push_back({s.lo, mid - eps, left});
            work.push_back({mid - eps, mid + eps, midc});
            work.push_back({mid + eps, s.hi, right});
        } else {
            int left = roots_in(s.lo, mid);
            work.push_back({s.lo, mid, left});
            work.push_back({mid, s.hi, s.nroots - left});
        }
    }
    std::sort(isolated.begin(), isolated.end(), [](const Seg& a, const Seg& b) { return a.lo < b.lo; });

    // bisect each isolating interval down to the requested width
    std::vector<RealRoot> out;
    long guard = bits + 16;
    for (auto& s : isolated) {
        Rat lo = s.lo, hi = s.hi;
        // ensure sign change (Sturm gives (lo, hi]; p(lo) != 0 by construction)
        int slo = (p.eval(lo) > 0) ? 1 : -1;
        Rat width_target = rat(1);
        for (long i = 0; i < guard; ++i) width_target /= 2;
        while (hi - lo > width_target) {
            Rat mid = (lo + hi) / 2;
            Rat v = p.eval(mid);
            if (v == 0) {
                // exact rational root: tighten to the point
                lo = mid;
                hi = mid;
                break;
            }
            int sm = (v > 0) ? 1 : -1;
            if (sm == slo) lo = mid;
            else hi = mid;
        }
        Real approx((mpfr_prec_t)(bits + 32));
        Real rlo(lo, (mpfr_prec_t)(bits + 32)), rhi(hi, (mpfr_prec_t)(bits + 32));
        approx = real_mul_2exp(rlo + rhi, -1);
        out.push_back({approx, lo, hi});
    }
    return out;
}

EmbeddingReport nf_real_embeddings(const NFElem& e, long bits) {
    EmbeddingReport rep;
    const RatPoly& m = e.F->modulus;
    int total = m.degree();
    auto roots = real_roots(m, bits + 16);
    rep.nonreal_pairs = (total - (int)roots.size()) / 2;
    RatPoly pe;
    pe.c = e.c;
    pe.trim();
    RatPoly ped = pe.derivative();
    mpfr_prec_t wp = (mpfr_prec_t)(bits + 64);
    auto horner = [&](const RatPoly& q, const Real& x) {
        Real acc(0L, wp);
        for (size_t i = q.c.size(); i-- > 0;) acc = acc * x + Real(q.c[i], wp);
        return acc;
    };
    for (auto& r : roots) {
        // refine the bracket until |e'| * width clears the 2^(4-bits) contract
        Rat lo = r.lo, hi = r.hi;
        Real mid = r.approx;
        Real dbound = real_abs(horner(ped, mid)) + Real(1L, wp);
        Real target = real_2pow(-(bits + 8), wp);
        int slo = (m.eval(lo) > 0) ? 1 : (m.eval(lo) < 0 ? -1 : 0);
        while (slo != 0 && hi != lo && Real(hi - lo, wp) * dbound > target) {
            Rat c = (lo + hi) / 2;
            Rat v = m.eval(c);
            if (v == 0) { lo = hi = c; break; }
            if (((v > 0) ? 1 : -1) == slo) lo = c;
            else hi = c;
        }
        mid = real_mul_2exp(Real(lo, wp) + Real(hi, wp), -1);
        rep.values.push_back(horner(pe, mid));
    }
    return rep;
}

} // namespace smf2
