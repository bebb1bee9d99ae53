#include "smf2/hecke.hpp"
#include "smf2/arith.hpp"
#include "smf2/polyfactor.hpp"
#include "smf2/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace smf2 {

namespace {

// a(T) with the convention that non-half-integral entries give 0
Rat coeff_or_zero(SiegelSource& F, long n2, long r, long m2) {
    // arguments are (n, r, m) for the form n x^2 + r xy + m y^2
    BQF t{n2, r, m2};
    if (!is_psd(t)) return rat(0);
    return F.coeff(t);
}

} // namespace

Rat hecke_tp_coeff(SiegelSource& F, long p, const BQF& T) {
    long k = F.weight();
    long n = T.a, r = T.b, m = T.c;
    Rat b = coeff_or_zero(F, p * n, p * r, p * m);

    Rat mid = 0;
    for (long j = 0; j < p; ++j) {
        long q = n + r * j + m * j * j;
        if (q % p != 0) continue;
        mid += coeff_or_zero(F, q / p, r + 2 * j * m, p * m);
    }
    if (m % p == 0) mid += coeff_or_zero(F, p * n, r, m / p);
    if (mid != 0) b += Rat(int_pow(Int(p), (unsigned long)(k - 2))) * mid;

    if (n % p == 0 && r % p == 0 && m % p == 0)
        b += Rat(int_pow(Int(p), (unsigned long)(2 * k - 3))) * coeff_or_zero(F, n / p, r / p, m / p);
    return b;
}

// --- generic coset enumeration at similitude p^delta ------------------------

namespace {

// kernel basis of c1 x + c2 y + c3 z = 0 over Z (c not all zero): two vectors
std::array<std::array<Int, 3>, 2> kernel_1x3(const Int& c1, const Int& c2, const Int& c3) {
    // first vector from the (c1, c2) block
    Int g12;
    mpz_gcd(g12.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
    std::array<Int, 3> u1, u2;
    if (g12 == 0) {
        // c1 = c2 = 0, c3 != 0: kernel = {(x, y, 0)}
        u1 = {Int(1), Int(0), Int(0)};
        u2 = {Int(0), Int(1), Int(0)};
        return {u1, u2};
    }
    u1 = {c2 / g12, -(c1 / g12), Int(0)};
    // second: minimal z0 with g12 | c3 z0, plus a Bezout solution for x, y
    Int gg;
    mpz_gcd(gg.get_mpz_t(), g12.get_mpz_t(), c3.get_mpz_t());
    Int z0 = g12 / gg;
    // solve c1 x + c2 y = -c3 z0
    Int s, t;
    mpz_gcdext(g12.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), c1.get_mpz_t(), c2.get_mpz_t());
    Int rhs = -c3 * z0 / g12;
    u2 = {s * rhs, t * rhs, z0};
    return {u1, u2};
}

// solve U * x = v for x in Z^3 where U columns are lattice basis vectors (4-dim ambient)
// here specialized: express v in the basis (b1, b2, b3) of a rank-3 lattice in Z^4
std::array<Rat, 3> coords_in_basis(const std::array<std::array<Int, 4>, 3>& basis,
                                   const std::array<Int, 4>& v) {
    // least-squares-free exact solve: pick 3 independent rows
    QMatrix A(4, 3);
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 3; ++j) A.at(i, j) = Rat(basis[j][i]);
    // find 3 rows with invertible minor
    for (size_t skip = 0; skip < 4; ++skip) {
        QMatrix S(3, 3);
        std::vector<Rat> rhs(3);
        size_t rr = 0;
        for (size_t i = 0; i < 4; ++i) {
            if (i == skip) continue;
            for (size_t j = 0; j < 3; ++j) S.at(rr, j) = A.at(i, j);
            rhs[rr] = Rat(v[i]);
            ++rr;
        }
        std::vector<Rat> x;
        if (!solve_linear(S, rhs, x)) continue;
        // verify the skipped row
        Rat acc = 0;
        for (size_t j = 0; j < 3; ++j) acc += A.at(skip, j) * x[j];
        if (acc != Rat(v[skip])) continue;
        return {x[0], x[1], x[2]};
    }
    throw std::logic_error("coords_in_basis: vector not in lattice span");
}

} // namespace

Rat hecke_coeff_generic(SiegelSource& F, long p, int delta, const BQF& S) {
    long k = F.weight();
    Int pd = int_pow(Int(p), (unsigned long)delta);
    Rat total = 0;

    for (int i = 0; i <= delta; ++i) {
        for (int j = 0; j <= delta; ++j) {
            Int a = int_pow(Int(p), (unsigned long)i);
            Int d = int_pow(Int(p), (unsigned long)j);
            long bstep = 1;
            if (i + j > delta) bstep = (long)int_pow(Int(p), (unsigned long)(i + j - delta)).get_si();
            for (Int bb = 0; bb < d; bb += bstep) {
                // A = [[a, bb],[0, d]]; T = p^delta A^{-t} S A^{-1}
                // entries: n' = p^d n / a^2, r' = p^d (a r - 2 bb n)/(a^2 d),
                //          m' = p^d (bb^2 n - a bb r + a^2 m)/(a^2 d^2)
                Int nn = pd * S.a;
                Int a2 = a * a;
                if (!mpz_divisible_p(nn.get_mpz_t(), a2.get_mpz_t())) continue;
                Int tn = nn / a2;
                Int rnum = pd * (a * S.b - 2 * bb * S.a);
                Int rden = a2 * d;
                if (!mpz_divisible_p(rnum.get_mpz_t(), rden.get_mpz_t())) continue;
                Int tr = rnum / rden;
                Int mnum = pd * (bb * bb * S.a - a * bb * S.b + a2 * S.c);
                Int mden = a2 * d * d;
                if (!mpz_divisible_p(mnum.get_mpz_t(), mden.get_mpz_t())) continue;
                Int tm = mnum / mden;
                if (!tn.fits_slong_p() || !tr.fits_slong_p() || !tm.fits_slong_p())
                    throw std::runtime_error("hecke_coeff_generic: index overflow");
                BQF TA{tn.get_si(), tr.get_si(), tm.get_si()};
                if (!is_psd(TA)) continue;

                // D = [[p^{delta-i}, 0], [-bb p^{delta-i-j}, p^{delta-j}]]
                // (valid: bstep ensures integrality of D21)
                Int D11 = int_pow(Int(p), (unsigned long)(delta - i));
                Int D22 = int_pow(Int(p), (unsigned long)(delta - j));
                Int D21 = -(bb * pd) / (a * d);

                // L_B = {B : B^t D symmetric} = {D22 B21 - D11 B12 - D21 B22 = 0},
                // coordinates (B11, B12, B21, B22); B11 free.
                auto ker = kernel_1x3(-D11, D22, -D21); // coeffs for (B12, B21, B22)
                std::array<std::array<Int, 4>, 3> LB;
                LB[0] = {Int(1), Int(0), Int(0), Int(0)};
                LB[1] = {Int(0), ker[0][0], ker[0][1], ker[0][2]};
                LB[2] = {Int(0), ker[1][0], ker[1][1], ker[1][2]};

                // L0 generators: S' D for S' = E11, E22, E12+E21
                std::array<std::array<Int, 4>, 3> L0;
                L0[0] = {D11, Int(0), Int(0), Int(0)};
                L0[1] = {Int(0), Int(0), D21, D22};
                L0[2] = {D21, D22, D11, Int(0)};

                // index [L_B : L0] = |det of coordinates of L0 in the L_B basis|
                QMatrix C(3, 3);
                bool ok = true;
                for (size_t g = 0; g < 3 && ok; ++g) {
                    try {
                        auto x = coords_in_basis(LB, L0[g]);
                        for (size_t c = 0; c < 3; ++c) {
                            C.at(g, c) = x[c];
                            if (x[c].get_den() != 1) ok = false;
                        }
                    } catch (const std::logic_error&) {
                        ok = false;
                    }
                }
                if (!ok) throw std::logic_error("hecke_coeff_generic: L0 not inside L_B");
                Rat det = C.at(0, 0) * (C.at(1, 1) * C.at(2, 2) - C.at(1, 2) * C.at(2, 1)) -
                          C.at(0, 1) * (C.at(1, 0) * C.at(2, 2) - C.at(1, 2) * C.at(2, 0)) +
                          C.at(0, 2) * (C.at(1, 0) * C.at(2, 1) - C.at(1, 1) * C.at(2, 0));
                Int index = abs(det.get_num());
                if (det.get_den() != 1 || index == 0)
                    throw std::logic_error("hecke_coeff_generic: bad lattice index");

                // character condition: tr(T_A B A^t) / p^delta integral on L_B
                // with A^t = [[a, 0],[bb, d]]; use 2 T_A to stay integral.
                auto phi_integral = [&](const std::array<Int, 4>& B) {
                    // M = B * A^t: rows of B times A^t
                    Int B11 = B[0], B12 = B[1], B21 = B[2], B22 = B[3];
                    Int M11 = B11 * a + B12 * bb;
                    Int M12 = B12 * d;
                    Int M21 = B21 * a + B22 * bb;
                    Int M22 = B22 * d;
                    // tr(2 T_A * M) with 2 T_A = [[2n', r'],[r', 2m']]
                    Int tr2 = 2 * Int(TA.a) * M11 + Int(TA.b) * M21 + Int(TA.b) * M12 +
                              2 * Int(TA.c) * M22;
                    Int mod = 2 * pd;
                    return mpz_divisible_p(tr2.get_mpz_t(), mod.get_mpz_t()) != 0;
                };
                bool triv = phi_integral(LB[0]) && phi_integral(LB[1]) && phi_integral(LB[2]);
                if (!triv) continue;

                Rat acoef = F.coeff(TA);
                if (acoef == 0) continue;
                long expo = (long)(i + j) * k - 3 * delta;
                Rat weight = (expo >= 0) ? Rat(int_pow(Int(p), (unsigned long)expo))
                                         : Rat(1) / Rat(int_pow(Int(p), (unsigned long)(-expo)));
                total += weight * Rat(index) * acoef;
            }
        }
    }
    return total;
}

Rat hecke_tp2_coeff(SiegelSource& F, long p, const BQF& T) {
    return hecke_coeff_generic(F, p, 2, T);
}

// --- matrices and splitting --------------------------------------------------

QMatrix tp_matrix(const ProductBasis& basis, long p) {
    long dim = basis.dim;
    // pivot matrix P[i][l] = a_{B_l}(t_i)
    QMatrix P((size_t)dim, (size_t)dim);
    for (long i = 0; i < dim; ++i) {
        auto row = coeff_row(basis.sources, basis.pivots[(size_t)i]);
        for (long l = 0; l < dim; ++l) P.at((size_t)i, (size_t)l) = row[(size_t)l];
    }
    QMatrix M((size_t)dim, (size_t)dim);
    for (long jcol = 0; jcol < dim; ++jcol) {
        std::vector<Rat> b((size_t)dim);
        for (long i = 0; i < dim; ++i)
            b[(size_t)i] = hecke_tp_coeff(*basis.sources[(size_t)jcol], p, basis.pivots[(size_t)i]);
        std::vector<Rat> x;
        if (!solve_linear(P, b, x))
            throw std::runtime_error("tp_matrix: pivot solve singular (raise depth)");
        for (long l = 0; l < dim; ++l) M.at((size_t)l, (size_t)jcol) = x[(size_t)l];
    }
    return M;
}

QMatrix t2_matrix(const ProductBasis& basis) { return tp_matrix(basis, 2); }

namespace {

RatPoly scaled_charpoly(const QMatrix& M, const Rat& c) {
    // prod (x - c*alpha_i) = c^d chi(x/c)
    RatPoly chi = charpoly(M);
    long d = chi.degree();
    RatPoly out;
    out.c.resize((size_t)d + 1);
    // coefficient of x^j in c^d chi(x/c) = chi_j c^{d-j}
    for (long j = 0; j <= d; ++j) out.c[(size_t)j] = chi.c[(size_t)j] * rat_pow(Rat(c), d - j);
    out.trim();
    return out;
}

} // namespace

SplitReport split_charpoly(const ProductBasis& basis, const QMatrix& t2) {
    SplitReport rep;
    long k = basis.weight;
    rep.weight = k;
    rep.full = charpoly(t2);

    Rat eis_eig = (Rat(1) + Rat(int_pow(Int(2), (unsigned long)(k - 2)))) *
                  (Rat(1) + Rat(int_pow(Int(2), (unsigned long)(k - 1))));
    rep.eisenstein = RatPoly({-eis_eig, rat(1)});

    // Klingen block: elliptic T_2 on S_k, alpha -> alpha (1 + 2^{k-2})
    {
        QMatrix E = elliptic_hecke_matrix(k, 2);
        if (E.rows == 0) rep.klingen = RatPoly::constant(rat(1));
        else rep.klingen = scaled_charpoly(E, Rat(1) + Rat(int_pow(Int(2), (unsigned long)(k - 2))));
    }
    // cuspidal Maass block: elliptic T_2 on S_{2k-2}, beta -> beta + 2^{k-1} + 2^{k-2}
    {
        QMatrix E = elliptic_hecke_matrix(2 * k - 2, 2);
        if (E.rows == 0) rep.maass = RatPoly::constant(rat(1));
        else {
            RatPoly chi = charpoly(E);
            Rat shift = Rat(int_pow(Int(2), (unsigned long)(k - 1))) +
                        Rat(int_pow(Int(2), (unsigned long)(k - 2)));
            rep.maass = chi.shift_arg(-shift); // chi(x - s): roots beta + s
        }
    }

    RatPoly rem = rep.full, q;
    if (!divides_exactly(rep.eisenstein, rem, &q))
        throw std::logic_error("split_charpoly: Eisenstein factor does not divide");
    rem = q;
    if (!divides_exactly(rep.klingen, rem, &q))
        throw std::logic_error("split_charpoly: Klingen factor does not divide");
    rem = q;
    if (!divides_exactly(rep.maass, rem, &q))
        throw std::logic_error("split_charpoly: Maass factor does not divide");
    rep.sprime = q;

    if (rep.sprime.degree() <= 0) {
        rep.sprime_irreducible = true;
    } else {
        auto fac = factor_over_Q(rep.sprime);
        for (auto& [f, mult] : fac.factors)
            for (int t = 0; t < mult; ++t) rep.sprime_factors.push_back(f);
        rep.sprime_irreducible = (rep.sprime_factors.size() == 1);
    }
    return rep;
}

SplitReport split_charpoly(long k) {
    if (k < 10 || k % 2 != 0) throw std::domain_error("split_charpoly: even k >= 10");
    auto basis = product_basis(k);
    QMatrix t2 = t2_matrix(basis);
    return split_charpoly(basis, t2);
}

// --- eigenforms ----------------------------------------------------------------

NFElem EigenformHandle::a_coeff(const BQF& T) const {
    NFElem acc = NFElem::from_rat(field, rat(0));
    BQF red = is_reduced(T) ? T : reduce(T).form;
    for (size_t l = 0; l < coords.size(); ++l) {
        if (coords[l].is_zero()) continue;
        Rat al = basis->sources[l]->coeff(red);
        if (al != 0) acc = acc + al * coords[l];
    }
    return acc;
}

std::vector<EigenformHandle> eigenforms(std::shared_ptr<ProductBasis> basis,
                                        const QMatrix& t2, const SplitReport& split) {
    std::vector<EigenformHandle> out;
    long k = basis->weight;
    char letter = 'a';
    for (const RatPoly& m : split.sprime_factors) {
        auto F = std::make_shared<NumberField>(m);
        FieldPtr Fp = F;
        size_t dim = (size_t)basis->dim;
        // solve (t2 - x I) v = 0 over Q[x]/(m) by field Gaussian elimination
        std::vector<std::vector<NFElem>> A(dim, std::vector<NFElem>(dim));
        NFElem x = (m.degree() >= 2) ? NFElem::generator(Fp)
                                     : NFElem::from_rat(Fp, -m.c[0]); // root of linear m
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j) {
                A[i][j] = NFElem::from_rat(Fp, t2.at(i, j));
                if (i == j) A[i][j] = A[i][j] - x;
            }
        // elimination
        std::vector<long> pivot_col(dim, -1);
        size_t row = 0;
        for (size_t col = 0; col < dim && row < dim; ++col) {
            size_t piv = row;
            while (piv < dim && A[piv][col].is_zero()) ++piv;
            if (piv == dim) continue;
            std::swap(A[piv], A[row]);
            NFElem inv = nf_inverse(A[row][col]);
            for (size_t c = 0; c < dim; ++c) A[row][c] = A[row][c] * inv;
            for (size_t i = 0; i < dim; ++i) {
                if (i == row || A[i][col].is_zero()) continue;
                NFElem f = A[i][col];
                for (size_t c = 0; c < dim; ++c) A[i][c] = A[i][c] - f * A[row][c];
            }
            pivot_col[col] = (long)row;
            ++row;
        }
        // free columns give the kernel; eigenvalue multiplicity one expected
        std::vector<size_t> free_cols;
        for (size_t col = 0; col < dim; ++col)
            if (pivot_col[col] < 0) free_cols.push_back(col);
        if (free_cols.size() != 1)
            throw std::logic_error("eigenforms: eigenspace dimension != 1");
        size_t fc = free_cols[0];
        std::vector<NFElem> v(dim, NFElem::from_rat(Fp, rat(0)));
        v[fc] = NFElem::from_rat(Fp, rat(1));
        for (size_t col = 0; col < dim; ++col)
            if (pivot_col[col] >= 0) v[col] = NFElem::from_rat(Fp, rat(0)) - A[(size_t)pivot_col[col]][fc];
        // normalize: first nonzero coordinate = 1
        size_t ni = 0;
        while (ni < dim && v[ni].is_zero()) ++ni;
        if (ni == dim) throw std::logic_error("eigenforms: zero eigenvector");
        NFElem inv = nf_inverse(v[ni]);
        for (auto& c : v) c = c * inv;

        EigenformHandle h;
        h.weight = k;
        h.constituent = m;
        h.field = Fp;
        h.coords = std::move(v);
        h.norm_index = ni;
        h.basis = basis;
        h.tag = std::to_string(k) + std::string(1, letter++);
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<EigenformHandle> eigenforms(long k) {
    auto basis = std::make_shared<ProductBasis>(product_basis(k));
    QMatrix t2 = t2_matrix(*basis);
    auto split = split_charpoly(*basis, t2);
    return eigenforms(basis, t2, split);
}

// --- eigenvalues ------------------------------------------------------------------

namespace {
const BQF T0{1, 1, 1};

NFElem linear_b_over_a(const EigenformHandle& f, const std::function<Rat(SiegelSource&)>& bfun) {
    NFElem num = NFElem::from_rat(f.field, rat(0));
    NFElem den = f.a_coeff(T0);
    if (den.is_zero()) throw std::domain_error("eigenform has a(T0) = 0");
    for (size_t l = 0; l < f.coords.size(); ++l) {
        if (f.coords[l].is_zero()) continue;
        Rat bl = bfun(*f.basis->sources[l]);
        if (bl != 0) num = num + bl * f.coords[l];
    }
    return num / den;
}
} // namespace

NFElem lambda_via_action(const EigenformHandle& f, long p) {
    return linear_b_over_a(f, [&](SiegelSource& s) { return hecke_tp_coeff(s, p, T0); });
}

NFElem lambda2_via_action(const EigenformHandle& f, long p) {
    return linear_b_over_a(f, [&](SiegelSource& s) { return hecke_tp2_coeff(s, p, T0); });
}

NFElem lambda_andrianov(const EigenformHandle& f, long n) {
    if (n <= 0) throw std::domain_error("lambda_andrianov: n >= 1");
    long k = f.weight;
    NFElem aT0 = f.a_coeff(T0);
    if (aT0.is_zero()) throw std::domain_error("eigenform has a(T0) = 0");
    auto r_fun = [&](long a) {
        long acc = 0;
        for (long d : divisors(a)) acc += kronecker(-3, d);
        return acc;
    };
    auto u_fun = [&](long m) {
        long acc = 0;
        for (long b = 1; b * b <= m; ++b) {
            if (m % (b * b) != 0) continue;
            int mu = moebius(b);
            if (mu == 0) continue;
            acc += mu * r_fun(m / (b * b));
        }
        return acc;
    };
    NFElem total = NFElem::from_rat(f.field, rat(0));
    for (long d : divisors(n)) {
        long m = n / d;
        long um = u_fun(m);
        if (um == 0) continue;
        // A(d) = sum_{e^2 | d} e^{2k-4} a_f((d/e^2) T0)
        NFElem Ad = NFElem::from_rat(f.field, rat(0));
        for (long e = 1; e * e <= d; ++e) {
            if (d % (e * e) != 0) continue;
            long dd = d / (e * e);
            NFElem av = f.a_coeff(BQF{dd, dd, dd});
            if (av.is_zero()) continue;
            Ad = Ad + Rat(int_pow(Int(e), (unsigned long)(2 * k - 4))) * av;
        }
        if (Ad.is_zero()) continue;
        total = total + (Rat(um) * Rat(int_pow(Int(m), (unsigned long)(k - 2)))) * Ad;
    }
    return total / aT0;
}

std::vector<NFElem> SpinorEulerFactor::q_coeffs() const {
    Rat p2k4(int_pow(Int(p), (unsigned long)(2 * weight - 4)));
    Rat p2k3(int_pow(Int(p), (unsigned long)(2 * weight - 3)));
    Rat p4k6(int_pow(Int(p), (unsigned long)(4 * weight - 6)));
    FieldPtr F = lambda_p.F;
    NFElem one = NFElem::from_rat(F, rat(1));
    std::vector<NFElem> q(5, NFElem::from_rat(F, rat(0)));
    q[0] = one;
    q[1] = NFElem::from_rat(F, rat(0)) - lambda_p;
    q[2] = lambda_p * lambda_p - lambda_p2 - NFElem::from_rat(F, p2k4);
    q[3] = NFElem::from_rat(F, rat(0)) - p2k3 * lambda_p;
    q[4] = NFElem::from_rat(F, p4k6);
    return q;
}

std::map<long, NFElem> lambda_table_exact(const EigenformHandle& f, long P, long N) {
    std::map<long, NFElem> table;
    FieldPtr F = f.field;
    NFElem one = NFElem::from_rat(F, rat(1));
    table[1] = one;
    long k = f.weight;

    // smooth support
    std::vector<bool> smooth((size_t)N + 1, true);
    for (long q = 2; q <= N; ++q) {
        if (!is_prime(q)) continue;
        if (q < P) continue;
        for (long t = q; t <= N; t += q) smooth[(size_t)t] = false;
    }

    for (long p = 2; p < P && p <= N; ++p) {
        if (!is_prime(p)) continue;
        NFElem lp = lambda_via_action(f, p);
        table[p] = lp;
        long maxnu = 0;
        for (long q = p; q <= N; q *= p) {
            ++maxnu;
            if (q > N / p) break;
        }
        if (p * p <= N) {
            SpinorEulerFactor ef;
            ef.p = p;
            ef.weight = k;
            ef.lambda_p = lp;
            ef.lambda_p2 = lambda2_via_action(f, p);
            table[p * p] = ef.lambda_p2;
            auto qc = ef.q_coeffs();
            // lambda(p^nu) = sum_{t=1..4} -q[t] lambda(p^{nu-t}) for nu >= 3
            std::vector<NFElem> lam = {one, lp, ef.lambda_p2};
            long pnu = p * p;
            for (long nu = 3;; ++nu) {
                if (pnu > N / p) break;
                pnu *= p;
                NFElem acc = NFElem::from_rat(F, rat(0));
                for (long t = 1; t <= 4 && t <= nu; ++t)
                    acc = acc - qc[(size_t)t] * lam[(size_t)(nu - t)];
                lam.push_back(acc);
                table[pnu] = acc;
            }
        }
    }
    // composites by multiplicativity
    for (long n = 2; n <= N; ++n) {
        if (!smooth[(size_t)n] || table.count(n)) continue;
        // factor out the largest prime power
        long m = n;
        long p = 0;
        for (long q = 2; q * q <= m; ++q)
            if (m % q == 0) { p = q; break; }
        if (p == 0) continue; // prime >= P: not smooth, skipped above
        long pe = 1;
        while (m % p == 0) { m /= p; pe *= p; }
        auto it1 = table.find(pe);
        auto it2 = table.find(m);
        if (it1 == table.end() || it2 == table.end())
            throw std::logic_error("lambda_table_exact: missing local data");
        table[n] = it1->second * it2->second;
    }
    return table;
}

size_t num_real_embeddings(const EigenformHandle& f) {
    if (f.constituent.degree() == 1) return 1;
    return (size_t)count_real_roots(f.constituent);
}

std::map<long, Real> lambda_table_embedded(const EigenformHandle& f, long P, long N,
                                           size_t embedding, long bits) {
    auto exact = lambda_table_exact(f, P, N);
    std::map<long, Real> out;
    if (f.constituent.degree() == 1) {
        Rat root = -f.constituent.c[0];
        (void)root;
        for (auto& [n, v] : exact) {
            Rat q;
            if (!v.is_rational(&q)) throw std::logic_error("rational field with irrational value");
            out.emplace(n, Real(q, (mpfr_prec_t)bits));
        }
        return out;
    }
    for (auto& [n, v] : exact) {
        auto rep = nf_real_embeddings(v, bits);
        if (embedding >= rep.values.size())
            throw std::domain_error("lambda_table_embedded: embedding index out of range");
        out.emplace(n, rep.values[embedding]);
    }
    return out;
}

// --- coordinate reports ----------------------------------------------------------

std::vector<CoordinateReport> coordinates_report(long k) {
    auto efs = eigenforms(k);
    std::vector<CoordinateReport> out;
    for (auto& f : efs) {
        if (f.constituent.degree() != 1)
            throw std::domain_error("coordinates_report expects rational eigenforms");
        CoordinateReport rep;
        rep.tag = f.tag;
        for (auto& c : f.coords) {
            Rat q;
            c.is_rational(&q);
            rep.coords.push_back(q);
            rep.zero_pattern.push_back(q == 0);
        }
        Int largest = 0;
        for (auto& q : rep.coords) {
            std::ostringstream os;
            if (q == 0) {
                os << "0";
            } else {
                auto fn = factor_integer(q.get_num());
                auto fd = factor_integer(q.get_den());
                auto print = [&](const Factorization& fac, const Int& whole) {
                    if (fac.factors.empty()) { os << whole.get_str(); return; }
                    bool first = true;
                    if (whole < 0) os << "-";
                    for (auto& [pr, e] : fac.factors) {
                        if (!first) os << "*";
                        os << pr.get_str();
                        if (e > 1) os << "^" << e;
                        first = false;
                        if (fac.complete && pr > largest) largest = pr;
                    }
                };
                print(fn, q.get_num());
                if (q.get_den() != 1) {
                    os << " / ";
                    print(fd, q.get_den());
                }
            }
            rep.factored.push_back(os.str());
        }
        rep.largest_prime = largest;
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace smf2
