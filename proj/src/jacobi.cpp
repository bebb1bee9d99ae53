#include "smf2/jacobi.hpp"
#include "smf2/arith.hpp"
#include "smf2/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace smf2 {

namespace {

// smallest-prime-factor sieve, grown on demand
std::vector<int32_t> g_spf = {0, 1};
std::mutex g_spf_mu;

void ensure_spf(long n) {
    std::lock_guard<std::mutex> lk(g_spf_mu);
    if ((long)g_spf.size() > n) return;
    size_t old = g_spf.size();
    size_t want = (size_t)n + 1;
    g_spf.resize(want, 0);
    // redo the sieve from scratch (simple and rare)
    for (size_t i = 0; i < want; ++i) g_spf[i] = 0;
    if (want > 1) g_spf[1] = 1;
    for (size_t p = 2; p < want; ++p) {
        if (g_spf[p] != 0) continue;
        for (size_t q = p; q < want; q += p)
            if (g_spf[q] == 0) g_spf[q] = (int32_t)p;
    }
    (void)old;
}

long spf(long n) { return g_spf[n]; }

// M = M0 * f^2 with M0 a fundamental discriminant (or +1), sign preserved.
// Pre: M != 0, M = 0 or 1 mod 4.
void split_disc_signed(long M, long& M0, long& f) {
    auto ok = [](long d) {
        if (d == 1) return true;
        long r = ((d % 4) + 4) % 4;
        auto squarefree = [](long m) {
            m = std::abs(m);
            for (long p = 2; p * p <= m; ++p)
                if (m % (p * p) == 0) return false;
            return true;
        };
        if (r == 1) return squarefree(d);
        if (r == 0) {
            long q = d / 4;
            long qr = ((q % 4) + 4) % 4;
            return (qr == 2 || qr == 3) && squarefree(q);
        }
        return false;
    };
    long A = std::abs(M);
    for (long g = (long)std::sqrt((double)A) + 1; g >= 1; --g) {
        if (g * g > A || A % (g * g) != 0) continue;
        long cand = M / (g * g);
        long r = ((cand % 4) + 4) % 4;
        if ((r == 0 || r == 1) && ok(cand)) {
            M0 = cand;
            f = g;
            return;
        }
    }
    throw std::logic_error("split_disc_signed failed");
}

// L(1 - r, chi_D0) for D0 fundamental (or 1), via generalized Bernoulli
// numbers expanded into character power sums:
//   B_{r,chi} = sum_j C(r,j) B_j |D|^{j-1} S_{r-j},  S_m = sum_a chi(a) a^m.
Rat L_one_minus_r(long r, long D0) {
    if (D0 == 1) {
        // zeta(1-r), r >= 2 here
        return -bernoulli((unsigned)r) / Rat(r);
    }
    long q = std::abs(D0);
    ensure_spf(q);
    // character values by multiplicativity over the spf sieve
    std::vector<int8_t> chi((size_t)q + 1, 0);
    chi[1] = 1;
    for (long a = 2; a <= q; ++a) {
        long p = spf(a);
        int8_t cp;
        if (a == p) {
            cp = (int8_t)kronecker(D0, p);
            chi[a] = cp;
        } else {
            chi[a] = (int8_t)(chi[p] * chi[a / p]);
        }
    }
    // power sums S_m = sum_{a=1}^{q} chi(a) a^m for m = 0..r (exact)
    std::vector<Int> S((size_t)r + 1, 0);
    for (long a = 1; a <= q; ++a) {
        if (chi[a] == 0) continue;
        Int pw = 1;
        for (long m = 0; m <= r; ++m) {
            if (chi[a] > 0) S[m] += pw;
            else S[m] -= pw;
            if (m < r) pw *= a;
        }
    }
    Rat B = 0;
    Int binom = 1; // C(r, j)
    for (long j = 0; j <= r; ++j) {
        if (j > 0) {
            binom *= (r - j + 1);
            binom /= j;
        }
        Rat bj = bernoulli((unsigned)j);
        if (bj != 0 && S[r - j] != 0) {
            // |D|^{j-1}
            Rat dp = (j >= 1) ? Rat(int_pow(Int(q), (unsigned long)(j - 1)))
                              : Rat(1, q);
            B += Rat(binom) * bj * dp * Rat(S[r - j]);
        }
    }
    return -B / Rat(r);
}

Rat cohen_from_L(long r, long N, const Rat& Lval, long f) {
    // H(r, N) = L(1-r, chi_D0) * sum_{d | f} mu(d) chi_D0(d) d^{r-1} sigma_{2r-1}(f/d)
    long D0sign = (r % 2 == 1) ? -1 : 1;
    long M = D0sign * N;
    long M0 = M / (f * f);
    Rat sum = 0;
    for (long d : divisors(f)) {
        int mu = moebius(d);
        if (mu == 0) continue;
        int ch = kronecker(M0, d);
        if (ch == 0) continue;
        sum += Rat(mu * ch) * Rat(int_pow(Int(d), (unsigned long)(r - 1))) *
               Rat(sigma_pow(f / d, (unsigned)(2 * r - 1)));
    }
    return Lval * sum;
}

} // namespace

Rat cohen_H(long r, long N) {
    if (r < 1) throw std::domain_error("cohen_H: r >= 1");
    if (N < 0) throw std::domain_error("cohen_H: N >= 0");
    if (N == 0) return -bernoulli((unsigned)(2 * r)) / Rat(2 * r);
    long M = (r % 2 == 1) ? -N : N;
    long rem = ((M % 4) + 4) % 4;
    if (rem != 0 && rem != 1) return rat(0);
    long M0, f;
    split_disc_signed(M, M0, f);
    Rat L = L_one_minus_r(r, M0);
    return cohen_from_L(r, N, L, f);
}

std::vector<Rat> cohen_H_table(long r, long X) {
    if (r < 1 || X < 0) throw std::domain_error("cohen_H_table arguments");
    std::vector<Rat> out((size_t)X + 1, rat(0));
    out[0] = -bernoulli((unsigned)(2 * r)) / Rat(2 * r);
    ensure_spf(std::max<long>(X, 2));
    // L-values per fundamental discriminant, on demand
    std::map<long, Rat> Lcache;
    for (long N = 1; N <= X; ++N) {
        long M = (r % 2 == 1) ? -N : N;
        long rem = ((M % 4) + 4) % 4;
        if (rem != 0 && rem != 1) continue;
        long M0, f;
        split_disc_signed(M, M0, f);
        auto it = Lcache.find(M0);
        if (it == Lcache.end()) it = Lcache.emplace(M0, L_one_minus_r(r, M0)).first;
        out[N] = cohen_from_L(r, N, it->second, f);
    }
    return out;
}

// --- Jacobi forms -------------------------------------------------------

namespace {
const Rat g_zero = rat(0);

// integer q-expansion of E_k (k = 4 or 6), cached
std::shared_ptr<const std::vector<Int>> eis_int_series(int k, size_t prec) {
    static std::map<std::pair<int, size_t>, std::shared_ptr<const std::vector<Int>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto key = std::make_pair(k, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto v = std::make_shared<std::vector<Int>>(prec, Int(0));
    (*v)[0] = 1;
    long mult = (k == 4) ? 240 : -504;
    for (size_t n = 1; n < prec; ++n) (*v)[n] = mult * sigma_pow((long)n, (unsigned)(k - 1));
    cache[key] = v;
    return v;
}

// integer q-expansion of E4^a * E6^b, cached
std::shared_ptr<const std::vector<Int>> monomial_int_series(long a, long b, size_t prec) {
    static std::map<std::tuple<long, long, size_t>, std::shared_ptr<const std::vector<Int>>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(std::make_tuple(a, b, prec));
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<const std::vector<Int>> acc;
    if (a == 0 && b == 0) {
        auto v = std::make_shared<std::vector<Int>>(prec, Int(0));
        (*v)[0] = 1;
        acc = v;
    } else if (a > 0) {
        auto left = monomial_int_series(a - 1, b, prec);
        auto right = eis_int_series(4, prec);
        auto v = std::make_shared<std::vector<Int>>(prec, Int(0));
        for (size_t i = 0; i < prec; ++i) {
            if ((*left)[i] == 0) continue;
            for (size_t j = 0; i + j < prec; ++j)
                if ((*right)[j] != 0) (*v)[i + j] += (*left)[i] * (*right)[j];
        }
        acc = v;
    } else {
        auto left = monomial_int_series(0, b - 1, prec);
        auto right = eis_int_series(6, prec);
        auto v = std::make_shared<std::vector<Int>>(prec, Int(0));
        for (size_t i = 0; i < prec; ++i) {
            if ((*left)[i] == 0) continue;
            for (size_t j = 0; i + j < prec; ++j)
                if ((*right)[j] != 0) (*v)[i + j] += (*left)[i] * (*right)[j];
        }
        acc = v;
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[std::make_tuple(a, b, prec)] = acc;
    return acc;
}

// integer c-tables of E_{4,1} and E_{6,1} up to Dmax, cached.
// E_{k,1}: c(D) = H(k-1, D) / H(k-1, 0), integral for k = 4, 6.
std::shared_ptr<const std::vector<Int>> base_eis_table(int k, long Dmax) {
    static std::map<std::pair<int, long>, std::shared_ptr<const std::vector<Int>>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lk(mu);
        // reuse any deep-enough table
        for (auto& [key, tab] : cache)
            if (key.first == k && key.second >= Dmax) return tab;
    }
    long r = k - 1;
    auto H = cohen_H_table(r, Dmax);
    Rat H0 = H[0];
    auto v = std::make_shared<std::vector<Int>>((size_t)Dmax + 1, Int(0));
    for (long D = 0; D <= Dmax; ++D) {
        if (H[D] == 0) continue;
        Rat c = H[D] / H0;
        if (c.get_den() != 1) throw std::logic_error("E_{k,1} table not integral");
        (*v)[D] = c.get_num();
    }
    std::lock_guard<std::mutex> lk(mu);
    cache[std::make_pair(k, Dmax)] = v;
    return v;
}

} // namespace

const Rat& JacobiIndex1Form::c(long D) const {
    if (D < 0) return g_zero;
    long rem = D % 4;
    if (rem == 1 || rem == 2) return g_zero;
    if (D > Dmax) throw ExtendPrecisionError(D);
    return (*table)[(size_t)D];
}

JacobiIndex1Form jacobi_eisenstein(long k, long Dmax) {
    if (k < 4 || k % 2 != 0) throw std::domain_error("jacobi_eisenstein: k even >= 4");
    JacobiIndex1Form f;
    f.weight = k;
    f.Dmax = Dmax;
    f.kind = JacobiIndex1Form::COHEN_EIS;
    if (k == 4 || k == 6) {
        auto base = base_eis_table((int)k, Dmax);
        auto v = std::make_shared<std::vector<Rat>>((size_t)Dmax + 1, rat(0));
        for (long D = 0; D <= Dmax; ++D) (*v)[D] = Rat((*base)[D]);
        f.table = v;
        f.recipe = {{(int)k, 0, 0, rat(1)}};
        f.kind = JacobiIndex1Form::COMBO;
        return f;
    }
    auto H = cohen_H_table(k - 1, Dmax);
    auto v = std::make_shared<std::vector<Rat>>((size_t)Dmax + 1, rat(0));
    Rat H0 = H[0];
    for (long D = 0; D <= Dmax; ++D) (*v)[D] = H[D] / H0;
    f.table = v;
    return f;
}

JacobiIndex1Form build_combo(long weight, std::vector<JTerm> terms, long Dmax) {
    auto v = std::make_shared<std::vector<Rat>>((size_t)Dmax + 1, rat(0));
    size_t prec = (size_t)(Dmax / 4) + 1;
    for (const auto& t : terms) {
        if (t.eis != 4 && t.eis != 6) throw std::domain_error("combo term eis weight");
        if (t.coeff == 0) continue;
        auto base = base_eis_table(t.eis, Dmax);
        auto ell = monomial_int_series(t.e4, t.e6, prec);
        // c(D) += coeff * sum_m ell[m] * base[D - 4m]
        Int acc;
        for (long D = 0; D <= Dmax; ++D) {
            long rem = D % 4;
            if (rem == 1 || rem == 2) continue;
            acc = 0;
            for (long m = 0; 4 * m <= D; ++m) {
                const Int& e = (*ell)[(size_t)m];
                const Int& b = (*base)[(size_t)(D - 4 * m)];
                if (e == 0 || b == 0) continue;
                mpz_addmul(acc.get_mpz_t(), e.get_mpz_t(), b.get_mpz_t());
            }
            if (acc != 0) (*v)[(size_t)D] += t.coeff * Rat(acc);
        }
    }
    JacobiIndex1Form f;
    f.weight = weight;
    f.Dmax = Dmax;
    f.kind = JacobiIndex1Form::COMBO;
    f.recipe = std::move(terms);
    f.table = v;
    return f;
}

JacobiIndex1Form extend_to(const JacobiIndex1Form& f, long newDmax) {
    if (newDmax <= f.Dmax) return f;
    switch (f.kind) {
        case JacobiIndex1Form::COMBO:
            return build_combo(f.weight, f.recipe, newDmax);
        case JacobiIndex1Form::COHEN_EIS:
            return jacobi_eisenstein(f.weight, newDmax);
        default:
            throw ExtendPrecisionError(newDmax);
    }
}

std::vector<JacobiIndex1Form> jacobi_space(long k, long Dmax) {
    if (k % 2 != 0 || k < 0) throw std::domain_error("jacobi_space: even k");
    std::vector<JacobiIndex1Form> out;
    if (k < 4) return out;
    size_t prec = (size_t)(Dmax / 4) + 1;
    for (int eis : {4, 6}) {
        long kw = k - eis;
        if (dim_M(kw) == 0) continue;
        auto vm = victor_miller_basis(kw, std::max<size_t>(prec, (size_t)dim_M(kw) + 1));
        // expand each VM form over the monomials E4^a E6^b of weight kw
        std::vector<std::pair<long, long>> monos;
        for (long b = 0; 6 * b <= kw; ++b)
            if ((kw - 6 * b) % 4 == 0) monos.push_back({(kw - 6 * b) / 4, b});
        // coefficient matrix of monomials (rows: q-powers, cols: monomials)
        size_t d = monos.size();
        QMatrix M(d, d);
        std::vector<QSeries> ms;
        for (size_t j = 0; j < d; ++j) {
            auto s = monomial_int_series(monos[j].first, monos[j].second, d + 1);
            QSeries qs(kw, d + 1);
            for (size_t i = 0; i <= d; ++i) qs.a[i] = Rat((*s)[i]);
            ms.push_back(qs);
            for (size_t i = 0; i < d; ++i) M.at(i, j) = qs.a[i];
        }
        for (auto& f : vm) {
            std::vector<Rat> rhs(d);
            for (size_t i = 0; i < d; ++i) rhs[i] = f.coeff(i);
            std::vector<Rat> x;
            if (!solve_linear(M, rhs, x)) throw std::logic_error("monomial solve failed");
            std::vector<JTerm> terms;
            for (size_t j = 0; j < d; ++j)
                if (x[j] != 0) terms.push_back({eis, monos[j].first, monos[j].second, x[j]});
            out.push_back(build_combo(k, std::move(terms), Dmax));
        }
    }
    // independence check up to Dmax
    if (!out.empty()) {
        std::vector<long> valid;
        for (long D = 0; D <= Dmax; ++D)
            if (D % 4 == 0 || D % 4 == 3) valid.push_back(D);
        QMatrix M(out.size(), valid.size());
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = 0; j < valid.size(); ++j) M.at(i, j) = out[i].c(valid[j]);
        size_t r = 0;
        for (uint64_t p : {multimod_primes()[0]}) r = std::max(r, rank_mod_p(M, p));
        if (r < out.size())
            throw std::runtime_error("jacobi_space: Dmax too small to echelonize");
    }
    return out;
}

QSeries dev_D0(const JacobiIndex1Form& phi, size_t prec) {
    if (4 * (long)(prec - 1) > phi.Dmax) throw std::domain_error("dev_D0: insufficient Dmax");
    QSeries s(phi.weight, prec);
    for (long n = 0; n < (long)prec; ++n) {
        Rat acc = phi.c(4 * n);
        for (long r = 1; r * r <= 4 * n; ++r) acc += 2 * phi.c(4 * n - r * r);
        s.a[(size_t)n] = acc;
    }
    return s;
}

QSeries dev_D2(const JacobiIndex1Form& phi, size_t prec) {
    if (4 * (long)(prec - 1) > phi.Dmax) throw std::domain_error("dev_D2: insufficient Dmax");
    QSeries s(phi.weight + 2, prec);
    long k = phi.weight;
    for (long n = 0; n < (long)prec; ++n) {
        Rat acc = Rat(-2 * n) * phi.c(4 * n);
        for (long r = 1; r * r <= 4 * n; ++r)
            acc += Rat(2 * (k * r * r - 2 * n)) * phi.c(4 * n - r * r);
        s.a[(size_t)n] = acc;
    }
    return s;
}

std::string JacobiLabel::str() const {
    std::ostringstream os;
    os << weight << (upper ? "|^" : "|_") << index;
    return os.str();
}

std::vector<LabeledJacobiForm> spezialschar_labels(long k, long Dmax) {
    long dM = dim_M(k), dS2 = dim_S(k + 2);
    long dimJ = dM + dS2;
    std::vector<LabeledJacobiForm> out;
    if (dimJ == 0) return out;
    long n0 = dimJ + 3; // rows of each development used in the solve
    long needD = 4 * n0;
    long useD = std::max(Dmax, needD);
    auto space = jacobi_space(k, useD);
    if ((long)space.size() != dimJ) throw std::logic_error("spezialschar: dimension mismatch");

    // stacked development matrix: rows = D0 coeffs 0..n0-1 then D2 coeffs 0..n0-1
    QMatrix A(2 * n0, dimJ);
    for (long j = 0; j < dimJ; ++j) {
        QSeries d0 = dev_D0(space[j], (size_t)n0);
        QSeries d2 = dev_D2(space[j], (size_t)n0);
        for (long i = 0; i < n0; ++i) {
            A.at((size_t)i, (size_t)j) = d0.a[(size_t)i];
            A.at((size_t)(n0 + i), (size_t)j) = d2.a[(size_t)i];
        }
    }
    auto vmk = victor_miller_basis(k, (size_t)n0);
    auto vmk2 = victor_miller_basis(k + 2, (size_t)n0);

    auto solve_for = [&](const std::vector<Rat>& rhs) {
        // pick dimJ independent rows, solve, verify the rest
        QMatrix S((size_t)dimJ, (size_t)dimJ);
        std::vector<Rat> b((size_t)dimJ);
        std::vector<size_t> chosen;
        {
            // exact greedy row selection
            QMatrix W(0, 0);
            std::vector<std::vector<Rat>> rows;
            for (size_t i = 0; i < A.rows && (long)chosen.size() < dimJ; ++i) {
                std::vector<Rat> cand(A.a.begin() + i * A.cols, A.a.begin() + (i + 1) * A.cols);
                rows.push_back(cand);
                QMatrix T(rows.size(), A.cols);
                for (size_t r2 = 0; r2 < rows.size(); ++r2)
                    for (size_t c2 = 0; c2 < A.cols; ++c2) T.at(r2, c2) = rows[r2][c2];
                if (rank_exact(T) == rows.size()) chosen.push_back(i);
                else rows.pop_back();
            }
        }
        if ((long)chosen.size() != dimJ)
            throw std::runtime_error("spezialschar: singular solve (development rank drop)");
        for (long i = 0; i < dimJ; ++i) {
            for (long j = 0; j < dimJ; ++j) S.at((size_t)i, (size_t)j) = A.at(chosen[(size_t)i], (size_t)j);
            b[(size_t)i] = rhs[chosen[(size_t)i]];
        }
        std::vector<Rat> x;
        if (!solve_linear(S, b, x)) throw std::runtime_error("spezialschar: singular solve");
        // consistency on all rows
        for (size_t i = 0; i < A.rows; ++i) {
            Rat acc = 0;
            for (long j = 0; j < dimJ; ++j) acc += A.at(i, (size_t)j) * x[(size_t)j];
            if (acc != rhs[i]) throw std::runtime_error("spezialschar: inconsistent solve");
        }
        return x;
    };

    auto combine = [&](const std::vector<Rat>& x) {
        std::vector<JTerm> terms;
        for (long j = 0; j < dimJ; ++j) {
            if (x[(size_t)j] == 0) continue;
            for (const auto& t : space[(size_t)j].recipe) {
                JTerm nt = t;
                nt.coeff *= x[(size_t)j];
                terms.push_back(nt);
            }
        }
        // merge identical monomial terms
        std::map<std::tuple<int, long, long>, Rat> merged;
        for (auto& t : terms) merged[std::make_tuple(t.eis, t.e4, t.e6)] += t.coeff;
        std::vector<JTerm> final_terms;
        for (auto& [key, coeff] : merged)
            if (coeff != 0)
                final_terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), coeff});
        return build_combo(k, std::move(final_terms), useD);
    };

    for (long i = 0; i < dM; ++i) {
        std::vector<Rat> rhs(2 * (size_t)n0, rat(0));
        for (long t = 0; t < n0; ++t) rhs[(size_t)t] = vmk[(size_t)i].coeff((size_t)t);
        out.push_back({{k, false, i}, combine(solve_for(rhs))});
    }
    for (long i = 1; i <= dS2; ++i) {
        std::vector<Rat> rhs(2 * (size_t)n0, rat(0));
        for (long t = 0; t < n0; ++t) rhs[(size_t)(n0 + t)] = vmk2[(size_t)i].coeff((size_t)t);
        out.push_back({{k, true, i}, combine(solve_for(rhs))});
    }
    return out;
}

} // namespace smf2
