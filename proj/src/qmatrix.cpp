#include "smf2/qmatrix.hpp"
#include "smf2/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace smf2 {

namespace {

using u64 = uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((__uint128_t)a * b % p); }
u64 addmod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
u64 submod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }
u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
u64 invmod(u64 a, u64 p) { return powmod(a % p, p - 2, p); }

u64 rat_mod_p(const Rat& q, u64 p) {
    u64 n = mpz_fdiv_ui(q.get_num().get_mpz_t(), (unsigned long)p);
    u64 d = mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p);
    if (d == 0) throw std::runtime_error("denominator vanishes mod p");
    return mulmod(n, invmod(d, p), p);
}

// Hessenberg-form characteristic polynomial mod p, O(n^3).
std::vector<u64> charpoly_mod_p(std::vector<u64> m, size_t n, u64 p) {
    auto at = [&](size_t i, size_t j) -> u64& { return m[i * n + j]; };
    // reduce to upper Hessenberg
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t piv = j + 1;
        while (piv < n && at(piv, j) == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            for (size_t k = 0; k < n; ++k) std::swap(at(piv, k), at(j + 1, k));
            for (size_t k = 0; k < n; ++k) std::swap(at(k, piv), at(k, j + 1));
        }
        u64 inv = invmod(at(j + 1, j), p);
        for (size_t i = j + 2; i < n; ++i) {
            if (at(i, j) == 0) continue;
            u64 f = mulmod(at(i, j), inv, p);
            for (size_t k = 0; k < n; ++k) at(i, k) = submod(at(i, k), mulmod(f, at(j + 1, k), p), p);
            for (size_t k = 0; k < n; ++k) at(k, j + 1) = addmod(at(k, j + 1), mulmod(f, at(k, i), p), p);
        }
    }
    // char poly by recursion on leading principal Hessenberg minors
    std::vector<std::vector<u64>> c(n + 1);
    c[0] = {1};
    for (size_t i = 1; i <= n; ++i) {
        // c_i(x) = (x - h_{ii}) c_{i-1}(x) - sum_{k<i} h_{k,i} (prod_{j=k+1..i-1} h_{j+1? subdiag}) c_{k-1}
        c[i].assign(i + 1, 0);
        for (size_t t = 0; t < c[i - 1].size(); ++t) {
            c[i][t + 1] = addmod(c[i][t + 1], c[i - 1][t], p);
            c[i][t] = submod(c[i][t], mulmod(at(i - 1, i - 1), c[i - 1][t], p), p);
        }
        u64 beta = 1;
        for (size_t k = i - 1; k >= 1; --k) {
            beta = mulmod(beta, at(k, k - 1), p);
            if (beta == 0) break;
            u64 f = mulmod(beta, at(k - 1, i - 1), p);
            if (f != 0) {
                for (size_t t = 0; t < c[k - 1].size(); ++t)
                    c[i][t] = submod(c[i][t], mulmod(f, c[k - 1][t], p), p);
            }
        }
    }
    return c[n];
}

} // namespace

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix operator*(const QMatrix& A, const QMatrix& B) {
    if (A.cols != B.rows) throw std::domain_error("matrix size mismatch");
    QMatrix C(A.rows, B.cols);
    for (size_t i = 0; i < A.rows; ++i)
        for (size_t k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (size_t j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

bool operator==(const QMatrix& A, const QMatrix& B) {
    return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

const std::vector<u64>& multimod_primes() {
    static std::vector<u64> primes = [] {
        std::vector<u64> v;
        u64 cand = (1ull << 62) - 57;
        while (v.size() < 4096) {
            Int m((unsigned long)cand);
            if (mpz_probab_prime_p(m.get_mpz_t(), 30)) v.push_back(cand);
            cand -= 2;
        }
        return v;
    }();
    return primes;
}

RatPoly charpoly(const QMatrix& M) {
    if (M.rows != M.cols) throw std::domain_error("charpoly of non-square matrix");
    size_t n = M.rows;
    if (n == 0) return RatPoly::constant(rat(1));

    // scale to integer matrix N = L*M; chi_M(x) = L^-n chi_N(Lx)
    Int L = 1;
    for (const Rat& q : M.a) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Int> N(n * n);
    Int maxabs = 1;
    for (size_t i = 0; i < n * n; ++i) {
        N[i] = M.a[i].get_num() * (L / M.a[i].get_den());
        Int v = abs(N[i]);
        if (v > maxabs) maxabs = v;
    }
    // coefficient bound: |c_j| <= C(n,j) * (sqrt(n) * maxabs)^n <= (2*sqrt(n)*maxabs)^n
    Int bound = 1;
    {
        Int base = 2 * (Int((long)n) + 1) * maxabs;
        bound = int_pow(base, (unsigned long)n);
        bound = 2 * bound + 1;
    }
    const auto& primes = multimod_primes();
    std::vector<std::vector<u64>> residues;
    Int prod = 1;
    size_t pi = 0;
    while (prod < bound) {
        if (pi >= primes.size()) throw std::runtime_error("charpoly: out of primes");
        u64 p = primes[pi++];
        std::vector<u64> m(n * n);
        for (size_t i = 0; i < n * n; ++i) {
            u64 r = mpz_fdiv_ui(N[i].get_mpz_t(), (unsigned long)p);
            m[i] = r;
        }
        residues.push_back(charpoly_mod_p(std::move(m), n, p));
        prod *= Int((unsigned long)p);
    }
    // CRT per coefficient with symmetric lift
    std::vector<Int> coeffs(n + 1, 0);
    for (size_t j = 0; j <= n; ++j) {
        Int x = 0, mod = 1;
        for (size_t t = 0; t < residues.size(); ++t) {
            u64 p = primes[t];
            u64 r = j < residues[t].size() ? residues[t][j] : 0;
            // x' = x + mod * ((r - x) / mod mod p)
            u64 xm = mpz_fdiv_ui(x.get_mpz_t(), (unsigned long)p);
            u64 mm = mpz_fdiv_ui(mod.get_mpz_t(), (unsigned long)p);
            u64 delta = mulmod(submod(r % p, xm, p), invmod(mm, p), p);
            x += mod * Int((unsigned long)delta);
            mod *= Int((unsigned long)p);
        }
        if (2 * x > mod) x -= mod;
        coeffs[j] = x;
    }
    // chi_M(x) = L^-n * chi_N(L x): coefficient j -> coeffs[j] * L^(j-n)
    RatPoly out;
    out.c.resize(n + 1);
    for (size_t j = 0; j <= n; ++j) {
        Rat v(coeffs[j]);
        if (j < n) v /= Rat(int_pow(L, (unsigned long)(n - j)));
        out.c[j] = v;
    }
    out.trim();
    return out;
}

RatPoly charpoly_fraction_free(const QMatrix& M) {
    if (M.rows != M.cols) throw std::domain_error("charpoly of non-square matrix");
    size_t n = M.rows;
    // Faddeev-LeVerrier: M_1 = M, c_{n-1} = -tr(M_1); M_{k+1} = M(M_k + c_{n-k} I)
    RatPoly out;
    out.c.assign(n + 1, rat(0));
    out.c[n] = 1;
    QMatrix Mk = M;
    for (size_t k = 1; k <= n; ++k) {
        Rat tr = 0;
        for (size_t i = 0; i < n; ++i) tr += Mk.at(i, i);
        Rat ck = -tr / Rat((long)k);
        out.c[n - k] = ck;
        if (k == n) break;
        QMatrix T = Mk;
        for (size_t i = 0; i < n; ++i) T.at(i, i) += ck;
        Mk = M * T;
    }
    return out;
}

namespace {
Rat det_cofactor(const QMatrix& A) {
    size_t n = A.rows;
    if (n == 0) return rat(1);
    if (n == 1) return A.at(0, 0);
    Rat acc = 0;
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        if (A.at(0, j) != 0) {
            QMatrix S(n - 1, n - 1);
            for (size_t i = 1; i < n; ++i) {
                size_t cj = 0;
                for (size_t k = 0; k < n; ++k) {
                    if (k == j) continue;
                    S.at(i - 1, cj++) = A.at(i, k);
                }
            }
            acc += Rat(sign) * A.at(0, j) * det_cofactor(S);
        }
        sign = -sign;
    }
    return acc;
}
} // namespace

RatPoly charpoly_cofactor(const QMatrix& M) {
    size_t n = M.rows;
    if (n > 6) throw std::domain_error("cofactor charpoly oracle limited to n <= 6");
    // evaluate det(xI - M) at n+1 points and interpolate (keeps the oracle
    // independent of the production code path)
    std::vector<Rat> xs, ys;
    for (long t = 0; t <= (long)n; ++t) {
        QMatrix A(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) A.at(i, j) = (i == j ? Rat(t) : Rat(0)) - M.at(i, j);
        xs.push_back(rat(t));
        ys.push_back(det_cofactor(A));
    }
    // Lagrange interpolation
    RatPoly acc;
    for (size_t i = 0; i <= n; ++i) {
        RatPoly li = RatPoly::constant(rat(1));
        Rat denom = 1;
        for (size_t j = 0; j <= n; ++j) {
            if (i == j) continue;
            RatPoly lin;
            lin.c = {-xs[j], rat(1)};
            li = li * lin;
            denom *= xs[i] - xs[j];
        }
        acc = acc + (ys[i] / denom) * li;
    }
    return acc;
}

size_t rank_exact(const QMatrix& M) {
    // plain rational Gaussian elimination (exact; for oracle/small use)
    QMatrix A = M;
    size_t rank = 0;
    size_t n = A.rows, m = A.cols;
    std::vector<bool> used(n, false);
    for (size_t j = 0; j < m && rank < n; ++j) {
        size_t piv = n;
        for (size_t i = 0; i < n; ++i)
            if (!used[i] && A.at(i, j) != 0) { piv = i; break; }
        if (piv == n) continue;
        used[piv] = true;
        ++rank;
        Rat inv = rat(1) / A.at(piv, j);
        for (size_t i = 0; i < n; ++i) {
            if (used[i] || A.at(i, j) == 0) continue;
            Rat f = A.at(i, j) * inv;
            for (size_t k = j; k < m; ++k) A.at(i, k) -= f * A.at(piv, k);
        }
    }
    return rank;
}

size_t rank_mod_p(const QMatrix& M, u64 p) {
    FpSpan span(p);
    for (size_t i = 0; i < M.rows; ++i) {
        std::vector<Rat> row(M.a.begin() + i * M.cols, M.a.begin() + (i + 1) * M.cols);
        span.add(reduce_row_mod_p(row, p));
    }
    return span.rank();
}

bool solve_linear(const QMatrix& A, const std::vector<Rat>& b, std::vector<Rat>& x) {
    if (A.rows != A.cols || b.size() != A.rows) throw std::domain_error("solve shape");
    size_t n = A.rows;
    QMatrix W(n, n + 1);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) W.at(i, j) = A.at(i, j);
        W.at(i, n) = b[i];
    }
    for (size_t col = 0, row = 0; col < n; ++col, ++row) {
        size_t piv = row;
        while (piv < n && W.at(piv, col) == 0) ++piv;
        if (piv == n) return false;
        if (piv != row)
            for (size_t k = col; k <= n; ++k) std::swap(W.at(piv, k), W.at(row, k));
        Rat inv = rat(1) / W.at(row, col);
        for (size_t k = col; k <= n; ++k) W.at(row, k) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || W.at(i, col) == 0) continue;
            Rat f = W.at(i, col);
            for (size_t k = col; k <= n; ++k) W.at(i, k) -= f * W.at(row, k);
        }
    }
    x.assign(n, rat(0));
    for (size_t i = 0; i < n; ++i) x[i] = W.at(i, n);
    return true;
}

std::vector<std::vector<Rat>> nullspace(const QMatrix& A) {
    size_t n = A.rows, m = A.cols;
    QMatrix W = A;
    std::vector<long> pivot_of_col(m, -1);
    size_t row = 0;
    for (size_t col = 0; col < m && row < n; ++col) {
        size_t piv = row;
        while (piv < n && W.at(piv, col) == 0) ++piv;
        if (piv == n) continue;
        if (piv != row)
            for (size_t k = 0; k < m; ++k) std::swap(W.at(piv, k), W.at(row, k));
        Rat inv = rat(1) / W.at(row, col);
        for (size_t k = 0; k < m; ++k) W.at(row, k) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == row || W.at(i, col) == 0) continue;
            Rat f = W.at(i, col);
            for (size_t k = 0; k < m; ++k) W.at(i, k) -= f * W.at(row, k);
        }
        pivot_of_col[col] = (long)row;
        ++row;
    }
    std::vector<std::vector<Rat>> basis;
    for (size_t col = 0; col < m; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        std::vector<Rat> v(m, rat(0));
        v[col] = 1;
        for (size_t c = 0; c < m; ++c)
            if (pivot_of_col[c] >= 0) v[c] = -W.at((size_t)pivot_of_col[c], col);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool FpSpan::add(std::vector<u64> v) {
    for (size_t t = 0; t < echelon_.size(); ++t) {
        u64 x = v[pivot_[t]];
        if (x == 0) continue;
        const auto& e = echelon_[t];
        for (size_t j = 0; j < v.size(); ++j)
            v[j] = submod(v[j], mulmod(x, e[j], p_), p_);
    }
    size_t piv = v.size();
    for (size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) { piv = j; break; }
    if (piv == v.size()) return false;
    u64 inv = invmod(v[piv], p_);
    for (auto& x : v) x = mulmod(x, inv, p_);
    echelon_.push_back(std::move(v));
    pivot_.push_back(piv);
    return true;
}

std::vector<u64> reduce_row_mod_p(const std::vector<Rat>& row, u64 p) {
    std::vector<u64> v(row.size());
    for (size_t i = 0; i < row.size(); ++i) v[i] = rat_mod_p(row[i], p);
    return v;
}

} // namespace smf2
