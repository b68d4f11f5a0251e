#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <cyclolog/modmath.hpp>
#include <cyclolog/primes.hpp>
#include <cyclolog/zp.hpp>

namespace cyclolog {

// pi-adic valuation of a CycInt: exact when below the tracked precision,
// otherwise a ">= N" marker (exact == false, value == N).
struct PiValuation {
    int value = 0;
    bool exact = true;

    bool at_least(int k) const noexcept { return value >= k; }
};

// Teichmuller pi-digit expansion, digits stored as F_p residues.  `start` is
// the first nonzero position (== count when the expansion is zero at the
// tracked precision); digits beyond `count` were never computed and are not
// reported.
class PiDigits {
public:
    PiDigits(u64 p, std::vector<u64> digits_from_zero)
        : p_(p), count_((int)digits_from_zero.size()) {
        int s = 0;
        while (s < count_ && digits_from_zero[s] == 0) ++s;
        start_ = s;
        tail_.assign(digits_from_zero.begin() + s, digits_from_zero.end());
    }

    u64 prime() const noexcept { return p_; }
    int count() const noexcept { return count_; }
    int start() const noexcept { return start_; }
    const std::vector<u64>& tail() const noexcept { return tail_; }

    u64 digit(int n) const {
        if (n < 0 || n >= count_)
            throw std::out_of_range("PiDigits::digit: index beyond tracked precision");
        return n < start_ ? 0 : tail_[n - start_];
    }

    bool all_zero() const noexcept { return start_ == count_; }

private:
    u64 p_;
    int count_;
    int start_;
    std::vector<u64> tail_;
};

namespace detail {

// Shared per-(p, M) tables: binomial matrix mod p^M (rows 0..p), Teichmuller
// lifts, and the pi-basis coordinates of p/pi.  Built once, read-only after.
struct CycTables {
    u64 p;
    int M;
    u64 pM;
    std::vector<std::vector<u64>> binom;  // binom[i][j] = C(i,j) mod p^M, i <= p
    std::vector<u64> teich;               // omega(d) mod p^M, d in [0, p)
    std::vector<u64> p_over_pi;           // pi-basis coords of p/pi, length p-1

    CycTables(u64 prime, int prec) : p(prime), M(prec) {
        require_odd_prime(p);
        if (M < 1) throw std::invalid_argument("CycTables: precision must be >= 1");
        pM = checked_pow_u64(p, M);
        // the multiply kernel accumulates p products of pairs < p^M in 128 bits
        if ((long double)pM * (long double)pM * (long double)p > 0x1p120L)
            throw std::overflow_error("CycTables: p^(2M+1) exceeds the accumulator range");
        binom.resize(p + 1);
        for (u64 i = 0; i <= p; ++i) {
            binom[i].resize(i + 1);
            binom[i][0] = 1;
            for (u64 j = 1; j < i; ++j)
                binom[i][j] = add_mod(binom[i - 1][j - 1], binom[i - 1][j], pM);
            if (i) binom[i][i] = 1;
        }
        teich.resize(p);
        teich[0] = 0;
        for (u64 d = 1; d < p; ++d) teich[d] = teichmuller_residue(p, d, pM);
        // from  p + sum_{k=2}^{p-1} C(p,k) pi^{k-1} + pi^{p-1} = 0:
        //   p/pi = -sum_{k=2}^{p-1} C(p,k) pi^{k-2} - pi^{p-2}
        p_over_pi.assign(p - 1, 0);
        for (u64 k = 2; k < p; ++k) p_over_pi[k - 2] = sub_mod(0, binom[p][k], pM);
        p_over_pi[p - 2] = sub_mod(p_over_pi[p - 2], 1, pM);
    }

    u64 C(u64 i, u64 j) const { return j <= i ? binom[i][j] : 0; }
};

inline const CycTables& cyc_tables(u64 p, int M) {
    static std::mutex mu;
    static std::map<std::pair<u64, int>, std::unique_ptr<CycTables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, M}];
    if (!slot) slot = std::make_unique<CycTables>(p, M);
    return *slot;
}

}  // namespace detail

// An element of Z_p[zeta_p] with coordinates in the power basis
// 1, zeta, ..., zeta^{p-2}, each known mod p^M.  Equivalently the element is
// known mod pi^{M(p-1)} for pi = zeta - 1.
class CycInt {
public:
    CycInt(u64 p, int M) : p_(p), M_(M), c_(p - 1, 0) {
        require_odd_prime(p);
        if (M < 1) throw std::invalid_argument("CycInt: precision must be >= 1");
        pM_ = checked_pow_u64(p, M);
        if ((long double)pM_ * (long double)pM_ * (long double)p > 0x1p120L)
            throw std::overflow_error("CycInt: p^(2M+1) exceeds the accumulator range");
    }

    static CycInt from_residue(u64 p, int M, u64 v) {
        CycInt x(p, M);
        x.c_[0] = v % x.modulus();
        return x;
    }

    static CycInt from_integer(u64 p, int M, i64 v) {
        CycInt x(p, M);
        const u64 pM = x.modulus();
        x.c_[0] = (u64)((v % (i64)pM + (i64)pM) % (i64)pM);
        return x;
    }

    // zeta^k; for k = p-1 mod p this is -(1 + zeta + ... + zeta^{p-2}).
    static CycInt zeta(u64 p, int M, u64 k) {
        CycInt x(p, M);
        k %= p;
        if (k < p - 1) {
            x.c_[k] = 1;
        } else {
            const u64 m1 = x.modulus() - 1;
            for (auto& c : x.c_) c = m1;
        }
        return x;
    }

    static CycInt pi(u64 p, int M) {
        CycInt x = zeta(p, M, 1);
        x.c_[0] = x.modulus() - 1;
        return x;
    }

    u64 prime() const noexcept { return p_; }
    int precision() const noexcept { return M_; }
    u64 modulus() const noexcept { return pM_; }
    const std::vector<u64>& coords() const noexcept { return c_; }

    bool is_zero() const noexcept {
        for (u64 v : c_)
            if (v != 0) return false;
        return true;
    }

    // residue mod pi, an element of F_p (zeta = 1 mod pi)
    u64 residue_mod_pi() const {
        u64 s = 0;
        for (u64 v : c_) s = (s + v) % p_;
        return s;
    }

    // Reduce to a lower precision, or re-tag a representative at a higher one
    // (the extra digits carry no information; callers use this only for
    // internal guard lifting where the final answer is truncated back).
    CycInt at_precision(int M2) const {
        CycInt out(p_, M2);
        const u64 pM2 = out.modulus();
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] % pM2;
        return out;
    }

    CycInt scaled(u64 s) const {
        const u64 pM = modulus();
        s %= pM;
        CycInt out(p_, M_);
        for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = mul_mod(c_[i], s, pM);
        return out;
    }

    CycInt negated() const {
        const u64 pM = modulus();
        CycInt out(p_, M_);
        for (std::size_t i = 0; i < c_.size(); ++i)
            out.c_[i] = sub_mod(0, c_[i], pM);
        return out;
    }

    bool operator==(const CycInt& other) const noexcept {
        return p_ == other.p_ && M_ == other.M_ && c_ == other.c_;
    }

    friend CycInt operator+(const CycInt& a, const CycInt& b) {
        auto [x, y] = aligned(a, b);
        const u64 pM = x.modulus();
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            x.c_[i] = add_mod(x.c_[i], y.c_[i], pM);
        return x;
    }

    friend CycInt operator-(const CycInt& a, const CycInt& b) {
        auto [x, y] = aligned(a, b);
        const u64 pM = x.modulus();
        for (std::size_t i = 0; i < x.c_.size(); ++i)
            x.c_[i] = sub_mod(x.c_[i], y.c_[i], pM);
        return x;
    }

    // Cyclic convolution of length p (coefficient of zeta^{p-1} implicit 0),
    // then the fold c_i -> c_i - c_{p-1} from 1 + zeta + ... + zeta^{p-1} = 0.
    friend CycInt operator*(const CycInt& a, const CycInt& b) {
        auto [x, y] = aligned(a, b);
        const u64 p = x.p_;
        const u64 pM = x.modulus();
        std::vector<u128> acc(p, 0);
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            const u64 xi = x.c_[i];
            if (xi == 0) continue;
            std::size_t s = i;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                acc[s] += (u128)xi * y.c_[j];
                if (++s == p) s = 0;
            }
        }
        const u64 top = (u64)(acc[p - 1] % pM);
        CycInt out(x.p_, x.M_);
        for (std::size_t i = 0; i + 1 < p; ++i)
            out.c_[i] = sub_mod((u64)(acc[i] % pM), top, pM);
        return out;
    }

    // mutable access for module internals
    std::vector<u64>& coords_mut() noexcept { return c_; }

private:
    static std::pair<CycInt, CycInt> aligned(const CycInt& a, const CycInt& b) {
        if (a.p_ != b.p_) throw std::invalid_argument("CycInt: prime mismatch");
        const int M = std::min(a.M_, b.M_);
        return {a.at_precision(M), b.at_precision(M)};
    }

    u64 p_;
    int M_;
    u64 pM_ = 0;
    std::vector<u64> c_;
};

inline CycInt cyc_pow(CycInt base, u64 e) {
    CycInt r = CycInt::from_residue(base.prime(), base.precision(), 1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// base^(i^levels) by nested powering, avoiding huge exponents.
inline CycInt cyc_pow_nested(CycInt base, u64 i, int levels) {
    for (int l = 0; l < levels; ++l) base = cyc_pow(base, i);
    return base;
}

namespace detail {

// zeta-power coords -> pi-power coords via zeta^i = (1 + pi)^i.
inline std::vector<u64> to_pi_basis(const CycInt& x) {
    const auto& T = cyc_tables(x.prime(), x.precision());
    const std::size_t n = x.coords().size();
    std::vector<u64> d(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        u128 acc = 0;
        for (std::size_t i = j; i < n; ++i) acc += (u128)T.C(i, j) * x.coords()[i];
        d[j] = (u64)(acc % T.pM);
    }
    return d;
}

// pi-power coords -> zeta-power coords via pi^j = (zeta - 1)^j.
inline CycInt from_pi_basis(u64 p, int M, const std::vector<u64>& d) {
    const auto& T = cyc_tables(p, M);
    CycInt x(p, M);
    auto& c = x.coords_mut();
    for (std::size_t i = 0; i < d.size(); ++i) {
        u64 plus = 0, minus = 0;
        for (std::size_t j = i; j < d.size(); ++j) {
            u64 t = mul_mod(T.C(j, i), d[j], T.pM);
            if ((j - i) % 2 == 0) plus = add_mod(plus, t, T.pM);
            else minus = add_mod(minus, t, T.pM);
        }
        c[i] = sub_mod(plus, minus, T.pM);
    }
    return x;
}

// In-place exact division by pi in the pi-power basis.  Uses the identity
// pi^{p-1} = -p - C(p,2) pi - ... so the carried d_0/p re-enters through the
// precomputed p/pi vector.  Costs one pi-digit of precision per call; callers
// stay within the tracked budget.
inline void pi_basis_div_pi(const CycTables& T, std::vector<u64>& d) {
    if (d[0] % T.p != 0)
        throw std::domain_error("pi division: element not divisible by pi");
    const u64 e = d[0] / T.p;
    for (std::size_t j = 0; j + 1 < d.size(); ++j) d[j] = d[j + 1];
    d.back() = 0;
    if (e == 0) return;
    for (std::size_t j = 0; j < d.size(); ++j)
        d[j] = (u64)((d[j] + (u128)e * T.p_over_pi[j]) % T.pM);
}

}  // namespace detail

// Exact pi-adic valuation (or the ">= M(p-1)" marker).  In the pi basis the
// candidate valuations (p-1) v_p(d_j) + j are pairwise distinct, so the
// minimum is attained without cancellation.
inline PiValuation v_pi(const CycInt& x) {
    const u64 p = x.prime();
    const int M = x.precision();
    const int N = M * (int)(p - 1);
    auto d = detail::to_pi_basis(x);
    int best = N;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (d[j] == 0) continue;
        int v = (int)(p - 1) * vp_residue(d[j], p, M) + (int)j;
        if (v < best) best = v;
    }
    return best < N ? PiValuation{best, true} : PiValuation{N, false};
}

// First `count` Teichmuller digits of x.
inline PiDigits pi_digits(const CycInt& x, int count) {
    const u64 p = x.prime();
    const int M = x.precision();
    if (count < 1 || count > M * (int)(p - 1))
        throw std::invalid_argument("pi_digits: count exceeds the tracked pi-precision");
    const auto& T = detail::cyc_tables(p, M);
    auto d = detail::to_pi_basis(x);
    std::vector<u64> out((std::size_t)count, 0);
    for (int n = 0; n < count; ++n) {
        const u64 r = d[0] % p;
        out[n] = r;
        if (r != 0) d[0] = sub_mod(d[0], T.teich[r], T.pM);
        detail::pi_basis_div_pi(T, d);
    }
    return PiDigits(p, std::move(out));
}

// Reassemble sum omega(a_n) pi^n; the digit round-trip inverse.
inline CycInt from_pi_digits(u64 p, int M, const PiDigits& dg) {
    const auto& T = detail::cyc_tables(p, M);
    CycInt acc(p, M);
    CycInt pipow = CycInt::from_residue(p, M, 1);
    const CycInt piv = CycInt::pi(p, M);
    for (int n = 0; n < dg.count(); ++n) {
        const u64 a = dg.digit(n);
        if (a != 0) acc = acc + pipow.scaled(T.teich[a]);
        pipow = pipow * piv;
    }
    return acc;
}

// Multiplicative inverse of a unit, Newton from the inverse mod pi.
inline CycInt cyc_invert(const CycInt& x) {
    const u64 p = x.prime();
    const int M = x.precision();
    const u64 r = x.residue_mod_pi();
    if (r == 0) throw std::domain_error("cyc_invert: not a unit (positive valuation)");
    CycInt y = CycInt::from_residue(p, M, inv_mod(r, p));
    const CycInt two = CycInt::from_residue(p, M, 2);
    int have = 1;
    const int need = M * (int)(p - 1);
    while (have < need) {
        y = y * (two - x * y);
        have *= 2;
    }
    return y;
}

// p-adic logarithm of a unit of Z_p[zeta_p]: strip the Teichmuller part, then
// log(1 + t) with conservative truncation.  Computed with internal guard
// digits so the returned precision-M coordinates are exact.
inline CycInt plog(const CycInt& u) {
    const u64 p = u.prime();
    const int M = u.precision();
    const u64 r = u.residue_mod_pi();
    if (r == 0) throw std::domain_error("plog: not a unit");

    const int N = M * (int)(p - 1);
    int lgN = 0;
    { u64 q = 1; while (q < (u64)N) { q *= p; ++lgN; } }  // ceil(log_p N)
    const int nmax = N + (int)(p - 1) * (lgN + 1);
    int guard = 1;
    { u64 q = p; while ((i64)q <= nmax) { q *= p; ++guard; } }  // floor(log_p nmax)+1
    const int Mw = M + guard;
    const auto& T = detail::cyc_tables(p, Mw);

    CycInt uu = u.at_precision(Mw);
    const u64 winv = inv_mod(T.teich[r], T.pM);
    CycInt t = uu.scaled(winv) - CycInt::from_residue(p, Mw, 1);  // v_pi >= 1

    CycInt acc(p, Mw);
    CycInt pw = CycInt::from_residue(p, Mw, 1);
    for (int n = 1; n <= nmax; ++n) {
        pw = pw * t;
        const int e = vp_residue((u64)n, p, Mw);
        const u64 nunit = (u64)n / checked_pow_u64(p, e);
        CycInt term = pw.scaled(inv_mod(nunit, T.pM));
        if (e > 0) {
            // v_pi(t^n) >= n >= p^e > e(p-1), so t^n/p^e lies in the ring and
            // its basis coordinates are exact p^e-multiples
            const u64 pe = checked_pow_u64(p, e);
            for (auto& c : term.coords_mut()) {
                if (c % pe != 0) throw std::logic_error("plog: inexact division by p");
                c /= pe;
            }
        }
        acc = (n % 2 == 1) ? acc + term : acc - term;
    }
    return acc.at_precision(M);
}

// exp on elements with v_pi >= 2 (inside the convergence region).
inline CycInt pexp(const CycInt& x) {
    const u64 p = x.prime();
    const int M = x.precision();
    PiValuation v = v_pi(x);
    if (v.exact && v.value < 2) throw std::domain_error("pexp: need v_pi(x) >= 2");

    const int N = M * (int)(p - 1);
    const int nmax = N;  // term n has v_pi >= 2n - (n-1) = n+1
    int guard = 0;
    { for (u64 q = p; (i64)q <= nmax; q *= p) guard += nmax / (int)q; }
    guard += 1;  // v_p(nmax!) + 1
    const int Mw = M + guard;
    const auto& T = detail::cyc_tables(p, Mw);

    CycInt xx = x.at_precision(Mw);
    CycInt acc = CycInt::from_residue(p, Mw, 1);
    CycInt pw = CycInt::from_residue(p, Mw, 1);
    u64 fact_unit = 1;
    int fact_vp = 0;
    for (int n = 1; n <= nmax; ++n) {
        pw = pw * xx;
        const int e = vp_residue((u64)n, p, Mw);
        fact_vp += e;
        fact_unit = mul_mod(fact_unit, (u64)n / checked_pow_u64(p, e), T.pM);
        CycInt term = pw.scaled(inv_mod(fact_unit, T.pM));
        if (fact_vp > 0) {
            const u64 pe = checked_pow_u64(p, fact_vp);
            for (auto& c : term.coords_mut()) {
                if (c % pe != 0) throw std::logic_error("pexp: inexact division by p");
                c /= pe;
            }
        }
        acc = acc + term;
    }
    return acc.at_precision(M);
}

// Power-sum congruence: pi^n * sum_{i=0}^{p-1} i^n zeta^{ij} agrees with
// (-1)^{n-1} n! p j^{-n} to pi-order p (the stated bound p-n, shifted by the
// pi^n scaling).
inline bool check_lemma_sum(u64 p, int n, int j, int M = 3) {
    require_odd_prime(p);
    if (n < 1 || (u64)n >= p || j < 1 || (u64)j >= p)
        throw std::invalid_argument("check_lemma_sum: need 1 <= n, j <= p-1");
    const u64 pM = checked_pow_u64(p, M);

    // S = sum_i i^n zeta^{ij}, assembled per power of zeta with the top folded
    std::vector<u64> full(p, 0);
    for (u64 i = 0; i < p; ++i)
        full[(i * (u64)j) % p] = add_mod(full[(i * (u64)j) % p], pow_mod(i, (u64)n, pM), pM);
    CycInt S(p, M);
    for (u64 k = 0; k + 1 < p; ++k)
        S.coords_mut()[k] = sub_mod(full[k], full[p - 1], pM);

    CycInt lhs = cyc_pow(CycInt::pi(p, M), (u64)n) * S;
    u64 nfact = 1;
    for (u64 i = 2; i <= (u64)n; ++i) nfact = mul_mod(nfact, i, pM);
    u64 scalar = mul_mod(mul_mod(nfact, p % pM, pM),
                         inv_mod(pow_mod((u64)j, (u64)n, pM), pM), pM);
    if (n % 2 == 0) scalar = sub_mod(0, scalar, pM);
    const CycInt rhs = CycInt::from_residue(p, M, scalar);

    return v_pi(lhs - rhs).at_least((int)p);
}

// (zeta - 1)^{p-1} = -p mod p(zeta - 1), i.e. v_pi((zeta-1)^{p-1} + p) >= p.
inline bool check_pi_power_p(u64 p, int M = 3) {
    require_odd_prime(p);
    const CycInt lhs = cyc_pow(CycInt::pi(p, M), p - 1) + CycInt::from_integer(p, M, (i64)p);
    return v_pi(lhs).at_least((int)p);
}

}  // namespace cyclolog
