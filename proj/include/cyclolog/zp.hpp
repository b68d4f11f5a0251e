#pragma once

#include <cstdlib>
#include <optional>
#include <stdexcept>

#include <cyclolog/modmath.hpp>
#include <cyclolog/primes.hpp>

namespace cyclolog {

// An element of Z_p known modulo p^precision.
struct ZpValue {
    u64 prime = 0;
    int precision = 0;
    u64 value = 0;

    bool operator==(const ZpValue&) const noexcept = default;
};

namespace detail {

// Teichmuller lift of d as a residue mod pM: iterate x -> x^p to the fixed point.
inline u64 teichmuller_residue(u64 p, u64 d, u64 pM) {
    u64 x = d % pM;
    for (;;) {
        u64 y = pow_mod(x, p, pM);
        if (y == x) return x;
        x = y;
    }
}

// Least n such that every later term of log(1+x), v_p(x) >= 1, has
// v_p(x^n / n) >= Mint.  v_p(x^n/n) >= n - log_p(n).
inline int zp_log_terms(u64 p, int Mint) {
    int n = Mint;
    while (true) {
        int lg = 0;
        u64 q = 1;
        while (q <= (u64)n) { q *= p; ++lg; }
        if (n - lg >= Mint) return n;
        ++n;
    }
}

inline int legendre_vp_factorial(u64 p, int n) {
    int v = 0;
    for (u64 q = p; q <= (u64)n; q *= p) v += n / (int)q;
    return v;
}

}  // namespace detail

// The unique (p-1)-st root of unity (or 0) congruent to d mod p, at precision p^M.
inline ZpValue teichmuller(u64 p, u64 d, int M) {
    require_odd_prime(p);
    if (M < 1) throw std::invalid_argument("teichmuller: precision must be >= 1");
    const u64 pM = checked_pow_u64(p, M);
    return ZpValue{p, M, detail::teichmuller_residue(p, d % p, pM)};
}

inline ZpValue zp_from_rational(u64 p, int M, i64 num, i64 den) {
    require_odd_prime(p);
    const u64 pM = checked_pow_u64(p, M);
    if (den == 0 || (u64)std::abs(den) % p == 0)
        throw std::invalid_argument("zp_from_rational: denominator not a p-adic unit");
    u64 n = (num % (i64)pM + (i64)pM) % (i64)pM;
    u64 d = (den % (i64)pM + (i64)pM) % (i64)pM;
    return ZpValue{p, M, mul_mod(n, inv_mod(d, pM), pM)};
}

// log_p on units of Z_p: strip the Teichmuller part, then the usual series.
// Result has v_p >= 1.
inline ZpValue zp_log_unit(const ZpValue& u) {
    const u64 p = u.prime;
    const int M = u.precision;
    if (u.value % p == 0) throw std::domain_error("zp_log_unit: not a unit");

    // internal guard digits cover the divisions by p inside the series
    int guard = 1;
    while (true) {
        int nmax = detail::zp_log_terms(p, M + guard);
        int lg = 0;
        u64 q = 1;
        while (q <= (u64)nmax) { q *= p; ++lg; }
        if (lg <= guard) break;
        ++guard;
    }
    const int Mint = M + guard;
    const u64 pM = checked_pow_u64(p, Mint);
    const int nmax = detail::zp_log_terms(p, Mint);

    const u64 w = detail::teichmuller_residue(p, u.value % p, pM);
    const u64 u1 = mul_mod(u.value % pM, inv_mod(w, pM), pM);
    const u64 x = sub_mod(u1, 1, pM);  // v_p >= 1

    u64 acc = 0, pw = 1;
    for (int n = 1; n <= nmax; ++n) {
        pw = mul_mod(pw, x, pM);
        int e = vp_residue((u64)n, p, Mint);
        u64 term = mul_mod(pw, inv_mod((u64)n / checked_pow_u64(p, e), pM), pM);
        term /= checked_pow_u64(p, e);  // exact: v_p(x^n) >= n >= p^e > e
        acc = (n % 2 == 1) ? add_mod(acc, term, pM) : sub_mod(acc, term, pM);
    }
    return ZpValue{p, M, acc % checked_pow_u64(p, M)};
}

// exp on p Z_p (v_p(x) >= 1, p odd).
inline ZpValue zp_exp(const ZpValue& x) {
    const u64 p = x.prime;
    const int M = x.precision;
    if (x.value % p != 0) throw std::domain_error("zp_exp: need v_p(x) >= 1");
    if (x.value == 0) return ZpValue{p, M, 1};

    // terms x^n/n!: v_p >= n - (n-1)/(p-1) >= M once n >= ceil((M(p-1)-1)/(p-2))
    const int nmax = (int)(((u64)M * (p - 1) - 1 + (p - 3)) / (p - 2)) + 1;
    const int guard = detail::legendre_vp_factorial(p, nmax) + 1;
    const int Mint = M + guard;
    const u64 pM = checked_pow_u64(p, Mint);

    const u64 xv = x.value % pM;
    u64 acc = 1, pw = 1;
    u64 fact_unit = 1;  // n! with the p-part removed
    int fact_vp = 0;
    for (int n = 1; n <= nmax; ++n) {
        pw = mul_mod(pw, xv, pM);
        int e = vp_residue((u64)n, p, Mint);
        fact_vp += e;
        fact_unit = mul_mod(fact_unit, (u64)n / checked_pow_u64(p, e), pM);
        u64 term = mul_mod(pw, inv_mod(fact_unit, pM), pM);
        term /= checked_pow_u64(p, fact_vp);  // exact: v_p(x^n) >= n > v_p(n!)
        acc = add_mod(acc, term, pM);
    }
    return ZpValue{p, M, acc % checked_pow_u64(p, M)};
}

// A p-th root of a unit z in Z_p, if one exists.  Criterion: z^{p-1} = 1 mod p^2.
// Construction: y = omega(z mod p) * exp(log_p(<z>)/p), using p = 1 mod (p-1).
// The root of a value known mod p^M is only determined mod p^{M-1} (dy/dz has
// v_p = -1), so the result carries precision M-1.
inline std::optional<ZpValue> pth_root_unit(const ZpValue& z) {
    const u64 p = z.prime;
    const int M = z.precision;
    if (M < 2) throw std::invalid_argument("pth_root_unit: need precision >= 2");
    if (z.value % p == 0) throw std::domain_error("pth_root_unit: not a unit");
    const u64 p2 = p * p;
    if (pow_mod(z.value % p2, p - 1, p2) != 1) return std::nullopt;

    const u64 pM = checked_pow_u64(p, M);
    const u64 pM1 = pM / p;
    const u64 w = detail::teichmuller_residue(p, z.value % p, pM);
    const u64 principal = mul_mod(z.value % pM, inv_mod(w, pM), pM);  // in 1 + p^2 Z_p
    ZpValue lg = zp_log_unit(ZpValue{p, M, principal});               // v_p >= 2
    ZpValue ex = zp_exp(ZpValue{p, M - 1, (lg.value / p) % pM1});
    return ZpValue{p, M - 1, mul_mod(w % pM1, ex.value, pM1)};
}

}  // namespace cyclolog
