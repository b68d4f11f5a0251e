#pragma once

#include <stdexcept>
#include <vector>

#include <cyclolog/fp_poly.hpp>
#include <cyclolog/index.hpp>
#include <cyclolog/modmath.hpp>
#include <cyclolog/primes.hpp>

namespace cyclolog {

namespace detail {

// n^{-m} mod p for n in [1, p-1]; the exponent is reduced mod p-1.
inline u64 inv_pow_mod_p(u64 n, int m, u64 p) {
    u64 e = (u64)((p - 1) - ((u64)m % (p - 1))) % (p - 1);
    return pow_mod(n % p, e, p);
}

}  // namespace detail

// The finite polylogarithm: sum_{n=1}^{p-1} t^n / n^m over F_p.
inline FpPoly fpl(u64 p, int m) {
    require_odd_prime(p);
    if (m < 1) throw std::invalid_argument("fpl: m must be >= 1");
    std::vector<u64> c(p, 0);
    for (u64 n = 1; n < p; ++n) c[n] = detail::inv_pow_mod_p(n, m, p);
    return FpPoly(p, std::move(c));
}

// Star-multiple polylogarithm with the t-power at the outer variable:
//   sum_{p-1 >= n_1 >= ... >= n_m >= 1} t^{n_1} / (n_1^{k_1} ... n_m^{k_m}).
// Coefficient of t^v is built by chained prefix sums, one per index part
// from the innermost out.
inline FpPoly fsmp_star(u64 p, const Index& k) {
    require_odd_prime(p);
    const auto& parts = k.parts();
    const int m = k.depth();
    // cur[v] = sum over chains v = n_j >= ... >= n_m of prod n_i^{-k_i}
    std::vector<u64> cur(p, 0);
    for (u64 v = 1; v < p; ++v) cur[v] = detail::inv_pow_mod_p(v, parts[m - 1], p);
    for (int j = m - 2; j >= 0; --j) {
        std::vector<u64> next(p, 0);
        u64 run = 0;
        for (u64 v = 1; v < p; ++v) {
            run = add_mod(run, cur[v], p);
            next[v] = mul_mod(detail::inv_pow_mod_p(v, parts[j], p), run, p);
        }
        cur.swap(next);
    }
    return FpPoly(p, std::move(cur));
}

// Same sum with the t-power at the inner variable n_m; suffix sums from the
// outermost part in.
inline FpPoly fsmp_star_tilde(u64 p, const Index& k) {
    require_odd_prime(p);
    const auto& parts = k.parts();
    const int m = k.depth();
    std::vector<u64> cur(p, 0);
    for (u64 v = 1; v < p; ++v) cur[v] = detail::inv_pow_mod_p(v, parts[0], p);
    for (int j = 1; j < m; ++j) {
        std::vector<u64> next(p, 0);
        u64 run = 0;
        for (u64 v = p - 1; v >= 1; --v) {
            run = add_mod(run, cur[v], p);
            next[v] = mul_mod(detail::inv_pow_mod_p(v, parts[j], p), run, p);
        }
        cur.swap(next);
    }
    return FpPoly(p, std::move(cur));
}

// Finite multiple zeta-star value: the star polylogarithm at t = 1.
inline FpValue fmzv_star(u64 p, const Index& k) {
    return FpValue{p, fsmp_star(p, k).eval(1)};
}

// B_n mod p via the double sum
//   B_n = sum_{k=0}^{n} (k+1)^{-1} sum_{j=0}^{k} (-1)^j C(k,j) j^n
// (B_1 = -1/2 convention; 0^0 = 1). Valid for 0 <= n <= p-3.
inline FpValue bernoulli_mod_p(u64 p, int n) {
    require_odd_prime(p);
    if (n < 0 || (u64)n > p - 3)
        throw std::invalid_argument("bernoulli_mod_p: need 0 <= n <= p-3");
    u64 total = 0;
    std::vector<u64> binom{1};  // C(k, j) row, updated in place
    for (u64 k = 0; (int)k <= n; ++k) {
        u64 inner = 0;
        for (u64 j = 0; j <= k; ++j) {
            u64 jn = (j == 0) ? (n == 0 ? 1 : 0) : pow_mod(j, (u64)n, p);
            u64 term = mul_mod(binom[j], jn, p);
            inner = (j & 1) ? sub_mod(inner, term, p) : add_mod(inner, term, p);
        }
        total = add_mod(total, mul_mod(inv_mod(k + 1, p), inner, p), p);
        binom.push_back(0);
        for (std::size_t j = binom.size(); j-- > 1;)
            binom[j] = add_mod(binom[j], binom[j - 1], p);
    }
    return FpValue{p, total};
}

// All of B_0..B_{p-3} mod p at once, via sum_{j<n} C(n+1,j) B_j = -(n+1) B_n.
// O(p^2); used by the regular-prime scan and batch sweeps.
inline std::vector<u64> bernoulli_table(u64 p) {
    require_odd_prime(p);
    const int top = (int)p - 3;
    std::vector<u64> B(top + 1, 0);
    B[0] = 1;
    std::vector<u64> binom{1, 1};  // C(n+1, j) row
    for (int n = 1; n <= top; ++n) {
        // extend Pascal row to C(n+1, .)
        binom.push_back(0);
        for (std::size_t j = binom.size(); j-- > 1;)
            binom[j] = add_mod(binom[j], binom[j - 1], p);
        u64 s = 0;
        for (int j = 0; j < n; ++j) s = add_mod(s, mul_mod(binom[j], B[j], p), p);
        B[n] = mul_mod(sub_mod(0, s, p), inv_mod((u64)(n + 1) % p, p), p);
    }
    return B;
}

// Regular prime test: no even k in [2, p-3] with B_k = 0 mod p.
inline bool is_regular(u64 p) {
    require_odd_prime(p);
    if (p == 3) return true;
    auto B = bernoulli_table(p);
    for (std::size_t k = 2; k < B.size(); k += 2)
        if (B[k] == 0) return false;
    return true;
}

// Hoffman-dual congruence: Ltilde*_{p,k}(t) = Ltilde*_{p,k^dual}(1-t) - zeta*_p(k^dual).
inline bool check_hoffman_congruence(u64 p, const Index& k) {
    Index kd = k.hoffman_dual();
    FpPoly lhs = fsmp_star_tilde(p, k);
    FpPoly rhs = fsmp_star_tilde(p, kd).compose_one_minus_t();
    rhs.set_coeff(0, sub_mod(rhs.coeff(0), fmzv_star(p, kd).value, p));
    return lhs == rhs;
}

// Reversal: L*_{p,k}(t) = (-1)^wt t^p Ltilde*_{p,kbar}(1/t), and the tilde
// counterpart. deg <= p-1 and vanishing at 0 make t^p f(1/t) the coefficient
// reversal n -> p-n.
inline bool check_reversal(u64 p, const Index& k) {
    const Index kb = k.reversed();
    const bool flip = k.weight() % 2 != 0;
    auto reversed_poly = [&](const FpPoly& f) {
        std::vector<u64> out(p + 1, 0);
        for (u64 n = 1; n < p; ++n) out[p - n] = f.coeff(n);
        FpPoly g(p, std::move(out));
        return flip ? g.negated() : g;
    };
    return fsmp_star(p, k) == reversed_poly(fsmp_star_tilde(p, kb)) &&
           fsmp_star_tilde(p, k) == reversed_poly(fsmp_star(p, kb));
}

// The right-hand side of the dual functional equation:
//   (t^p - 1) L*_{p,k^dual}(t/(t-1)) - t^p zeta*_p(k^dual),
// expanded polynomially via (t^p - 1)(t/(t-1))^n = t^n (t-1)^{p-n} over F_p.
inline FpPoly new_fn_eq_rhs(u64 p, const Index& k) {
    require_odd_prime(p);
    const Index kd = k.hoffman_dual();
    const FpPoly dual = fsmp_star(p, kd);

    std::vector<u64> rhs(p + 1, 0);
    // walk n = p-1 .. 1, maintaining pw = (t-1)^{p-n} by one multiply per step
    std::vector<u64> pw(p, 0);
    pw[0] = sub_mod(0, 1, p);
    pw[1] = 1;
    std::size_t pw_len = 2;
    for (u64 n = p - 1; n >= 1; --n) {
        const u64 cn = dual.coeff(n);
        if (cn != 0)
            for (std::size_t j = 0; j < pw_len; ++j)
                rhs[n + j] = (rhs[n + j] + mul_mod(cn, pw[j], p)) % p;
        if (n > 1) {
            // pw *= (t-1): new[j] = old[j-1] - old[j]
            for (std::size_t j = pw_len; j-- > 0;) {
                pw[j + 1] = add_mod(pw[j + 1], pw[j], p);
                pw[j] = sub_mod(0, pw[j], p);
            }
            ++pw_len;
        }
    }
    rhs[p] = sub_mod(rhs[p], fmzv_star(p, kd).value, p);
    return FpPoly(p, std::move(rhs));
}

// Dual functional equation:
//   L*_{p,k}(t) = (t^p - 1) L*_{p,k^dual}(t/(t-1)) - t^p zeta*_p(k^dual).
inline bool check_new_fn_eq(u64 p, const Index& k) {
    return fsmp_star(p, k) == new_fn_eq_rhs(p, k);
}

// Alternating-sum / Bernoulli congruence:
//   L_{p,m}(-1) = (1 - 2^{m-1}) / (2^{m-2} m) * B_{p-m} mod p, m odd, 1 < m < p-1.
inline bool check_bernoulli_polylog(u64 p, int m) {
    require_odd_prime(p);
    if (m % 2 == 0 || m <= 1 || (u64)m >= p - 1)
        throw std::invalid_argument("check_bernoulli_polylog: need odd m with 1 < m < p-1");
    const u64 lhs = fpl(p, m).eval(p - 1);
    const u64 num = sub_mod(1, pow_mod(2, (u64)m - 1, p), p);
    const u64 den = mul_mod(pow_mod(2, (u64)m - 2, p), (u64)m % p, p);
    const u64 rhs = mul_mod(mul_mod(num, inv_mod(den, p), p),
                            bernoulli_mod_p(p, (int)(p - (u64)m)).value, p);
    return lhs == rhs;
}

// L*_{p,{1}^m}(1/2) = 0 for even m and p > m+1.
inline bool check_half_vanishing(u64 p, int m) {
    require_odd_prime(p);
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("check_half_vanishing: m must be even and >= 2");
    if (p <= (u64)m + 1) throw std::invalid_argument("check_half_vanishing: need p > m+1");
    return fsmp_star(p, ones_index(m)).eval(inv_mod(2, p)) == 0;
}

}  // namespace cyclolog
