#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cyclolog {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 add_mod(u64 a, u64 b, u64 mod) {
    u64 s = a + b;
    if (s >= mod || s < a) s -= mod;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 mod) {
    return (a >= b) ? a - b : a + (mod - b);
}

inline u64 mul_mod(u64 a, u64 b, u64 mod) {
    return (u64)((u128)a * b % mod);
}

inline u64 pow_mod(u64 a, u64 e, u64 mod) {
    u64 r = 1 % mod;
    a %= mod;
    while (e) {
        if (e & 1) r = mul_mod(r, a, mod);
        a = mul_mod(a, a, mod);
        e >>= 1;
    }
    return r;
}

// Inverse modulo an arbitrary modulus (extended Euclid); throws if gcd != 1.
inline u64 inv_mod(u64 a, u64 mod) {
    i64 t = 0, nt = 1;
    i64 r = (i64)mod, nr = (i64)(a % mod);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: argument not invertible");
    if (t < 0) t += (i64)mod;
    return (u64)t;
}

// p-adic valuation of a residue, capped (0 counts as >= cap).
inline int vp_residue(u64 x, u64 p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (v < cap && x % p == 0) { x /= p; ++v; }
    return v;
}

// p^M with overflow check against the 63-bit working range.
inline u64 checked_pow_u64(u64 p, int M) {
    u64 r = 1;
    for (int i = 0; i < M; ++i) {
        if (r > (u64(1) << 62) / p)
            throw std::overflow_error("checked_pow_u64: p^M exceeds the 63-bit working range");
        r *= p;
    }
    return r;
}

}  // namespace cyclolog
