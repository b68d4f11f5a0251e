#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <cyclolog/modmath.hpp>

namespace cyclolog {

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % d == 0) return n == d;
    }
    for (u64 d = 17; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

inline void require_odd_prime(u64 p) {
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("expected an odd prime, got " + std::to_string(p));
}

// Odd primes in [lo, hi], ascending.
inline std::vector<u64> odd_primes_in(u64 lo, u64 hi) {
    std::vector<u64> out;
    if (lo < 3) lo = 3;
    for (u64 n = lo | 1; n <= hi; n += 2) {
        if (is_prime(n)) out.push_back(n);
    }
    return out;
}

}  // namespace cyclolog
