#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include <cyclolog/index.hpp>
#include <cyclolog/rat_poly.hpp>

namespace cyclolog {

namespace detail {

// cur[v] = sum over chains N >= n_1 >= ... >= n_j = v of the weighting
// applied at each level; built with suffix sums from the outermost part in,
// exactly like the finite tilde polylogarithm but over Q.
inline std::vector<mpq_class> chain_suffix_sums(int N, const std::vector<int>& parts,
                                                bool alternating_binomial) {
    std::vector<mpq_class> cur(N + 1, mpq_class(0));
    std::vector<mpz_class> binom(N + 1);
    if (alternating_binomial) {
        mpz_class b = 1;
        for (int v = 0; v <= N; ++v) {
            binom[v] = b;
            b = b * (N - v) / (v + 1);
        }
    }
    for (int v = 1; v <= N; ++v) {
        mpq_class w(1);
        for (int e = 0; e < parts[0]; ++e) w /= v;
        if (alternating_binomial) {
            w *= mpq_class(binom[v]);
            if (v % 2 != 0) w = -w;
        }
        cur[v] = w;
    }
    for (std::size_t j = 1; j < parts.size(); ++j) {
        std::vector<mpq_class> next(N + 1, mpq_class(0));
        mpq_class run(0);
        for (int v = N; v >= 1; --v) {
            run += cur[v];
            mpq_class w(1);
            for (int e = 0; e < parts[j]; ++e) w /= v;
            next[v] = w * run;
        }
        cur.swap(next);
    }
    return cur;
}

}  // namespace detail

// Left side of the binomial-weighted star identity:
//   sum_{N >= n_1 >= ... >= n_m >= 1} (-1)^{n_1} C(N, n_1) t^{n_m} / (n_1^{k_1}...n_m^{k_m}).
inline RatPoly dilcher_lhs(int N, const Index& k) {
    if (N < 1) throw std::invalid_argument("dilcher_lhs: N must be >= 1");
    auto cur = detail::chain_suffix_sums(N, k.parts(), true);
    std::vector<mpq_class> c(N + 1, mpq_class(0));
    for (int v = 1; v <= N; ++v) c[v] = cur[v];
    return RatPoly(std::move(c));
}

// Right side, over the Hoffman dual k^dual = (k'_1,...,k'_{m'}):
//   sum_{N >= n_1 >= ... >= n_{m'} >= 1} ((1-t)^{n_{m'}} - 1) / (n_1^{k'_1}...n_{m'}^{k'_{m'}}).
inline RatPoly dilcher_rhs(int N, const Index& k) {
    if (N < 1) throw std::invalid_argument("dilcher_rhs: N must be >= 1");
    const Index kd = k.hoffman_dual();
    auto cur = detail::chain_suffix_sums(N, kd.parts(), false);

    RatPoly out;
    // row = coefficients of (1-t)^v, updated incrementally
    std::vector<mpq_class> row{mpq_class(1)};
    for (int v = 1; v <= N; ++v) {
        row.push_back(mpq_class(0));
        for (std::size_t j = row.size(); j-- > 1;) row[j] = row[j] - row[j - 1];
        if (cur[v] == 0) continue;
        for (std::size_t j = 1; j < row.size(); ++j)  // skip j=0: the -1 cancels it
            out.add_to_coeff(j, cur[v] * row[j]);
    }
    return out;
}

inline bool check_dilcher(int N, const Index& k) {
    return dilcher_lhs(N, k) == dilcher_rhs(N, k);
}

}  // namespace cyclolog
