#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <cyclolog/congruence.hpp>
#include <cyclolog/finite_polylog.hpp>
#include <cyclolog/index.hpp>
#include <cyclolog/primes.hpp>

namespace cyclolog {

using FamilyPayload = std::variant<FpPoly, FpValue, CongruenceReport>;

struct FamilyEntry {
    u64 prime = 0;
    std::optional<FamilyPayload> payload;  // empty => skipped
    std::string skip_reason;
    bool flagged = false;  // computed, but below the family threshold
};

// A per-prime indexed family over the window of odd primes <= P_max.  Models
// an element of the quotient (prod_p R/pR)/(sum_p R/pR): two families are
// equal there iff they agree at all but finitely many primes, which the
// window witnesses above the threshold.
class PrimeFamily {
public:
    PrimeFamily(std::string kind, int twist, u64 threshold, std::vector<FamilyEntry> entries)
        : kind_(std::move(kind)), twist_(twist), threshold_(threshold),
          entries_(std::move(entries)) {}

    const std::string& kind() const noexcept { return kind_; }
    int twist() const noexcept { return twist_; }
    u64 threshold() const noexcept { return threshold_; }
    const std::vector<FamilyEntry>& entries() const noexcept { return entries_; }

    std::vector<u64> window() const {
        std::vector<u64> w;
        w.reserve(entries_.size());
        for (const auto& e : entries_) w.push_back(e.prime);
        return w;
    }

    const FamilyEntry* entry(u64 p) const {
        for (const auto& e : entries_)
            if (e.prime == p) return &e;
        return nullptr;
    }

    // all non-skipped entries at primes >= threshold carry a passing report
    bool all_pass_above_threshold() const {
        for (const auto& e : entries_) {
            if (e.prime < threshold_ || !e.payload) continue;
            if (const auto* r = std::get_if<CongruenceReport>(&*e.payload))
                if (!r->skipped && !r->passed) return false;
        }
        return true;
    }

private:
    std::string kind_;
    int twist_;
    u64 threshold_;
    std::vector<FamilyEntry> entries_;
};

struct FamilyEqResult {
    bool equal_in_A = false;
    std::vector<u64> exceptional_primes;  // every differing prime, also below threshold
};

namespace detail {

inline bool payload_equal(const FamilyPayload& a, const FamilyPayload& b) {
    return a == b;
}

inline u64 next_prime_above(u64 n) {
    u64 q = (n < 2) ? 3 : n + 1;
    if (q % 2 == 0) ++q;
    if (q < 3) q = 3;
    while (!is_prime(q)) q += 2;
    return q;
}

}  // namespace detail

struct FamilyParams {
    std::optional<int> m;
    std::optional<Index> k;
    std::optional<ZArg> z;
    int precision = 3;
};

// Builds the requested per-prime family over the window of odd primes
// <= P_max.  Known kinds: a_polylog(m), a_star_polylog(k),
// a_star_polylog_tilde(k), a_mzv_star(k), key_fn_eq_lhs(k), key_fn_eq_rhs(k).
inline PrimeFamily family_build(const std::string& kind, const FamilyParams& params, u64 P_max) {
    if (P_max < 5) throw std::invalid_argument("family_build: window bound must be >= 5");
    const auto primes = odd_primes_in(3, P_max);

    auto need_m = [&]() {
        if (!params.m || *params.m < 1)
            throw std::invalid_argument("family_build: kind '" + kind + "' needs m >= 1");
        return *params.m;
    };
    auto need_k = [&]() {
        if (!params.k) throw std::invalid_argument("family_build: kind '" + kind + "' needs an index");
        return *params.k;
    };

    std::vector<FamilyEntry> entries;
    int twist = 0;
    u64 threshold = 3;

    if (kind == "a_polylog") {
        const int m = need_m();
        twist = m;
        threshold = detail::next_prime_above((u64)m + 1);
        for (u64 p : primes)
            entries.push_back({p, fpl(p, m), "", p <= (u64)m + 1});
    } else if (kind == "a_star_polylog" || kind == "a_star_polylog_tilde" ||
               kind == "a_mzv_star" || kind == "key_fn_eq_lhs") {
        const Index k = need_k();
        twist = k.weight();
        threshold = (kind == "key_fn_eq_lhs")
                        ? 3
                        : detail::next_prime_above((u64)k.weight() + 1);
        for (u64 p : primes) {
            if (kind == "a_star_polylog" || kind == "key_fn_eq_lhs")
                entries.push_back({p, fsmp_star(p, k), "", p <= (u64)k.weight() + 1});
            else if (kind == "a_star_polylog_tilde")
                entries.push_back({p, fsmp_star_tilde(p, k), "", p <= (u64)k.weight() + 1});
            else
                entries.push_back({p, fmzv_star(p, k), "", p <= (u64)k.weight() + 1});
        }
    } else if (kind == "key_fn_eq_rhs") {
        const Index k = need_k();
        twist = k.weight();
        threshold = 3;
        for (u64 p : primes)
            entries.push_back({p, new_fn_eq_rhs(p, k), "", false});
    } else {
        throw std::invalid_argument("family_build: unknown kind '" + kind + "'");
    }
    return PrimeFamily(kind, twist, threshold, std::move(entries));
}

// Agreement report for two families over the same window.
inline FamilyEqResult family_eq(const PrimeFamily& a, const PrimeFamily& b) {
    if (a.window() != b.window())
        throw std::invalid_argument("family_eq: window mismatch");
    if (a.twist() != b.twist())
        throw std::invalid_argument("family_eq: twist tag mismatch");
    FamilyEqResult res;
    const u64 cutoff = std::max(a.threshold(), b.threshold());
    res.equal_in_A = true;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        const auto& ea = a.entries()[i];
        const auto& eb = b.entries()[i];
        const bool differ =
            ea.payload.has_value() != eb.payload.has_value() ||
            (ea.payload && !detail::payload_equal(*ea.payload, *eb.payload));
        if (differ) {
            res.exceptional_primes.push_back(ea.prime);
            if (ea.prime >= cutoff) res.equal_in_A = false;
        }
    }
    return res;
}

// Family-level identities: one report per prime, with skip markers for the
// precondition-violating primes.  The A-level claim is "all passes above the
// threshold".
inline PrimeFamily check_family_key_fn_eq(const Index& k, u64 P_max) {
    if (P_max < 5) throw std::invalid_argument("check_family_key_fn_eq: window bound must be >= 5");
    std::vector<FamilyEntry> entries;
    for (u64 p : odd_primes_in(3, P_max)) {
        detail::Stopwatch sw;
        CongruenceReport rep;
        rep.check = "key_fn_eq";
        rep.prime = p;
        rep.index = k.str();
        rep.passed = check_new_fn_eq(p, k);
        rep.elapsed_ms = sw.ms();
        entries.push_back({p, rep, "", false});
    }
    return PrimeFamily("key_fn_eq", k.weight(), 3, std::move(entries));
}

inline PrimeFamily check_family_main_congruence(int m, const ZArg& z, u64 P_max,
                                                int precision = 3) {
    if (P_max < 5)
        throw std::invalid_argument("check_family_main_congruence: window bound must be >= 5");
    std::vector<FamilyEntry> entries;
    u64 max_bad = (u64)m + 1;
    for (u64 p : odd_primes_in(3, P_max)) {
        CongruenceReport rep = check_main_congruence(p, m, z, 0, precision);
        if (rep.skipped && rep.reason == "p divides z(1-z)" && p > max_bad) max_bad = p;
        FamilyEntry e;
        e.prime = p;
        if (rep.skipped) {
            e.skip_reason = rep.reason;
        } else {
            e.payload = rep;
        }
        entries.push_back(std::move(e));
    }
    const u64 threshold = detail::next_prime_above(max_bad);
    return PrimeFamily("main_congruence", m - 1, threshold, std::move(entries));
}

}  // namespace cyclolog
