#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <cyclolog/modmath.hpp>
#include <cyclolog/primes.hpp>

namespace cyclolog {

// A residue mod an odd prime p.
struct FpValue {
    u64 prime = 0;
    u64 value = 0;

    bool operator==(const FpValue&) const noexcept = default;
};

// Dense polynomial over F_p, canonical form (no trailing zero coefficients).
// Degrees stay <= p for everything produced in this library, so arithmetic
// is plain O(n^2) schoolbook.
class FpPoly {
public:
    explicit FpPoly(u64 p) : p_(p) { require_odd_prime(p); }

    FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        require_odd_prime(p);
        for (auto& x : c_) x %= p_;
        trim();
    }

    u64 prime() const noexcept { return p_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return c_.empty() ? -1 : (int)c_.size() - 1; }
    const std::vector<u64>& coeffs() const noexcept { return c_; }

    u64 coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }

    void set_coeff(std::size_t i, u64 v) {
        v %= p_;
        if (i >= c_.size()) {
            if (v == 0) return;
            c_.resize(i + 1, 0);
        }
        c_[i] = v;
        trim();
    }

    u64 eval(u64 x) const {
        x %= p_;
        u64 acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = (mul_mod(acc, x, p_) + c_[i]) % p_;
        return acc;
    }

    FpPoly add(const FpPoly& g) const {
        require_same(g);
        std::vector<u64> out(std::max(c_.size(), g.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = add_mod(coeff(i), g.coeff(i), p_);
        return FpPoly(p_, std::move(out));
    }

    FpPoly sub(const FpPoly& g) const {
        require_same(g);
        std::vector<u64> out(std::max(c_.size(), g.c_.size()), 0);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = sub_mod(coeff(i), g.coeff(i), p_);
        return FpPoly(p_, std::move(out));
    }

    FpPoly mul(const FpPoly& g) const {
        require_same(g);
        if (is_zero() || g.is_zero()) return FpPoly(p_);
        std::vector<u64> out(c_.size() + g.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j)
                out[i + j] = (out[i + j] + mul_mod(c_[i], g.c_[j], p_)) % p_;
        }
        return FpPoly(p_, std::move(out));
    }

    FpPoly scaled(u64 s) const {
        s %= p_;
        std::vector<u64> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = mul_mod(c_[i], s, p_);
        return FpPoly(p_, std::move(out));
    }

    FpPoly negated() const { return scaled(p_ - 1); }

    // f(1-t), via binomial expansion of each (1-t)^n.
    FpPoly compose_one_minus_t() const {
        std::vector<u64> acc(c_.size(), 0);
        // row = coefficients of (1-t)^n, maintained incrementally
        std::vector<u64> row{1 % p_};
        for (std::size_t n = 0; n < c_.size(); ++n) {
            if (c_[n] != 0)
                for (std::size_t j = 0; j <= n; ++j)
                    acc[j] = (acc[j] + mul_mod(c_[n], row[j], p_)) % p_;
            // (1-t)^{n+1} = (1-t)^n * (1-t): new[j] = old[j] - old[j-1]
            row.push_back(0);
            for (std::size_t j = row.size(); j-- > 1;)
                row[j] = sub_mod(row[j], row[j - 1], p_);
        }
        return FpPoly(p_, std::move(acc));
    }

    FpPoly operator+(const FpPoly& g) const { return add(g); }
    FpPoly operator-(const FpPoly& g) const { return sub(g); }
    FpPoly operator*(const FpPoly& g) const { return mul(g); }
    bool operator==(const FpPoly& g) const noexcept { return p_ == g.p_ && c_ == g.c_; }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += std::to_string(c_[i]);
            if (i >= 1) s += "*t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void require_same(const FpPoly& g) const {
        if (p_ != g.p_) throw std::invalid_argument("FpPoly: prime mismatch");
    }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    u64 p_;
    std::vector<u64> c_;
};

inline std::ostream& operator<<(std::ostream& os, const FpPoly& f) { return os << f.str(); }

}  // namespace cyclolog
