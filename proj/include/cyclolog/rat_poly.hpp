#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclolog {

// Dense polynomial with exact rational coefficients, canonical form
// (mpq_class keeps num/den coprime with positive denominator; trailing
// zeros are stripped).
class RatPoly {
public:
    RatPoly() = default;

    explicit RatPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
        for (auto& q : c_) q.canonicalize();
        trim();
    }

    static RatPoly constant(const mpq_class& q) { return RatPoly(std::vector<mpq_class>{q}); }

    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const noexcept { return c_.empty() ? -1 : (int)c_.size() - 1; }
    const std::vector<mpq_class>& coeffs() const noexcept { return c_; }

    mpq_class coeff(std::size_t i) const { return i < c_.size() ? c_[i] : mpq_class(0); }

    void add_to_coeff(std::size_t i, const mpq_class& q) {
        if (i >= c_.size()) c_.resize(i + 1, mpq_class(0));
        c_[i] += q;
        trim();
    }

    mpq_class eval(const mpq_class& x) const {
        mpq_class acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    RatPoly add(const RatPoly& g) const {
        std::vector<mpq_class> out(std::max(c_.size(), g.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) + g.coeff(i);
        return RatPoly(std::move(out));
    }

    RatPoly sub(const RatPoly& g) const {
        std::vector<mpq_class> out(std::max(c_.size(), g.c_.size()), mpq_class(0));
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = coeff(i) - g.coeff(i);
        return RatPoly(std::move(out));
    }

    RatPoly mul(const RatPoly& g) const {
        if (is_zero() || g.is_zero()) return RatPoly();
        std::vector<mpq_class> out(c_.size() + g.c_.size() - 1, mpq_class(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < g.c_.size(); ++j) out[i + j] += c_[i] * g.c_[j];
        }
        return RatPoly(std::move(out));
    }

    RatPoly scaled(const mpq_class& s) const {
        std::vector<mpq_class> out(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] * s;
        return RatPoly(std::move(out));
    }

    RatPoly operator+(const RatPoly& g) const { return add(g); }
    RatPoly operator-(const RatPoly& g) const { return sub(g); }
    RatPoly operator*(const RatPoly& g) const { return mul(g); }
    bool operator==(const RatPoly& g) const { return c_ == g.c_; }

    // Reduce mod an odd prime: every denominator must be prime to p.
    std::vector<unsigned long> mod_p(unsigned long p) const {
        std::vector<unsigned long> out(c_.size(), 0);
        mpz_class pz(p);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            mpz_class den_inv;
            if (mpz_invert(den_inv.get_mpz_t(), c_[i].get_den_mpz_t(), pz.get_mpz_t()) == 0)
                throw std::domain_error("RatPoly::mod_p: denominator divisible by p");
            mpz_class r = (c_[i].get_num() % pz) * den_inv % pz;
            if (r < 0) r += pz;
            out[i] = r.get_ui();
        }
        return out;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].get_str();
            if (i >= 1) s += "*t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<mpq_class> c_;
};

inline std::ostream& operator<<(std::ostream& os, const RatPoly& f) { return os << f.str(); }

}  // namespace cyclolog
