#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclolog {

// A composition of positive integers (k_1,...,k_m). Immutable value type.
class Index {
public:
    explicit Index(std::vector<int> parts) : parts_(std::move(parts)) {
        if (parts_.empty())
            throw std::invalid_argument("Index: part sequence must be nonempty");
        for (int k : parts_)
            if (k < 1) throw std::invalid_argument("Index: every part must be >= 1");
    }

    Index(std::initializer_list<int> parts) : Index(std::vector<int>(parts)) {}

    // Parses "k1,k2,...,km".
    static Index parse(std::string_view text) {
        std::vector<int> parts;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t next = text.find(',', pos);
            std::string_view tok = text.substr(pos, next == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : next - pos);
            if (tok.empty()) throw std::invalid_argument("Index::parse: empty part");
            int v = 0;
            for (char c : tok) {
                if (c < '0' || c > '9')
                    throw std::invalid_argument("Index::parse: invalid character in part");
                v = v * 10 + (c - '0');
                if (v > 1'000'000) throw std::invalid_argument("Index::parse: part too large");
            }
            parts.push_back(v);
            if (next == std::string_view::npos) break;
            pos = next + 1;
        }
        return Index(std::move(parts));
    }

    const std::vector<int>& parts() const noexcept { return parts_; }
    int depth() const noexcept { return (int)parts_.size(); }
    int weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    Index reversed() const {
        std::vector<int> r(parts_.rbegin(), parts_.rend());
        return Index(std::move(r));
    }

    // Hoffman dual: write the index as wt(k) ones, joined by '+' within a part
    // and ',' between parts, then swap the two separators.
    Index hoffman_dual() const {
        const int w = weight();
        // boundary[i] == true  <=>  a ',' sits after the i-th one (1-based cut position)
        std::vector<bool> boundary(w, false);
        int acc = 0;
        for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
            acc += parts_[i];
            boundary[acc] = true;
        }
        std::vector<int> dual;
        int run = 1;
        for (int cut = 1; cut < w; ++cut) {
            if (!boundary[cut]) {  // swapped separator: '+' becomes ','
                dual.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        dual.push_back(run);
        return Index(std::move(dual));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

    bool operator==(const Index& other) const noexcept = default;

private:
    std::vector<int> parts_;
};

inline Index ones_index(int m) {
    return Index(std::vector<int>(m, 1));
}

// All compositions of w, i.e. all indices of exact weight w (2^{w-1} of them).
inline std::vector<Index> indices_of_weight(int w) {
    if (w < 1) throw std::invalid_argument("indices_of_weight: weight must be >= 1");
    std::vector<Index> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest) -> void {
        if (rest == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int k = 1; k <= rest; ++k) {
            cur.push_back(k);
            self(self, rest - k);
            cur.pop_back();
        }
    };
    rec(rec, w);
    return out;
}

inline std::vector<Index> indices_up_to_weight(int wmax) {
    std::vector<Index> out;
    for (int w = 1; w <= wmax; ++w) {
        auto ws = indices_of_weight(w);
        out.insert(out.end(), ws.begin(), ws.end());
    }
    return out;
}

}  // namespace cyclolog
