#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gfact/errors.hpp"

namespace gfact {

// Ordered tuple of factor sizes, each >= 2.
struct Shape {
    std::vector<int> parts;

    Shape() = default;
    explicit Shape(std::vector<int> p) : parts(std::move(p)) {}

    int length() const { return static_cast<int>(parts.size()); }
    long long product() const {
        long long r = 1;
        for (int p : parts) r *= p;
        return r;
    }
    Shape reversed() const {
        Shape s = *this;
        std::reverse(s.parts.begin(), s.parts.end());
        return s;
    }
    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts[i]);
        }
        return s + ")";
    }
    auto operator<=>(const Shape&) const = default;
};

// number of prime factors of n, with multiplicity
inline int omega(long long n) {
    int c = 0;
    for (long long d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            n /= d;
            ++c;
        }
    if (n > 1) ++c;
    return c;
}

namespace detail {

inline void ordered_factorizations_rec(long long n, int k, std::vector<int>& cur,
                                       std::vector<Shape>& out) {
    if (k == 1) {
        if (n >= 2) {
            cur.push_back(static_cast<int>(n));
            out.emplace_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (long long d = 2; d <= n / 2; ++d) {
        if (n % d) continue;
        cur.push_back(static_cast<int>(d));
        ordered_factorizations_rec(n / d, k - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

// All ordered tuples of integers >= 2 with product n and length k, lexicographic.
inline std::vector<Shape> ordered_factorizations(long long n, int k) {
    std::vector<Shape> out;
    std::vector<int> cur;
    detail::ordered_factorizations_rec(n, k, cur, out);
    std::sort(out.begin(), out.end());
    return out;
}

// One representative (lexicographically least of the pair) per reversal class
// of the length-omega(n) all-prime shapes.
inline std::vector<Shape> prime_shapes_mod_reversal(long long n) {
    std::vector<Shape> all = ordered_factorizations(n, omega(n));
    std::vector<Shape> out;
    for (const Shape& s : all) {
        Shape r = s.reversed();
        if (s <= r) out.push_back(s);
    }
    return out;
}

}  // namespace gfact
