#pragma once

#include <bit>
#include <compare>
#include <cstdint>

namespace gfact {

// 128-bit membership mask over the elements of a group (order <= 128).
struct Mask128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    static constexpr int capacity = 128;

    static Mask128 single(int i) {
        Mask128 m;
        m.set(i);
        return m;
    }

    // mask with bits 0..n-1 set
    static Mask128 full(int n) {
        Mask128 m;
        if (n >= 64) {
            m.lo = ~std::uint64_t{0};
            m.hi = (n == 128) ? ~std::uint64_t{0}
                              : ((std::uint64_t{1} << (n - 64)) - 1);
        } else {
            m.lo = (n == 64) ? ~std::uint64_t{0}
                             : ((std::uint64_t{1} << n) - 1);
        }
        return m;
    }

    void set(int i) {
        if (i < 64) lo |= std::uint64_t{1} << i;
        else        hi |= std::uint64_t{1} << (i - 64);
    }
    void clear(int i) {
        if (i < 64) lo &= ~(std::uint64_t{1} << i);
        else        hi &= ~(std::uint64_t{1} << (i - 64));
    }
    bool test(int i) const {
        if (i < 64) return (lo >> i) & 1;
        return (hi >> (i - 64)) & 1;
    }

    int count() const { return std::popcount(lo) + std::popcount(hi); }
    bool empty() const { return lo == 0 && hi == 0; }

    bool intersects(const Mask128& o) const {
        return (lo & o.lo) != 0 || (hi & o.hi) != 0;
    }
    bool contains(const Mask128& o) const {
        return (o.lo & ~lo) == 0 && (o.hi & ~hi) == 0;
    }

    Mask128 operator|(const Mask128& o) const { return {lo | o.lo, hi | o.hi}; }
    Mask128 operator&(const Mask128& o) const { return {lo & o.lo, hi & o.hi}; }
    Mask128 operator^(const Mask128& o) const { return {lo ^ o.lo, hi ^ o.hi}; }
    Mask128& operator|=(const Mask128& o) { lo |= o.lo; hi |= o.hi; return *this; }
    Mask128& operator&=(const Mask128& o) { lo &= o.lo; hi &= o.hi; return *this; }
    Mask128& operator^=(const Mask128& o) { lo ^= o.lo; hi ^= o.hi; return *this; }

    // complement within the first n bits
    Mask128 complement(int n) const {
        Mask128 f = full(n);
        return {f.lo & ~lo, f.hi & ~hi};
    }

    // index of lowest set bit, -1 if empty
    int lowest() const {
        if (lo) return std::countr_zero(lo);
        if (hi) return 64 + std::countr_zero(hi);
        return -1;
    }

    // calls fn(i) for every set bit, ascending
    template <class Fn>
    void for_each(Fn&& fn) const {
        std::uint64_t w = lo;
        while (w) {
            fn(std::countr_zero(w));
            w &= w - 1;
        }
        w = hi;
        while (w) {
            fn(64 + std::countr_zero(w));
            w &= w - 1;
        }
    }

    auto operator<=>(const Mask128&) const = default;
};

}  // namespace gfact
