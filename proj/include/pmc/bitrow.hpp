#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pmc {

// Fixed-width bit vector used for adjacency rows, vertex sets and GF(2)
// elimination. All binary operators assume equal width.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t nbits) : nbits_(nbits), w_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }
    bool empty_storage() const { return w_.empty(); }

    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    void assign(std::size_t i, bool b) { b ? set(i) : reset(i); }
    void clear() { for (auto& w : w_) w = 0; }
    void release() { w_.clear(); w_.shrink_to_fit(); nbits_ = 0; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : w_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitRow& operator^=(const BitRow& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i]; return *this; }
    BitRow& operator&=(const BitRow& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i]; return *this; }
    BitRow& operator|=(const BitRow& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i]; return *this; }
    // this := this & ~o
    BitRow& andnot(const BitRow& o) { for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i]; return *this; }

    friend BitRow operator^(BitRow a, const BitRow& b) { a ^= b; return a; }
    friend BitRow operator&(BitRow a, const BitRow& b) { a &= b; return a; }
    friend BitRow operator|(BitRow a, const BitRow& b) { a |= b; return a; }

    bool operator==(const BitRow& o) const { return w_ == o.w_; }

    // complement within the declared width
    void flip_all() {
        for (auto& w : w_) w = ~w;
        if (nbits_ & 63) w_.back() &= (std::uint64_t(1) << (nbits_ & 63)) - 1;
    }

    int find_first() const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64 + std::countr_zero(w_[i]));
        return -1;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(std::size_t(i * 64 + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    const std::uint64_t* words() const { return w_.data(); }
    std::uint64_t* words() { return w_.data(); }
    std::size_t word_count() const { return w_.size(); }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> w_;
};

} // namespace pmc
