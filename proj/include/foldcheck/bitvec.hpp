#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace foldcheck {

// Dense vector over the two-element field.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVec unit(std::size_t size, std::size_t index)
    {
        BitVec v(size);
        v.set(index);
        return v;
    }

    std::size_t size() const noexcept { return size_; }

    bool test(std::size_t i) const noexcept { return (words_[i / 64] >> (i % 64)) & 1u; }

    void set(std::size_t i, bool value = true) noexcept
    {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value)
            words_[i / 64] |= mask;
        else
            words_[i / 64] &= ~mask;
    }

    void flip(std::size_t i) noexcept { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    bool none() const noexcept
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    bool any() const noexcept { return !none(); }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    // Parity of the dot product.
    bool dot(const BitVec& other) const noexcept
    {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < words_.size(); ++k)
            acc ^= words_[k] & other.words_[k];
        return std::popcount(acc) & 1;
    }

    BitVec& operator^=(const BitVec& other) noexcept
    {
        for (std::size_t k = 0; k < words_.size(); ++k)
            words_[k] ^= other.words_[k];
        return *this;
    }

    friend BitVec operator^(BitVec a, const BitVec& b) noexcept
    {
        a ^= b;
        return a;
    }

    bool operator==(const BitVec&) const = default;

    template <class F>
    void for_each_set(F&& f) const
    {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            std::uint64_t w = words_[k];
            while (w) {
                const int bit = std::countr_zero(w);
                f(k * 64 + static_cast<std::size_t>(bit));
                w &= w - 1;
            }
        }
    }

    std::vector<int> to_bits() const
    {
        std::vector<int> out(size_);
        for (std::size_t i = 0; i < size_; ++i)
            out[i] = test(i) ? 1 : 0;
        return out;
    }

    static BitVec from_bits(const std::vector<int>& bits)
    {
        BitVec v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & 1)
                v.set(i);
        return v;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace foldcheck
