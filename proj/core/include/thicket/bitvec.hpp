#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace thicket {

/// Packed bit-vector over a fixed finite universe. Concepts, relation-matrix
/// rows and domain subsets are all small dense bit sets; this keeps them
/// compact, hashable and cheap to compare.
class bitvec {
public:
    bitvec() = default;
    explicit bitvec(int size) : size_(size), words_((size + 63) / 64, 0) {
        if (size < 0) throw std::invalid_argument("bitvec: negative size");
    }

    int size() const { return size_; }

    bool test(int i) const {
        return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
    }

    void set(int i, bool value = true) {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value)
            words_[static_cast<std::size_t>(i) >> 6] |= mask;
        else
            words_[static_cast<std::size_t>(i) >> 6] &= ~mask;
    }

    int count() const {
        int total = 0;
        for (std::uint64_t w : words_) total += std::popcount(w);
        return total;
    }

    bool operator==(const bitvec&) const = default;
    auto operator<=>(const bitvec&) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::uint64_t hash() const {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(size_);
        for (std::uint64_t w : words_) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace thicket
