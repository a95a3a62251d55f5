#ifndef SHANNON_BITSET_HPP
#define SHANNON_BITSET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace shannon {

/// Fixed-size dynamic bit vector used for adjacency rows and candidate sets.
class Bitset {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    Bitset() = default;
    explicit Bitset(std::size_t size) : size_(size), words_((size + word_bits - 1) / word_bits, 0) {}

    static Bitset full(std::size_t size) {
        Bitset b(size);
        for (auto& w : b.words_) w = ~word_type{0};
        b.trim();
        return b;
    }

    std::size_t size() const noexcept { return size_; }
    std::size_t word_count() const noexcept { return words_.size(); }
    const word_type* data() const noexcept { return words_.data(); }
    word_type* data() noexcept { return words_.data(); }

    bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1u; }
    void set(std::size_t i) noexcept { words_[i / word_bits] |= word_type{1} << (i % word_bits); }
    void reset(std::size_t i) noexcept { words_[i / word_bits] &= ~(word_type{1} << (i % word_bits)); }
    void assign(std::size_t i, bool v) noexcept { v ? set(i) : reset(i); }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool any() const noexcept {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const noexcept { return !any(); }

    /// Index of the lowest set bit, or size() when empty.
    std::size_t first() const noexcept { return next(0); }

    /// Index of the lowest set bit at position >= from, or size() when none.
    std::size_t next(std::size_t from) const noexcept {
        if (from >= size_) return size_;
        std::size_t wi = from / word_bits;
        word_type w = words_[wi] & (~word_type{0} << (from % word_bits));
        while (true) {
            if (w) return wi * word_bits + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size()) return size_;
            w = words_[wi];
        }
    }

    Bitset& operator&=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    Bitset& operator|=(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    /// this &= ~o
    Bitset& subtract(const Bitset& o) noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    void flip() noexcept {
        for (auto& w : words_) w = ~w;
        trim();
    }

    bool intersects(const Bitset& o) const noexcept {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t i = first(); i < size_; i = next(i + 1)) out.push_back(i);
        return out;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) = default;

    friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }

private:
    void trim() noexcept {
        if (size_ % word_bits && !words_.empty())
            words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

}  // namespace shannon

#endif  // SHANNON_BITSET_HPP
