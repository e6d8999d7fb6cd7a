#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace relex {

// Fixed-width bitset sized at runtime. Used for atom sets keyed by the
// vocabulary's dense atom index; the planner hashes millions of these so
// the word storage is exposed for the hasher.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    size_t size() const { return nbits_; }

    bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void assign(size_t i, bool v) { v ? set(i) : reset(i); }

    size_t count() const {
        size_t n = 0;
        for (uint64_t w : words_) n += static_cast<size_t>(__builtin_popcountll(w));
        return n;
    }

    bool none() const {
        for (uint64_t w : words_)
            if (w) return false;
        return true;
    }

    bool contains_all(const Bitset& other) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if ((other.words_[k] & ~words_[k]) != 0) return false;
        return true;
    }

    bool intersects(const Bitset& other) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if ((words_[k] & other.words_[k]) != 0) return true;
        return false;
    }

    Bitset& operator|=(const Bitset& o) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    Bitset& operator&=(const Bitset& o) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    // this \ o
    Bitset& subtract(const Bitset& o) {
        for (size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }

    bool operator==(const Bitset& o) const = default;

    // first set bit at or after i, or size() if none
    size_t find_next(size_t i) const {
        while (i < nbits_) {
            uint64_t w = words_[i >> 6] >> (i & 63);
            if (w) return i + static_cast<size_t>(__builtin_ctzll(w));
            i = (i | 63) + 1;
        }
        return nbits_;
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

struct BitsetHash {
    size_t operator()(const Bitset& b) const {
        uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (uint64_t w : b.words()) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace relex
