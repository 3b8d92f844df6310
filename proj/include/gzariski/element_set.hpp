#ifndef GZARISKI_ELEMENT_SET_HPP
#define GZARISKI_ELEMENT_SET_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <functional>
#include <vector>

namespace gz {

using Elem = std::uint32_t;

// Fixed-universe bitset. Used both for sets of carrier elements (ideals,
// submodules) and for subsets of spectrum points; all set algebra in the
// library is word-parallel on these.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(std::size_t universe)
        : bits_(universe), words_((universe + 63) / 64, 0) {}

    std::size_t universe() const { return bits_; }

    void set(Elem i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(Elem i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(Elem i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += std::popcount(w);
        return n;
    }
    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    ElementSet& operator|=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    ElementSet& operator&=(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    ElementSet& subtract(const ElementSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend ElementSet operator|(ElementSet a, const ElementSet& b) { a |= b; return a; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) { a &= b; return a; }

    ElementSet complement() const {
        ElementSet r(bits_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.trim();
        return r;
    }

    bool operator==(const ElementSet& o) const { return words_ == o.words_; }
    bool operator!=(const ElementSet& o) const { return !(*this == o); }

    bool subset_of(const ElementSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }
    bool intersects(const ElementSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    template <class Fn> void for_each(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                unsigned b = static_cast<unsigned>(std::countr_zero(w));
                fn(static_cast<Elem>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }
    std::vector<Elem> members() const {
        std::vector<Elem> v;
        v.reserve(count());
        for_each([&](Elem e) { v.push_back(e); });
        return v;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull ^ bits_;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    }

    static ElementSet full(std::size_t universe) {
        ElementSet s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }
    static ElementSet singleton(std::size_t universe, Elem e) {
        ElementSet s(universe);
        s.set(e);
        return s;
    }

private:
    void trim() {
        if (bits_ % 64 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    }

    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const { return static_cast<std::size_t>(s.hash()); }
};

} // namespace gz

#endif
