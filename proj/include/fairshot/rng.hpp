#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace fairshot {

/// SplitMix64 finalizer. Used to derive independent seed streams from
/// (seed, tag...) tuples so concurrent consumers never share state.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic random source. std::mt19937_64 output is pinned by the
/// standard; the bounded/real draws below are hand-rolled because the
/// std distributions are implementation-defined and would break
/// cross-platform reproducibility of splits and selections.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Independent stream keyed by seed plus tags; order of tags matters.
    static Rng derive(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
        std::uint64_t h = mix64(seed);
        for (std::uint64_t t : tags) {
            h = mix64(h ^ mix64(t));
        }
        return Rng(h);
    }

    std::uint64_t next() { return engine_(); }

    /// Unbiased integer in [0, n) via masked rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0};
        const std::uint64_t range = n - 1;
        mask >>= __builtin_clzll(range | 1);
        std::uint64_t v;
        do {
            v = engine_() & mask;
        } while (v > range);
        return v;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double canonical() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Fisher-Yates shuffle using the deterministic bounded draw.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct indices drawn uniformly from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k) {
        std::vector<std::size_t> idx(n);
        for (std::size_t i = 0; i < n; ++i) idx[i] = i;
        std::vector<std::size_t> out;
        out.reserve(k);
        for (std::size_t i = 0; i < k && i < n; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(n - i));
            std::swap(idx[i], idx[j]);
            out.push_back(idx[i]);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace fairshot
