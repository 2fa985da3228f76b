#ifndef SHAC_RNG_HPP
#define SHAC_RNG_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace shac {

/// splitmix64 finalizer, used to derive well-separated seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for a child stream, stable across platforms and runs.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(root ^ splitmix64(stream)) + index);
}

/// Seeded random source with a fixed generation recipe.
///
/// Every consumer draws through uniform()/uniform_index(), each of which costs
/// exactly one engine step. That makes draw counts predictable, which is what
/// the reproducibility contracts of the samplers rely on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits. One engine step.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * kInv53;
    }

    /// Uniform index in {0, ..., n-1}. One engine step. n must be >= 1.
    std::size_t uniform_index(std::size_t n) {
        const auto idx = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return idx < n ? idx : n - 1;
    }

    /// In-place Fisher-Yates shuffle driven by uniform_index.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    static constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53

    std::mt19937_64 engine_;
};

} // namespace shac

#endif // SHAC_RNG_HPP
