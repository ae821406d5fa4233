#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace segmint {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as the stream
// generator and as the seed-derivation hash, so per-run seeds are
// schedule-independent.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Fold an ordered tuple of values into a base seed. derive_seed(b, {x,y})
// != derive_seed(b, {y,x}) in general, which is what run-identification
// needs.
inline std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = base;
    splitmix64(s);
    for (std::uint64_t p : parts) {
        s ^= p + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        splitmix64(s);
    }
    std::uint64_t out = s;
    return splitmix64(out);
}

// Small deterministic PRNG. std::mt19937_64 would do for the engine but the
// standard distributions are implementation-defined, so uniform and normal
// are produced by explicit transforms to keep artifacts byte-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1), 53 random bits
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform index in [0, n)
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
        return static_cast<std::size_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_index(static_cast<std::size_t>(hi - lo) + 1));
    }

    // Box-Muller, cosine branch only
    double normal() {
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    double lognormal(double mu, double sigma) { return std::exp(mu + sigma * normal()); }

    // k distinct indices from [0, n), ascending
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::uint64_t state_;
};

inline std::vector<std::size_t> Rng::sample_without_replacement(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_without_replacement: k exceeds n");
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(pool[i], pool[i + uniform_index(n - i)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace segmint
