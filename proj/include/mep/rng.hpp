#pragma once

#include <cassert>
#include <cstdint>
#include <initializer_list>

namespace mep {

// Deterministic random stream built on the splitmix64 generator.
//
// Standard-library distributions are implementation-defined, so every draw
// needed by the engine is implemented here explicitly. Equal seeds produce
// equal draw sequences on every platform, which is what makes runs and grid
// sweeps byte-reproducible.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform over [0, n); n must be positive. The modulo bias is below
    // n / 2^64 and irrelevant for population-scale draws.
    std::size_t uniform_index(std::size_t n) {
        assert(n > 0);
        return static_cast<std::size_t>(next_u64() % n);
    }

    // uniform over [0, 1)
    double uniform_real() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform_real(double lo, double hi) {
        return lo + (hi - lo) * uniform_real();
    }

    // always consumes exactly one draw, so call sequences stay aligned
    bool bernoulli(double p) { return uniform_real() < p; }

    // splitmix64 finalizer; also used as the seed-derivation mix
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

// Fixed splitting rule for deriving independent sub-streams from one master
// seed. The result depends only on the ids, never on evaluation order.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t s = RandomStream::mix(master + 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t id : ids)
        s = RandomStream::mix(s ^ RandomStream::mix(id + 0xD1B54A32D192ED03ULL));
    return s;
}

} // namespace mep
