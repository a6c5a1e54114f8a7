#pragma once

#include <cstdint>
#include <random>

namespace domatic {

// Counter-based seed derivation: stream i of a master seed is a pure function
// of (master, i), so results never depend on which worker ran which stream.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// A seeded random stream. The engine is std::mt19937_64; the integer and
// real helpers below are written out so that draws are identical across
// standard library implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : seed_(seed), engine_(seed) {}
    Stream(std::uint64_t master, std::uint64_t stream) : Stream(derive_seed(master, stream)) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return engine_(); }

    // Uniform on [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace domatic
