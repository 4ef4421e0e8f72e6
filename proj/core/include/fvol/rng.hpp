#pragma once

#include <array>
#include <cstdint>

namespace fvol {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/**
 * Seeded random stream keyed by (seed, substream).
 *
 * The seed is the Philox key; the substream occupies the high half of the
 * counter and the draw index the low half, so every (seed, substream) pair
 * names an independent, reproducible sequence. Replicate i of a Monte Carlo
 * experiment uses its own substream and never shares state with others.
 */
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t substream);

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double uniform();
    double normal();
    /// Exponential with the given rate.
    double exponential(double rate);

private:
    void refill();

    std::array<std::uint32_t, 2> key_;
    std::uint64_t substream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int cursor_ = 4;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace fvol
