#include "fvol/rng.hpp"

#include <cmath>
#include <stdexcept>

#include "fvol/partition.hpp"

namespace fvol {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t substream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, substream_(substream) {}

void RandomStream::refill() {
    buffer_ = philox4x32({static_cast<std::uint32_t>(block_), static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(substream_), static_cast<std::uint32_t>(substream_ >> 32)},
                         key_);
    ++block_;
    cursor_ = 0;
}

std::uint64_t RandomStream::next_u64() {
    if (cursor_ >= 3) refill();
    const std::uint64_t lo = buffer_[static_cast<std::size_t>(cursor_)];
    const std::uint64_t hi = buffer_[static_cast<std::size_t>(cursor_ + 1)];
    cursor_ += 2;
    return (hi << 32) | lo;
}

double RandomStream::uniform() {
    // 53 random bits shifted by half an ulp keep the result away from 0 and 1
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_normal_ = radius * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return radius * std::cos(kTwoPi * u2);
}

double RandomStream::exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("RandomStream::exponential: rate must be > 0");
    return -std::log(uniform()) / rate;
}

}  // namespace fvol
