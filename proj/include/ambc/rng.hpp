#ifndef AMBC_RNG_HPP
#define AMBC_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>

namespace ambc {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Stateless block function: 128-bit counter + 64-bit key -> 128 random bits.
// Chosen so that every (point, trial) pair owns an independent substream and
// results do not depend on how trials are scheduled across threads.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static Counter block(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t(kMul0) * ctr[0];
            const std::uint64_t p1 = std::uint64_t(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

// One substream of the master generator, addressed by (seed, point, trial).
// Draws are consumed sequentially; the in-stream position occupies the low
// 64 counter bits, so a stream never collides with its siblings.
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint32_t point, std::uint32_t trial)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          point_(point),
          trial_(trial) {}

    std::uint32_t next_u32() {
        if (have_ == 0) refill();
        return buf_[--have_];
    }

    std::uint64_t next_u64() {
        const std::uint64_t hi = next_u32();
        const std::uint64_t lo = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Circularly symmetric complex Gaussian, E|z|^2 = var.
    std::complex<double> cnormal(double var) {
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log finite
        const double u2 = uniform01();
        const double r = std::sqrt(-var * std::log(u1));
        const double th = 2.0 * kPi * u2;
        return {r * std::cos(th), r * std::sin(th)};
    }

    // Equiprobable BPSK symbol.
    int bpsk_bit() { return (next_u64() & 1u) ? 1 : -1; }

  private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    void refill() {
        const Philox4x32::Counter ctr = {static_cast<std::uint32_t>(pos_),
                                         static_cast<std::uint32_t>(pos_ >> 32), trial_, point_};
        buf_ = Philox4x32::block(ctr, key_);
        have_ = 4;
        ++pos_;
    }

    Philox4x32::Key key_;
    std::uint32_t point_;
    std::uint32_t trial_;
    std::uint64_t pos_ = 0;
    Philox4x32::Counter buf_{};
    int have_ = 0;
};

} // namespace ambc

#endif
