#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace covert {

/// Philox4x32-10 counter-based generator.
///
/// A stream is identified by (seed, stream id); the 128-bit counter is split
/// into the stream id (upper half) and a block index (lower half). Any trial
/// can therefore be replayed in isolation, and work can be split across
/// threads by stream id without coordination.
class RandomStream {
public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_id_(stream_id) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept {
        if (cursor_ == 2) refill();
        return buffer_[cursor_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    [[nodiscard]] std::uint64_t seed() const noexcept {
        return static_cast<std::uint64_t>(key_[0]) | (static_cast<std::uint64_t>(key_[1]) << 32);
    }
    [[nodiscard]] std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Raw Philox4x32-10 bijection, exposed for known-answer testing.
    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int cursor_ = 2;
};

/// Stream-id namespaces. Each simulation purpose draws from its own tag so
/// channel draws and per-trial noise never share a stream.
enum class StreamTag : std::uint64_t {
    channel = 1,
    trial_h0 = 2,
    trial_h1 = 3,
    gain = 4,
    parameters = 5,
};

/// Stream id for the `index`-th unit of work under `tag` (index < 2^48).
constexpr std::uint64_t substream(StreamTag tag, std::uint64_t index) noexcept {
    return (static_cast<std::uint64_t>(tag) << 48) ^ (index & ((std::uint64_t{1} << 48) - 1));
}

}  // namespace covert
