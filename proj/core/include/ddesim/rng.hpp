#pragma once

#include <cstdint>
#include <random>

namespace ddesim {

// SplitMix64 finalizer chain; turns (seed, index) pairs into well-mixed
// engine seeds so substreams are independent of evaluation order.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

// Deterministic uniform stream. mt19937_64 is fully specified by the
// standard, so sequences are identical across platforms and compilers.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // One engine draw per call, value in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// Stream for the i-th sample of an ensemble run.
inline RngStream sample_stream(std::uint64_t master_seed, std::uint64_t sample_index) {
    return RngStream(mix_seed(master_seed, sample_index));
}

}  // namespace ddesim
