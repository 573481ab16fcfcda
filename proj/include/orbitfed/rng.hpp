#pragma once

#include <cstdint>
#include <random>

namespace orbitfed {

// splitmix64 step; used to derive independent sub-seeds from one master seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d4a2ca592e79d5ull;
    return z ^ (z >> 31);
}

// Stable sub-seed for a named stream: mixes the master seed with a stream tag
// and an index, so e.g. (training, sat 12, round 3) always maps to the same
// generator state.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index = 0) {
    uint64_t s = master ^ (stream * 0xd6e8feb86659fd93ull);
    s ^= splitmix64(s) + index * 0xa0761d6478bd642full;
    return splitmix64(s);
}

namespace seed_stream {
constexpr uint64_t partition = 1;
constexpr uint64_t training = 2;
constexpr uint64_t backoff = 3;
constexpr uint64_t dataset = 4;
constexpr uint64_t test_split = 5;
} // namespace seed_stream

} // namespace orbitfed
