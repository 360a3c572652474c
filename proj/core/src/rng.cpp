#include "ddesim/rng.hpp"

namespace ddesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ull * (b + 1)));
}

}  // namespace ddesim
