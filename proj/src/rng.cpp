#include "senbd/rng.hpp"

#include <cmath>

namespace senbd {

double exponential(Xoshiro256& rng) noexcept { return -std::log(rng.uniform_open()); }

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t cell, std::uint64_t run) noexcept {
    std::uint64_t state = base_seed;
    std::uint64_t h = splitmix64(state);
    state = h ^ cell;
    h = splitmix64(state);
    state = h ^ run;
    return splitmix64(state);
}

}  // namespace senbd
