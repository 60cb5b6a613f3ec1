#pragma once

#include <cstdint>
#include <random>

namespace slashtree {

using Engine = std::mt19937_64;

/// Uniform draw from [0, bound) by rejection. Unlike
/// std::uniform_int_distribution its output does not depend on the standard
/// library in use, so seeded reports stay byte-identical across toolchains.
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t bound) {
    const std::uint64_t limit = Engine::max() - (Engine::max() % bound + 1) % bound;
    std::uint64_t x = engine();
    while (x > limit) x = engine();
    return x % bound;
}

}  // namespace slashtree
