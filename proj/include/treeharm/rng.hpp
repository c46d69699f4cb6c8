#pragma once

#include <cstdint>

#include "treeharm/boundary.hpp"
#include "treeharm/transform.hpp"

namespace treeharm {

/// Counter-based generator built on the splitmix64 finalizer. Draw k of a
/// stream is a pure function of (seed, stream, k): platform-independent and
/// reproducible, which the golden-file tests rely on.
/// base = mix64(seed ^ mix64(stream * GOLDEN + 1)); draw k returns
/// mix64(base + (k+1) * GOLDEN) with GOLDEN = 0x9E3779B97F4A7C15.
struct CounterRng {
    std::uint64_t base;
    std::uint64_t counter = 0;

    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next_u64();
    /// Uniform on [0, 1), 53-bit resolution.
    double next_unit();
};

enum class Dist {
    disc,         // uniform on the closed unit disc
    real_uniform, // uniform on [-1, 1]
    indicator,    // 1 with probability 1/4, else 0
    unit_interval // uniform on [0, 1)
};

/// Cylindrical function at `level` with i.i.d. values in enumerate order.
/// Stream id is the distribution tag, so distinct distributions decorrelate
/// under the same seed.
CylFunction random_cyl_function(std::uint64_t seed, const TreeParams& t, int level,
                                Dist dist);

/// Ball function with i.i.d. values per vertex, sphere-by-sphere order.
BallFunction random_ball_function(std::uint64_t seed, const TreeParams& t, Dist dist);

} // namespace treeharm
