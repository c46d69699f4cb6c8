#include "treeharm/rng.hpp"

#include <cmath>
#include <numbers>

namespace treeharm {

namespace {

constexpr std::uint64_t k_golden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

cplx draw(CounterRng& rng, Dist dist) {
    switch (dist) {
    case Dist::disc: {
        const double r = std::sqrt(rng.next_unit());
        const double th = 2.0 * std::numbers::pi * rng.next_unit();
        return cplx(r * std::cos(th), r * std::sin(th));
    }
    case Dist::real_uniform:
        return cplx(2.0 * rng.next_unit() - 1.0, 0.0);
    case Dist::indicator:
        return cplx(rng.next_unit() < 0.25 ? 1.0 : 0.0, 0.0);
    case Dist::unit_interval:
        return cplx(rng.next_unit(), 0.0);
    }
    throw std::domain_error("draw: unknown distribution");
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base(mix64(seed ^ mix64(stream * k_golden + 1))) {}

std::uint64_t CounterRng::next_u64() {
    counter += k_golden;
    return mix64(base + counter);
}

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

CylFunction random_cyl_function(std::uint64_t seed, const TreeParams& t, int level,
                                Dist dist) {
    CounterRng rng(seed, static_cast<std::uint64_t>(dist));
    std::vector<cplx> v(static_cast<std::size_t>(sphere_size(t, level)));
    for (cplx& val : v) val = draw(rng, dist);
    return CylFunction(t, level, std::move(v));
}

BallFunction random_ball_function(std::uint64_t seed, const TreeParams& t, Dist dist) {
    CounterRng rng(seed, static_cast<std::uint64_t>(dist) + 16);
    BallFunction u(t);
    for (cplx& val : u.values) val = draw(rng, dist);
    return u;
}

} // namespace treeharm
