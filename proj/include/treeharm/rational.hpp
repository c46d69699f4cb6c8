#pragma once

#include <cstdint>
#include <vector>

#include "treeharm/tree.hpp"

namespace treeharm {

/// Exact rational arithmetic for small cross-checks (q <= 3, level <= 8).
/// Numerators and denominators stay far below overflow at that scale.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;
};

Rat rat(std::int64_t num, std::int64_t den = 1);
Rat operator+(Rat a, Rat b);
Rat operator-(Rat a, Rat b);
Rat operator*(Rat a, Rat b);
Rat operator/(Rat a, Rat b);
bool operator==(Rat a, Rat b);
double to_double(Rat a);

/// nu(E(x)) at the given level, exactly.
Rat rat_sector_measure(const TreeParams& t, int level);

/// Confluence measures mu_0..mu_{|x|} for a vertex at the given level, exactly.
std::vector<Rat> rat_confluence_measures(const TreeParams& t, int level);

/// E_n of a level-`level` cylindrical function with rational values, exactly.
std::vector<Rat> rat_cond_expect(const TreeParams& t, int level,
                                 std::vector<Rat> values, int n);

} // namespace treeharm
