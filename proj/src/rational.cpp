#include "treeharm/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace treeharm {

Rat rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rat{num, den};
}

Rat operator+(Rat a, Rat b) { return rat(a.num * b.den + b.num * a.den, a.den * b.den); }
Rat operator-(Rat a, Rat b) { return rat(a.num * b.den - b.num * a.den, a.den * b.den); }
Rat operator*(Rat a, Rat b) { return rat(a.num * b.num, a.den * b.den); }
Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("rat: division by zero");
    return rat(a.num * b.den, a.den * b.num);
}
bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
double to_double(Rat a) { return static_cast<double>(a.num) / static_cast<double>(a.den); }

Rat rat_sector_measure(const TreeParams& t, int level) {
    if (level < 0 || level > t.depth)
        throw std::domain_error("rat_sector_measure: level outside [0, depth]");
    return rat(1, sphere_size(t, level));
}

std::vector<Rat> rat_confluence_measures(const TreeParams& t, int level) {
    if (level < 0 || level > t.depth)
        throw std::domain_error("rat_confluence_measures: level outside [0, depth]");
    std::vector<Rat> mu(static_cast<std::size_t>(level) + 1);
    if (level == 0) {
        mu[0] = rat(1);
        return mu;
    }
    mu[0] = rat(t.q, t.q + 1);
    for (int j = 1; j < level; ++j)
        mu[static_cast<std::size_t>(j)] =
            rat_sector_measure(t, j) - rat_sector_measure(t, j + 1);
    mu[static_cast<std::size_t>(level)] = rat_sector_measure(t, level);
    return mu;
}

std::vector<Rat> rat_cond_expect(const TreeParams& t, int level,
                                 std::vector<Rat> values, int n) {
    if (n < 0 || n > level)
        throw std::domain_error("rat_cond_expect: level outside [0, level]");
    if (static_cast<std::int64_t>(values.size()) != sphere_size(t, level))
        throw std::domain_error("rat_cond_expect: value count != sphere size");
    for (int cur = level; cur > n; --cur) {
        const std::size_t fan = static_cast<std::size_t>(cur == 1 ? t.q + 1 : t.q);
        std::vector<Rat> next(values.size() / fan);
        for (std::size_t b = 0; b < next.size(); ++b) {
            Rat acc = rat(0);
            for (std::size_t c = 0; c < fan; ++c) acc = acc + values[b * fan + c];
            next[b] = acc / rat(static_cast<std::int64_t>(fan));
        }
        values = std::move(next);
    }
    return values;
}

} // namespace treeharm
