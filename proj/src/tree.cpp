#include "treeharm/tree.hpp"

namespace treeharm {

static void check_level(const TreeParams& t, int n) {
    if (n < 0 || n > t.depth)
        throw std::domain_error("tree: level outside [0, depth]");
}

std::int64_t sphere_size(const TreeParams& t, int n) {
    check_level(t, n);
    if (n == 0) return 1;
    std::int64_t s = t.q + 1;
    for (int k = 1; k < n; ++k) s *= t.q;
    return s;
}

std::int64_t ball_size(const TreeParams& t, int n) {
    check_level(t, n);
    std::int64_t acc = 0;
    for (int k = 0; k <= n; ++k) acc += sphere_size(t, k);
    return acc;
}

std::int64_t ball_offset(const TreeParams& t, int n) {
    check_level(t, n);
    return n == 0 ? 0 : ball_size(t, n - 1);
}

std::vector<Vertex> enumerate_sphere(const TreeParams& t, int n) {
    check_level(t, n);
    std::vector<Vertex> out;
    out.reserve(static_cast<std::size_t>(sphere_size(t, n)));
    Vertex path(static_cast<std::size_t>(n), 0);
    const std::int64_t total = sphere_size(t, n);
    for (std::int64_t i = 0; i < total; ++i) {
        out.push_back(path);
        // odometer increment, last digit fastest; digit 0 has radix q+1
        for (int d = n - 1; d >= 0; --d) {
            int radix = (d == 0) ? t.q + 1 : t.q;
            if (++path[static_cast<std::size_t>(d)] < radix) break;
            path[static_cast<std::size_t>(d)] = 0;
        }
    }
    return out;
}

int common_prefix_len(const Vertex& x, const Vertex& y) {
    std::size_t m = x.size() < y.size() ? x.size() : y.size();
    std::size_t k = 0;
    while (k < m && x[k] == y[k]) ++k;
    return static_cast<int>(k);
}

std::vector<Vertex> geodesic(const Vertex& x) {
    std::vector<Vertex> out;
    out.reserve(x.size() + 1);
    for (std::size_t k = 0; k <= x.size(); ++k)
        out.emplace_back(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k));
    return out;
}

std::int64_t sphere_index(const TreeParams& t, const Vertex& x) {
    validate_vertex(t, x);
    // mixed radix (q+1, q, ..., q); the first digit ends up with weight q^(n-1)
    std::int64_t idx = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
        idx = (k == 0 ? 0 : idx * t.q) + x[k];
    return idx;
}

Vertex vertex_at(const TreeParams& t, int level, std::int64_t index) {
    check_level(t, level);
    if (index < 0 || index >= sphere_size(t, level))
        throw std::domain_error("tree: sphere index out of range");
    Vertex path(static_cast<std::size_t>(level), 0);
    for (int d = level - 1; d >= 1; --d) {
        path[static_cast<std::size_t>(d)] = static_cast<std::uint8_t>(index % t.q);
        index /= t.q;
    }
    if (level > 0) path[0] = static_cast<std::uint8_t>(index);
    return path;
}

std::int64_t ancestor_index(const TreeParams& t, int level, std::int64_t index, int k) {
    check_level(t, level);
    if (k < 0 || k > level) throw std::domain_error("tree: ancestor level out of range");
    if (k == 0) return 0;
    // each division maps a level-d index to its parent at d-1; valid for d-1 >= 1
    for (int d = level; d > k; --d) index /= t.q;
    return index;
}

void validate_vertex(const TreeParams& t, const Vertex& x) {
    if (static_cast<int>(x.size()) > t.depth)
        throw std::domain_error("tree: vertex beyond truncation depth");
    for (std::size_t k = 0; k < x.size(); ++k) {
        int radix = (k == 0) ? t.q + 1 : t.q;
        if (x[k] >= radix) throw std::domain_error("tree: branch index out of range");
    }
}

} // namespace treeharm
