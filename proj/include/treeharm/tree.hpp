#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace treeharm {

/// Homogeneous tree of degree q+1 rooted at o, truncated at radius `depth`.
/// A vertex is identified with its path from the root: the first branch index
/// lies in {0,...,q}, every later one in {0,...,q-1}. The empty path is o.
struct TreeParams {
    int q;
    int depth;

    TreeParams(int q_, int depth_) : q(q_), depth(depth_) {
        if (q < 2) throw std::domain_error("TreeParams: q must be >= 2");
        if (depth < 1) throw std::domain_error("TreeParams: depth must be >= 1");
    }
};

using Vertex = std::vector<std::uint8_t>;

/// #S(o,n): 1 at n=0, (q+1)q^(n-1) otherwise.
std::int64_t sphere_size(const TreeParams& t, int n);

/// #B(o,n) = 1 + (q+1)(q^n - 1)/(q - 1).
std::int64_t ball_size(const TreeParams& t, int n);

/// Index of the first level-n vertex in sphere-by-sphere ball order.
std::int64_t ball_offset(const TreeParams& t, int n);

/// Vertices of S(o,n) in lexicographic path order.
std::vector<Vertex> enumerate_sphere(const TreeParams& t, int n);

/// Length of the common initial segment of two paths.
int common_prefix_len(const Vertex& x, const Vertex& y);

/// Geodesic o = x_0, x_1, ..., x_|x| = x as the list of path prefixes.
std::vector<Vertex> geodesic(const Vertex& x);

/// Position of x within enumerate_sphere(|x|); the lexicographic rank.
std::int64_t sphere_index(const TreeParams& t, const Vertex& x);

/// Inverse of sphere_index.
Vertex vertex_at(const TreeParams& t, int level, std::int64_t index);

/// Sphere index of the level-k prefix of the vertex (level, index), k <= level.
std::int64_t ancestor_index(const TreeParams& t, int level, std::int64_t index, int k);

void validate_vertex(const TreeParams& t, const Vertex& x);

} // namespace treeharm
