#include "doctest.h"

#include <stdexcept>

#include "treeharm/tree.hpp"

using namespace treeharm;

TEST_CASE("params validation") {
    CHECK_THROWS_AS(TreeParams(1, 4), std::domain_error);
    CHECK_THROWS_AS(TreeParams(2, 0), std::domain_error);
    CHECK_NOTHROW(TreeParams(2, 1));
}

TEST_CASE("sphere and ball sizes") {
    TreeParams t2(2, 6);
    CHECK(sphere_size(t2, 0) == 1);
    CHECK(sphere_size(t2, 1) == 3);
    CHECK(sphere_size(t2, 2) == 6);
    CHECK(sphere_size(t2, 5) == 48);
    CHECK(ball_size(t2, 0) == 1);
    CHECK(ball_size(t2, 3) == 1 + 3 + 6 + 12);
    CHECK(ball_offset(t2, 3) == 10);

    TreeParams t3(3, 5);
    CHECK(sphere_size(t3, 1) == 4);
    CHECK(sphere_size(t3, 4) == 4 * 27);
    CHECK(ball_size(t3, 2) == 17);
}

TEST_CASE("sphere enumeration is lexicographic with mixed radix") {
    TreeParams t(2, 4);
    const std::vector<Vertex> s2 = enumerate_sphere(t, 2);
    REQUIRE(s2.size() == 6);
    CHECK(s2[0] == Vertex{0, 0});
    CHECK(s2[1] == Vertex{0, 1});
    CHECK(s2[2] == Vertex{1, 0});
    CHECK(s2[3] == Vertex{1, 1});
    CHECK(s2[4] == Vertex{2, 0});
    CHECK(s2[5] == Vertex{2, 1});

    const std::vector<Vertex> s0 = enumerate_sphere(t, 0);
    REQUIRE(s0.size() == 1);
    CHECK(s0[0].empty());
}

TEST_CASE("index round trip") {
    TreeParams t(3, 4);
    for (int level = 0; level <= 4; ++level) {
        const std::vector<Vertex> sphere = enumerate_sphere(t, level);
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(sphere.size()); ++i) {
            CHECK(sphere_index(t, sphere[static_cast<std::size_t>(i)]) == i);
            CHECK(vertex_at(t, level, i) == sphere[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("ancestor indices") {
    TreeParams t(2, 4);
    // (1,1) sits under child 1 of the root
    CHECK(ancestor_index(t, 2, 3, 1) == 1);
    CHECK(ancestor_index(t, 2, 3, 2) == 3);
    // every level-1 vertex has the root as ancestor
    CHECK(ancestor_index(t, 1, 2, 0) == 0);
    CHECK(ancestor_index(t, 3, 11, 0) == 0);
    // (2,1,0) -> (2,1) -> (2)
    const Vertex x{2, 1, 0};
    const std::int64_t xi = sphere_index(t, x);
    CHECK(vertex_at(t, 2, ancestor_index(t, 3, xi, 2)) == Vertex{2, 1});
    CHECK(vertex_at(t, 1, ancestor_index(t, 3, xi, 1)) == Vertex{2});
}

TEST_CASE("children blocks are contiguous under the parent") {
    TreeParams t(3, 3);
    for (std::int64_t parent = 0; parent < sphere_size(t, 2); ++parent)
        for (int c = 0; c < 3; ++c)
            CHECK(ancestor_index(t, 3, parent * 3 + c, 2) == parent);
}

TEST_CASE("common prefix and geodesic") {
    CHECK(common_prefix_len(Vertex{0, 1, 0}, Vertex{0, 1, 1}) == 2);
    CHECK(common_prefix_len(Vertex{0, 1}, Vertex{2}) == 0);
    CHECK(common_prefix_len(Vertex{1, 0}, Vertex{1, 0, 1, 1}) == 2);

    const std::vector<Vertex> path = geodesic(Vertex{0, 1, 1});
    REQUIRE(path.size() == 4);
    CHECK(path.front().empty());
    CHECK(path[1] == Vertex{0});
    CHECK(path[2] == Vertex{0, 1});
    CHECK(path.back() == Vertex{0, 1, 1});
}

TEST_CASE("vertex validation") {
    TreeParams t(2, 3);
    CHECK_NOTHROW(validate_vertex(t, Vertex{2, 1, 0}));
    CHECK_THROWS_AS(validate_vertex(t, Vertex{3}), std::domain_error);       // first digit > q
    CHECK_THROWS_AS(validate_vertex(t, Vertex{0, 2}), std::domain_error);    // later digit >= q
    CHECK_THROWS_AS(validate_vertex(t, Vertex{0, 1, 0, 1}), std::domain_error); // beyond depth
}
