#include "doctest.h"

#include <cmath>

#include "treeharm/rng.hpp"
#include "treeharm/treeops.hpp"

using namespace treeharm;
using doctest::Approx;

TEST_CASE("laplacian stencil") {
    TreeParams t(2, 4);
    SUBCASE("constants are in the kernel") {
        BallFunction c(t);
        for (cplx& v : c.values) v = cplx(3.0, -2.0);
        const BallFunction lc = laplacian(c);
        for (int n = 0; n < 4; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                CHECK(lc.at(n, i) == cplx(0.0));
    }
    SUBCASE("radial geometric profile") {
        BallFunction u(t);
        for (int n = 0; n <= 4; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                u.at(n, i) = std::pow(2.0, -n);
        const BallFunction lu = laplacian(u);
        CHECK(lu.at(0, 0).real() == Approx(0.5).epsilon(1e-15));
        // harmonic away from the root
        for (int n = 1; n < 4; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                CHECK(std::abs(lu.at(n, i)) < 1e-15);
    }
    SUBCASE("outermost sphere is left at zero") {
        const BallFunction r = laplacian(random_ball_function(3, t, Dist::disc));
        for (std::int64_t i = 0; i < sphere_size(t, 4); ++i)
            CHECK(r.at(4, i) == cplx(0.0));
    }
}

TEST_CASE("eigen residual of exact profiles") {
    TreeParams t(3, 6);
    for (cplx z : {cplx(0.0), cplx(tau(3) / 8.0), cplx(0.0, -0.5), cplx(0.2, -0.1)}) {
        const SpectralParam sp(3, z);
        BallFunction u(t);
        for (int n = 0; n <= 6; ++n) {
            const cplx v = phi_explicit(sp, n);
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i) u.at(n, i) = v;
        }
        CHECK(eigen_residual(u, sp) < 1e-12);
    }
}

TEST_CASE("epsilon_n averaging") {
    TreeParams t(2, 3);
    BallFunction u(t);
    // distinct values on the outer sphere, zero elsewhere
    for (std::int64_t i = 0; i < 12; ++i) u.at(3, i) = static_cast<double>(i);

    SUBCASE("n >= depth is the identity") {
        CHECK(epsilon_n(u, 3).values == u.values);
        CHECK(epsilon_n(u, 7).values == u.values);
    }
    SUBCASE("level-2 blocks average pairs") {
        const BallFunction e2 = epsilon_n(u, 2);
        for (std::int64_t i = 0; i < 12; ++i)
            CHECK(e2.at(3, i).real() == Approx(i / 2 * 2 + 0.5).epsilon(1e-15));
        // untouched below level 2
        CHECK(e2.at(2, 1) == u.at(2, 1));
    }
    SUBCASE("level-0 averages the whole sphere") {
        const BallFunction e0 = epsilon_n(u, 0);
        for (std::int64_t i = 0; i < 12; ++i)
            CHECK(e0.at(3, i).real() == Approx(5.5).epsilon(1e-15));
    }
    SUBCASE("sphere-constant functions are fixed points, bitwise") {
        BallFunction c(t);
        const double v = 0.1 + 0.2;
        for (int n = 0; n <= 3; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i) c.at(n, i) = v;
        for (int n = 0; n <= 3; ++n) CHECK(epsilon_n(c, n).values == c.values);
    }
    SUBCASE("idempotent bitwise") {
        const BallFunction e1 = epsilon_n(u, 1);
        CHECK(epsilon_n(e1, 1).values == e1.values);
    }
}

TEST_CASE("epsilon_star dominates the function") {
    TreeParams t(2, 5);
    const BallFunction u = random_ball_function(11, t, Dist::disc);
    const BallFunction star = epsilon_star(u);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        CHECK(star.values[i].imag() == 0.0);
        CHECK(star.values[i].real() >= std::abs(u.values[i]) - 1e-14);
    }
}

TEST_CASE("sphere averages") {
    TreeParams t(2, 2);
    BallFunction u(t);
    u.at(1, 0) = 3.0;
    u.at(1, 1) = -4.0;
    u.at(1, 2) = 0.0;
    CHECK(sphere_lr_average(u, 1, 1.0) == Approx(7.0 / 3.0).epsilon(1e-15));
    CHECK(sphere_lr_average(u, 1, 2.0) == Approx(std::sqrt(25.0 / 3.0)).epsilon(1e-15));
    CHECK(sphere_lr_average(u, 1, INFINITY) == Approx(4.0).epsilon(1e-15));
    CHECK_THROWS_AS(sphere_lr_average(u, 1, 0.3), std::domain_error);
}

TEST_CASE("hardy norms on constants") {
    TreeParams t(2, 6);
    BallFunction one(t);
    for (cplx& v : one.values) v = 1.0;

    // p = 1 normalizer is identically 1
    const HardyNorm h1 = hardy_norm_p(one, delta_index(1.0), 2.0);
    CHECK(h1.value == Approx(1.0).epsilon(1e-12));

    // p = 2 normalizer decays like (1+n (q-1)/(q+1)) q^(-n/2): the sup sits at depth
    const HardyNorm h2 = hardy_norm_p(one, delta_index(2.0), 2.0);
    CHECK(h2.argmax_level == 6);
    CHECK(h2.value == Approx(8.0 / 3.0).epsilon(1e-12));

    const HardyNorm hs = hardy_norm_star(one, 4.0);
    CHECK(hs.argmax_level == 6);
    CHECK(hs.value == Approx(8.0).epsilon(1e-12));
}

TEST_CASE("contraction of the averaging operators") {
    TreeParams t(2, 8);
    const CylFunction F = random_cyl_function(17, t, 2, Dist::disc);
    const SpectralParam sp(2, cplx(tau(2) / 6.0));
    const BallFunction u = poisson_transform(F, sp);
    for (int n = 0; n <= 8; n += 2) {
        const BallFunction en = epsilon_n(u, n);
        for (double r : std::vector<double>{1.0, 2.0, INFINITY}) {
            for (int l = 0; l <= 8; ++l)
                CHECK(sphere_lr_average(en, l, r) <=
                      sphere_lr_average(u, l, r) + 1e-12);
            CHECK(hardy_norm_star(en, r).value <=
                  hardy_norm_star(u, r).value + 1e-12);
            CHECK(hardy_norm_p(en, delta_index(1.0), r).value <=
                  hardy_norm_p(u, delta_index(1.0), r).value + 1e-12);
        }
    }
}

TEST_CASE("weak type inequality") {
    TreeParams t(2, 6);
    std::vector<double> lambdas;
    for (int k = 1; k <= 20; ++k) lambdas.push_back(0.08 * k);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const BallFunction u = random_ball_function(seed, t, Dist::unit_interval);
        for (int m : {2, 4, 6})
            for (bool ok : weak_type_check(u, m, lambdas)) CHECK(ok);
    }
    SUBCASE("level above the truncation is rejected") {
        const BallFunction u = random_ball_function(1, t, Dist::unit_interval);
        CHECK_THROWS_AS(weak_type_check(u, 7, lambdas), std::domain_error);
    }
}
