#include "doctest.h"

#include <cmath>

#include "treeharm/inversion.hpp"
#include "treeharm/rng.hpp"
#include "treeharm/transform.hpp"

using namespace treeharm;
using doctest::Approx;

namespace {

double rel_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double gap = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        gap = std::max(gap, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(b[i]));
    }
    return gap / scale;
}

} // namespace

TEST_CASE("coefficient closed forms match the literal sphere sums") {
    for (int q : {2, 3}) {
        for (double frac : {1.0 / 8.0, 1.0 / 6.0, 1.0 / 5.0}) {
            const SpectralParam sp(q, cplx(tau(q) * frac, 0.0));
            for (int n : {1, 2, 5, 8}) {
                const InversionCoefficients co = coefficients(n, sp, 3);
                for (int j = 0; j <= std::min(3, n); ++j) {
                    const cplx lit = k_literal(j, n, sp);
                    CHECK(std::abs(co.K[static_cast<std::size_t>(j)] - lit) < 1e-12);
                    CHECK(co.K[static_cast<std::size_t>(j)].imag() == 0.0);
                    CHECK(co.K[static_cast<std::size_t>(j)].real() >= 0.0);
                }
                for (const cplx& aj : co.a)
                    CHECK(std::abs(aj) * 2.0 * n <= co.b);
            }
        }
    }
}

TEST_CASE("single-average special case") {
    // at z = tau/4 the level-1 spherical value vanishes, so T_1 is exact
    const SpectralParam sp(2, cplx(tau(2) / 4.0, 0.0));
    const InversionCoefficients co = coefficients(1, sp, 0);
    CHECK(co.K[0].real() == Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(k_literal(0, 1, sp) - cplx(1.0)) < 1e-14);

    TreeParams t(2, 6);
    const CylFunction one(t, 0, {cplx(1.0)});
    const CylFunction t1 = t_n_bruteforce(one, sp, 1);
    REQUIRE(t1.level == 1);
    for (const cplx& v : t1.values) CHECK(std::abs(v - 1.0) < 1e-14);

    // normalization q/(2(q+1)|c|^2) = 4/3 here, so the n=1 error on
    // constants is |4/3 - 1| = 1/3
    CHECK(inversion_error(one, sp, 1, 2.0) == Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("operator oracle equality") {
    for (int q : {2, 3}) {
        TreeParams t(q, 8);
        const SpectralParam sp(q, cplx(tau(q) / 8.0, 0.0));
        for (int m : {1, 2, 3}) {
            const CylFunction F = random_cyl_function(20 + static_cast<std::uint64_t>(m),
                                                      t, m, Dist::disc);
            for (int n : {m + 1, 4, 8}) {
                const CylFunction tb = t_n_bruteforce(F, sp, n);
                const CylFunction tc = t_n_closedform(F, sp, n);
                REQUIRE(tb.level == n);
                REQUIRE(tc.level == n);
                CHECK(rel_gap(tc.values, tb.values) < 1e-10);
            }
        }
    }
}

TEST_CASE("indicator data against the closed form") {
    TreeParams t(2, 7);
    std::vector<cplx> v(3, cplx(0.0));
    v[0] = 1.0;
    const CylFunction chi(t, 1, v);
    const SpectralParam sp(2, cplx(tau(2) / 8.0, 0.0));
    const CylFunction tb = t_n_bruteforce(chi, sp, 6);
    const CylFunction tc = t_n_closedform(chi, sp, 6);
    CHECK(rel_gap(tc.values, tb.values) < 1e-10);
}

TEST_CASE("error identity and parseval route") {
    TreeParams t(2, 12);
    const SpectralParam sp(2, cplx(tau(2) / 8.0, 0.0));
    const CylFunction F = random_cyl_function(31, t, 2, Dist::disc);
    for (int n : {3, 5, 9, 12}) {
        const InversionErrorDetail d = inversion_error_detail(F, sp, n, 2.0);
        CHECK(d.identity_residual < 1e-10);
        const double pv = inversion_error_parseval(F, sp, n);
        CHECK(d.error == Approx(pv).epsilon(1e-10));
        CHECK(inversion_error(F, sp, n, 2.0) == d.error);
    }
    SUBCASE("error decays along n") {
        const double e4 = inversion_error(F, sp, 4, 2.0);
        const double e8 = inversion_error(F, sp, 8, 2.0);
        const double e12 = inversion_error(F, sp, 12, 2.0);
        CHECK(e8 < e4);
        CHECK(e12 < e8);
    }
}

TEST_CASE("domain validation") {
    TreeParams t(2, 6);
    const CylFunction F = random_cyl_function(7, t, 2, Dist::disc);
    const SpectralParam generic(2, cplx(tau(2) / 8.0, 0.0));
    const SpectralParam complex_z(2, cplx(0.3, -0.2));

    CHECK_THROWS_AS(coefficients(0, generic, 2), std::domain_error);
    CHECK_THROWS_AS(coefficients(3, complex_z, 2), std::domain_error);
    CHECK_THROWS_AS(coefficients(3, SpectralParam(2, cplx(0.0)), 2), pole_error);
    CHECK_THROWS_AS(t_n_bruteforce(F, complex_z, 3), std::domain_error);
    CHECK_THROWS_AS(inversion_error(F, generic, 2, 2.0), std::domain_error); // n <= level
    CHECK_THROWS_AS(inversion_error(F, generic, 4, 1.0), std::domain_error);
    CHECK_THROWS_AS(inversion_error(F, generic, 4, INFINITY), std::domain_error);
}

TEST_CASE("normalized average tends to the identity coefficientwise") {
    const SpectralParam sp(2, cplx(tau(2) / 6.0, 0.0));
    const double nf = 2.0 / (2.0 * 3.0 * std::norm(cfun(sp)));
    double prev = 1e300;
    for (int n : {4, 16, 64}) {
        const InversionCoefficients co = coefficients(n, sp, 2);
        double worst = 0.0;
        for (const cplx& kj : co.K)
            worst = std::max(worst, std::abs(nf * kj - 1.0));
        CHECK(worst < prev);
        CHECK(worst <= co.b / (2.0 * n) + 1e-14);
        prev = worst;
    }
}

TEST_CASE("dual ratio") {
    TreeParams t(2, 10);
    const CylFunction F = random_cyl_function(3, t, 2, Dist::disc);
    for (double frac : {1.0 / 8.0, 1.0 / 6.0, 1.0 / 5.0}) {
        const SpectralParam sp(2, cplx(tau(2) * frac, 0.0));
        const double ratio = dual_lower_bound(F, sp, 2.0);
        CHECK(ratio > 0.0);
        CHECK(ratio < 2.0);
    }
}
