#include "doctest.h"

#include <cmath>

#include "treeharm/report.hpp"
#include "treeharm/rng.hpp"
#include "treeharm/suites.hpp"

using namespace treeharm;
using doctest::Approx;

TEST_CASE("generator golden values") {
    // frozen at first release; a change here breaks every recorded experiment
    CounterRng rng(42, 0);
    CHECK(rng.next_u64() == 3559393546817448020ull);
    CHECK(rng.next_u64() == 6457831781006907122ull);

    TreeParams t(2, 4);
    const CylFunction F = random_cyl_function(42, t, 2, Dist::disc);
    const std::vector<cplx> expected = {
        cplx(-0.25837247322518864, 0.3552446704582875),
        cplx(-0.35697760098271042, 0.041522376157247742),
        cplx(0.43011673813026552, -0.26004088387101254),
        cplx(0.10703713897486901, -0.38353468162481641),
        cplx(-0.31184892178279089, -0.78535492098846049),
        cplx(0.12634389863023493, 0.031857316654017101),
    };
    REQUIRE(F.values.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(F.values[i].real() == expected[i].real());
        CHECK(F.values[i].imag() == expected[i].imag());
    }
}

TEST_CASE("generator contracts") {
    TreeParams t(3, 5);
    const CylFunction a = random_cyl_function(9, t, 3, Dist::disc);
    const CylFunction b = random_cyl_function(9, t, 3, Dist::disc);
    CHECK(a.values == b.values);
    const CylFunction c = random_cyl_function(10, t, 3, Dist::disc);
    CHECK(a.values != c.values);

    for (const cplx& v : a.values) CHECK(std::abs(v) <= 1.0);

    const CylFunction ind = random_cyl_function(4, t, 3, Dist::indicator);
    for (const cplx& v : ind.values) {
        CHECK((v == cplx(0.0) || v == cplx(1.0)));
        CHECK(v.imag() == 0.0);
    }

    const BallFunction u = random_ball_function(4, t, Dist::unit_interval);
    for (const cplx& v : u.values) {
        CHECK(v.real() >= 0.0);
        CHECK(v.real() < 1.0);
    }

    // distinct distributions and domains draw from distinct streams
    const CylFunction r1 = random_cyl_function(4, t, 3, Dist::real_uniform);
    CHECK(r1.values != ind.values);
}

TEST_CASE("csv serialization is exact and ordered") {
    ResultRow full;
    full.suite = "demo";
    full.q = 2;
    full.z_re = 0.5;
    full.z_im = -0.25;
    full.p = 1.0;
    full.r = 2.0;
    full.n = 7;
    full.seed = 42;
    full.metric = "gap";
    full.value = 1.0 / 3.0;
    full.bound = 0.0;
    full.tol = 1e-12;
    full.pass = true;

    ResultRow sparse;
    sparse.suite = "demo";
    sparse.q = 2;
    sparse.metric = "gap";
    sparse.value = 2.0;

    // sparse sorts first: absent keys precede present ones
    const std::string csv = to_csv({full, sparse});
    CHECK(csv ==
          "suite,q,z_re,z_im,p,r,n,seed,metric,value,bound,tol,pass\n"
          "demo,2,,,,,,,gap,2,,,\n"
          "demo,2,0.5,-0.25,1,2,7,42,gap,0.33333333333333331,0,"
          "9.9999999999999998e-13,1\n");

    // input order does not matter
    CHECK(to_csv({sparse, full}) == csv);

    ResultRow failed = sparse;
    failed.pass = false;
    CHECK(to_csv({failed}).back() == '\n');
    CHECK(to_csv({failed}).find(",0\n") != std::string::npos);
}

TEST_CASE("json serialization carries nulls") {
    ResultRow row;
    row.suite = "demo";
    row.q = 3;
    row.metric = "x";
    row.value = 1.5;
    row.pass = false;
    const std::string js = to_json({row});
    CHECK(js.find("\"value\": 1.5") != std::string::npos);
    CHECK(js.find("\"z_re\": null") != std::string::npos);
    CHECK(js.find("\"pass\": false") != std::string::npos);
    CHECK(js.back() == '\n');
}

TEST_CASE("pass bookkeeping") {
    ResultRow ok;
    ok.suite = "s";
    ok.metric = "m";
    ok.pass = true;
    ResultRow informational;
    informational.suite = "s";
    informational.metric = "m2";
    ResultRow bad = ok;
    bad.pass = false;
    CHECK(all_passed({ok, informational}));
    CHECK_FALSE(all_passed({ok, informational, bad}));
    CHECK(all_passed({}));
}

TEST_CASE("write_rows validation") {
    CHECK_THROWS_AS(write_rows({}, "/tmp/out.xml", "xml"), std::domain_error);
    CHECK_THROWS_AS(write_rows({}, "/nonexistent_dir_7q/x.csv", "csv"),
                    std::runtime_error);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg;
    CHECK_NOTHROW(validate(cfg));
    ExperimentConfig bad_q = cfg;
    bad_q.q = 1;
    CHECK_THROWS_AS(validate(bad_q), config_error);
    ExperimentConfig bad_level = cfg;
    bad_level.level = 13;
    CHECK_THROWS_AS(validate(bad_level), config_error);
    bad_level.level = 0;
    CHECK_THROWS_AS(validate(bad_level), config_error);
    ExperimentConfig bad_trials = cfg;
    bad_trials.trials = 0;
    CHECK_THROWS_AS(validate(bad_trials), config_error);
    ExperimentConfig bad_grid = cfg;
    bad_grid.r_grid.clear();
    CHECK_THROWS_AS(validate(bad_grid), config_error);
    ExperimentConfig bad_fmt = cfg;
    bad_fmt.format = "yaml";
    CHECK_THROWS_AS(validate(bad_fmt), config_error);
}

TEST_CASE("default spectral grid avoids the poles") {
    for (int q : {2, 3}) {
        const std::vector<cplx> zs = default_z_grid(q);
        REQUIRE(zs.size() == 4);
        CHECK(zs[0].real() == Approx(tau(q) / 8.0).epsilon(1e-15));
        CHECK(zs[3].real() == Approx(3.0 * tau(q) / 8.0).epsilon(1e-15));
        for (cplx z : zs) CHECK(SpectralParam(q, z).branch == Branch::generic);
    }
}

TEST_CASE("suite rejections") {
    ExperimentConfig cfg;
    cfg.depth = 6;
    cfg.z_grid = {cplx(0.1, 0.4)};
    CHECK_THROWS_AS(suite_theorem_star(cfg), config_error);
    CHECK_THROWS_AS(suite_inversion(cfg), config_error);

    ExperimentConfig pole = cfg;
    pole.z_grid = {cplx(0.0)};
    CHECK_THROWS_AS(suite_theorem_star(pole), config_error);

    ExperimentConfig bad_r = cfg;
    bad_r.z_grid.clear();
    bad_r.r_grid = {1.0};
    CHECK_THROWS_AS(suite_theorem_star(bad_r), config_error);
    CHECK_THROWS_AS(suite_inversion(bad_r), config_error);

    ExperimentConfig bad_p = cfg;
    bad_p.z_grid.clear();
    bad_p.p_grid = {2.5};
    CHECK_THROWS_AS(suite_theorem_p(bad_p), config_error);
    CHECK_THROWS_AS(suite_radial(bad_p), config_error);

    // p = 2 requires the spectral offset to sit on the half-period lattice
    ExperimentConfig off_lattice = cfg;
    off_lattice.z_grid = {cplx(tau(2) / 8.0)};
    off_lattice.p_grid = {2.0};
    CHECK_THROWS_AS(suite_theorem_p(off_lattice), config_error);
}

TEST_CASE("suites emit asserted rows and deterministic tables") {
    ExperimentConfig cfg;
    cfg.depth = 6;
    cfg.trials = 2;
    const std::vector<ResultRow> rows = table_special_functions(cfg);
    CHECK(all_passed(rows));
    CHECK(to_csv(rows) == to_csv(table_special_functions(cfg)));

    bool has_assert = false;
    bool has_info = false;
    for (const ResultRow& r : rows) {
        if (r.pass) {
            has_assert = true;
            CHECK(r.bound.has_value());
            CHECK(r.tol.has_value());
        } else {
            has_info = true;
        }
    }
    CHECK(has_assert);
    CHECK(has_info);
}
