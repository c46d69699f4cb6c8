#include <cctype>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "treeharm/report.hpp"
#include "treeharm/suites.hpp"

namespace {

using treeharm::config_error;
using treeharm::cplx;
using treeharm::ExperimentConfig;
using treeharm::ResultRow;

double parse_number(const std::string& s, const char* flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(std::string(flag) + ": cannot parse '" + s + "'");
    }
}

// Accepts "0.9", "0.5i", "-i", "0.3-0.5i"; exponent signs do not split.
cplx parse_z(const std::string& arg) {
    std::string s;
    for (char c : arg)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw config_error("--z: empty value");
    if (s.back() != 'i' && s.back() != 'I') return cplx(parse_number(s, "--z"), 0.0);
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
            split = k;
    double re = 0.0;
    std::string im = s;
    if (split != std::string::npos) {
        re = parse_number(s.substr(0, split), "--z");
        im = s.substr(split);
    }
    if (im.empty() || im == "+") return cplx(re, 1.0);
    if (im == "-") return cplx(re, -1.0);
    return cplx(re, parse_number(im, "--z"));
}

double parse_r(const std::string& arg) {
    if (arg == "inf" || arg == "Inf" || arg == "INF")
        return std::numeric_limits<double>::infinity();
    return parse_number(arg, "--r");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis experiments on the homogeneous tree"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::vector<std::string> z_args;
    std::vector<std::string> r_args;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "branching number; the tree has degree q+1")
            ->capture_default_str();
        sub->add_option("--depth", cfg.depth, "truncation radius of the ball")
            ->capture_default_str();
        sub->add_option("--level", cfg.level, "resolution level of the boundary data")
            ->capture_default_str();
        sub->add_option("--z", z_args,
                        "spectral parameter, e.g. 0.9 or 0.3-0.5i (repeatable)");
        sub->add_option("--p", cfg.p_grid, "Lebesgue indices in [1,2] (repeatable)");
        sub->add_option("--r", r_args,
                        "boundary norm exponents, finite or inf (repeatable)");
        sub->add_option("--trials", cfg.trials, "random draws per grid point")
            ->capture_default_str();
        sub->add_option("--seed", cfg.seed, "base seed for all draws")
            ->capture_default_str();
        sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->capture_default_str();
    };

    CLI::App* sc_p = app.add_subcommand(
        "theorem-p", "boundary-to-tree norm comparison on the z = alpha + i delta_p' family");
    CLI::App* sc_star = app.add_subcommand(
        "theorem-star", "q^(n/2)-normalized norm bracket and pointwise maximal bound");
    CLI::App* sc_inv = app.add_subcommand(
        "inversion", "averaged inversion operator: error tables, oracles, coefficients");
    CLI::App* sc_rad = app.add_subcommand(
        "radial", "normalized radial convergence tables on a sector indicator");
    CLI::App* sc_tab = app.add_subcommand(
        "tables", "evaluation tables for gamma, c and the spherical function");
    CLI::App* sc_self = app.add_subcommand(
        "selftest", "cross-check battery at fixed small scale (q in {2,3})");
    for (CLI::App* sub : {sc_p, sc_star, sc_inv, sc_rad, sc_tab, sc_self})
        add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        for (const std::string& s : z_args) cfg.z_grid.push_back(parse_z(s));
        if (!r_args.empty()) {
            cfg.r_grid.clear();
            for (const std::string& s : r_args) cfg.r_grid.push_back(parse_r(s));
        }

        std::vector<ResultRow> rows;
        std::string name;
        if (app.got_subcommand(sc_p)) {
            name = "theorem-p";
            rows = treeharm::suite_theorem_p(cfg);
        } else if (app.got_subcommand(sc_star)) {
            name = "theorem-star";
            rows = treeharm::suite_theorem_star(cfg);
        } else if (app.got_subcommand(sc_inv)) {
            name = "inversion";
            rows = treeharm::suite_inversion(cfg);
        } else if (app.got_subcommand(sc_rad)) {
            name = "radial";
            rows = treeharm::suite_radial(cfg);
        } else if (app.got_subcommand(sc_tab)) {
            name = "tables";
            rows = treeharm::table_special_functions(cfg);
        } else {
            name = "selftest";
            rows = treeharm::suite_selftest(cfg);
        }

        if (cfg.format != "csv" && cfg.format != "json")
            throw config_error("config: format must be csv or json");
        if (cfg.out_path.empty())
            std::cout << (cfg.format == "json" ? treeharm::to_json(rows)
                                               : treeharm::to_csv(rows));
        else
            treeharm::write_rows(rows, cfg.out_path, cfg.format);

        std::size_t asserted = 0;
        std::size_t failed = 0;
        for (const ResultRow& r : rows) {
            if (!r.pass) continue;
            ++asserted;
            if (!*r.pass) ++failed;
        }
        std::fprintf(stderr, "%s: %zu rows, %zu asserted, %zu failed\n", name.c_str(),
                     rows.size(), asserted, failed);
        return failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
