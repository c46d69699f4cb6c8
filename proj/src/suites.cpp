#include "treeharm/suites.hpp"

#include <algorithm>
#include <cmath>

#include "treeharm/inversion.hpp"
#include "treeharm/rational.hpp"
#include "treeharm/transform.hpp"
#include "treeharm/treeops.hpp"

namespace treeharm {

namespace {

ResultRow make_row(const char* suite, int q, std::string metric, double value) {
    ResultRow r;
    r.suite = suite;
    r.q = q;
    r.metric = std::move(metric);
    r.value = value;
    return r;
}

void set_z(ResultRow& r, cplx z) {
    r.z_re = z.real();
    r.z_im = z.imag();
}

void assert_le(ResultRow& r, double bound, double tol) {
    r.bound = bound;
    r.tol = tol;
    r.pass = r.value <= bound + tol;
}

void assert_ge(ResultRow& r, double bound, double tol) {
    r.bound = bound;
    r.tol = tol;
    r.pass = r.value >= bound - tol;
}

void assert_lt(ResultRow& r, double bound) {
    r.bound = bound;
    r.tol = 0.0;
    r.pass = r.value < bound;
}

double max_abs(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const cplx& x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_gap(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

bool near_half_tau_lattice(int q, double alpha) {
    const double half = tau(q) / 2.0;
    return std::abs(alpha - half * std::round(alpha / half)) <= k_branch_tol;
}

void require_real(cplx z, const char* who) {
    if (std::abs(z.imag()) > k_branch_tol)
        throw config_error(std::string(who) + ": z must be real");
}

SpectralParam real_generic_param(int q, cplx z, const char* who) {
    require_real(z, who);
    SpectralParam sp(q, cplx(z.real(), 0.0));
    if (sp.branch != Branch::generic)
        throw config_error(std::string(who) + ": z too close to (tau/2)Z");
    return sp;
}

CylFunction ones(const TreeParams& t, int level) {
    return CylFunction(t, level,
                       std::vector<cplx>(static_cast<std::size_t>(sphere_size(t, level)),
                                         cplx(1.0)));
}

CylFunction sector_indicator(const TreeParams& t, int level) {
    std::vector<cplx> v(static_cast<std::size_t>(sphere_size(t, level)), cplx(0.0));
    v[0] = 1.0;
    return CylFunction(t, level, std::move(v));
}

// Worst over the ball of |P_z F(x)| minus the maximal-function majorant
// q^(-|x|/2) |c(z)| (|E_0 F| + E*F + E*(T_a F)), the majorant minimized over
// the boundary rays through x.
double chain_margin(const CylFunction& F, const SpectralParam& sp) {
    const TreeParams& t = F.params;
    const int m = F.level;
    const double absc = std::abs(cfun(sp));
    const double abs_e0 = std::abs(cond_expect(F, 0).values[0]);
    const std::vector<double> mm_f = martingale_maximal(F);
    std::vector<cplx> a(static_cast<std::size_t>(m));
    for (int j = 1; j <= m; ++j)
        a[static_cast<std::size_t>(j - 1)] =
            qpow(t.q, cplx(0.0, 2.0) * sp.z * static_cast<double>(j));
    const std::vector<double> mm_t = martingale_maximal(multiplier(F, a));

    std::vector<std::vector<double>> mins(static_cast<std::size_t>(m) + 1);
    mins[static_cast<std::size_t>(m)].resize(mm_f.size());
    for (std::size_t i = 0; i < mm_f.size(); ++i)
        mins[static_cast<std::size_t>(m)][i] = abs_e0 + mm_f[i] + mm_t[i];
    for (int d = m; d >= 1; --d) {
        const std::size_t fan = static_cast<std::size_t>(d == 1 ? t.q + 1 : t.q);
        const auto& fine = mins[static_cast<std::size_t>(d)];
        auto& coarse = mins[static_cast<std::size_t>(d - 1)];
        coarse.resize(fine.size() / fan);
        for (std::size_t b = 0; b < coarse.size(); ++b) {
            double mn = fine[b * fan];
            for (std::size_t c = 1; c < fan; ++c) mn = std::min(mn, fine[b * fan + c]);
            coarse[b] = mn;
        }
    }

    double worst = -1e300;
    for (int n = 0; n <= t.depth; ++n) {
        const std::vector<cplx> u = poisson_transform_sphere(F, sp, n);
        const double w = std::pow(static_cast<double>(t.q), -0.5 * n) * absc;
        const std::int64_t count = sphere_size(t, n);
        for (std::int64_t i = 0; i < count; ++i) {
            const double rhs =
                n <= m ? mins[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]
                       : mins[static_cast<std::size_t>(m)][static_cast<std::size_t>(
                             ancestor_index(t, n, i, m))];
            worst = std::max(worst, std::abs(u[static_cast<std::size_t>(i)]) - w * rhs);
        }
    }
    return worst;
}

} // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.q < 2) throw config_error("config: q must be >= 2");
    if (cfg.depth < 1) throw config_error("config: depth must be >= 1");
    if (cfg.level < 1 || cfg.level > cfg.depth)
        throw config_error("config: level outside [1, depth]");
    if (cfg.trials < 1) throw config_error("config: trials must be >= 1");
    if (cfg.p_grid.empty() || cfg.r_grid.empty())
        throw config_error("config: p and r grids must be non-empty");
    if (cfg.format != "csv" && cfg.format != "json")
        throw config_error("config: format must be csv or json");
}

std::vector<cplx> default_z_grid(int q) {
    const double tq = tau(q);
    return {cplx(tq / 8.0), cplx(tq / 6.0), cplx(tq / 5.0), cplx(3.0 * tq / 8.0)};
}

std::vector<ResultRow> suite_theorem_p(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<ResultRow> rows;
    const TreeParams t(cfg.q, cfg.depth);

    std::vector<double> alphas;
    if (cfg.z_grid.empty())
        alphas.push_back(0.0);
    else
        for (cplx z : cfg.z_grid) {
            require_real(z, "theorem-p");
            alphas.push_back(z.real());
        }

    for (double p : cfg.p_grid) {
        if (!(p >= 1.0 && p <= 2.0))
            throw config_error("theorem-p: p must lie in [1, 2]");
        const LebesgueIndex li = delta_index(p);
        for (double alpha : alphas) {
            if (p == 2.0 && !near_half_tau_lattice(cfg.q, alpha))
                throw config_error("theorem-p: p = 2 needs alpha in (tau/2)Z");
            const cplx z(alpha, -li.delta); // alpha + i delta_{p'}
            const SpectralParam sp(cfg.q, z);

            std::vector<double> min_ratio(cfg.r_grid.size(), 1e300);
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
                const CylFunction F = random_cyl_function(seed, t, cfg.level, Dist::disc);
                const BallFunction u = poisson_transform(F, sp);

                ResultRow er = make_row("theorem_p", cfg.q, "eigen_residual",
                                        eigen_residual(u, sp));
                set_z(er, z);
                er.p = p;
                er.seed = seed;
                assert_le(er, 1e-10 * (1.0 + max_abs(u.values)), 0.0);
                rows.push_back(er);

                for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
                    const double r = cfg.r_grid[ri];
                    const HardyNorm hn = hardy_norm_p(u, li, r);
                    const double ratio = hn.value / lr_norm(F, r);
                    ResultRow rr = make_row("theorem_p", cfg.q, "hardy_ratio", ratio);
                    set_z(rr, z);
                    rr.p = p;
                    rr.r = r;
                    rr.seed = seed;
                    assert_le(rr, 1.0, 1e-10);
                    rows.push_back(rr);

                    ResultRow ar = make_row("theorem_p", cfg.q, "hardy_argmax_level",
                                            static_cast<double>(hn.argmax_level));
                    set_z(ar, z);
                    ar.p = p;
                    ar.r = r;
                    ar.seed = seed;
                    rows.push_back(ar);

                    min_ratio[ri] = std::min(min_ratio[ri], ratio);
                }
            }
            for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
                ResultRow mr = make_row("theorem_p", cfg.q, "min_ratio", min_ratio[ri]);
                set_z(mr, z);
                mr.p = p;
                mr.r = cfg.r_grid[ri];
                assert_ge(mr, 0.05, 0.0);
                rows.push_back(mr);
            }

            const double r_rad =
                std::find(cfg.r_grid.begin(), cfg.r_grid.end(), 2.0) != cfg.r_grid.end()
                    ? 2.0
                    : cfg.r_grid.front();
            const CylFunction F0 = random_cyl_function(cfg.seed, t, cfg.level, Dist::disc);
            for (int n = cfg.level; n <= cfg.depth; ++n) {
                ResultRow rr = make_row("theorem_p", cfg.q, "radial_error", 0.0);
                set_z(rr, z);
                rr.p = p;
                rr.r = r_rad;
                rr.n = n;
                rr.seed = cfg.seed;
                try {
                    rr.value = radial_error(F0, sp, r_rad, n);
                } catch (const degenerate_error&) {
                    rr.metric = "radial_error_degenerate";
                    rr.value = 0.0;
                }
                rows.push_back(rr);
            }
        }
    }
    return rows;
}

std::vector<ResultRow> suite_theorem_star(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<ResultRow> rows;
    const TreeParams t(cfg.q, cfg.depth);
    const std::vector<cplx> zs = cfg.z_grid.empty() ? default_z_grid(cfg.q) : cfg.z_grid;
    for (double r : cfg.r_grid)
        if (!(r > 1.0) || std::isinf(r))
            throw config_error("theorem-star: r must lie in (1, inf)");

    std::vector<double> lo(cfg.r_grid.size(), 1e300);
    std::vector<double> hi(cfg.r_grid.size(), 0.0);

    for (cplx zin : zs) {
        const SpectralParam sp = real_generic_param(cfg.q, zin, "theorem-star");
        const double absc = std::abs(cfun(sp));
        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
            const CylFunction F = random_cyl_function(seed, t, cfg.level, Dist::disc);
            const BallFunction u = poisson_transform(F, sp);

            for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
                const double r = cfg.r_grid[ri];
                const HardyNorm hn = hardy_norm_star(u, r);
                const double ratio = hn.value / (absc * lr_norm(F, r));
                ResultRow rr = make_row("theorem_star", cfg.q, "star_ratio", ratio);
                set_z(rr, sp.z);
                rr.r = r;
                rr.seed = seed;
                rows.push_back(rr);
                ResultRow ar = make_row("theorem_star", cfg.q, "star_argmax_level",
                                        static_cast<double>(hn.argmax_level));
                set_z(ar, sp.z);
                ar.r = r;
                ar.seed = seed;
                rows.push_back(ar);
                lo[ri] = std::min(lo[ri], ratio);
                hi[ri] = std::max(hi[ri], ratio);
            }

            ResultRow cm = make_row("theorem_star", cfg.q, "pointwise_chain_margin",
                                    chain_margin(F, sp));
            set_z(cm, sp.z);
            cm.seed = seed;
            assert_le(cm, 0.0, 1e-12);
            rows.push_back(cm);
        }
    }

    for (std::size_t ri = 0; ri < cfg.r_grid.size(); ++ri) {
        ResultRow lrow = make_row("theorem_star", cfg.q, "ratio_min", lo[ri]);
        lrow.r = cfg.r_grid[ri];
        rows.push_back(lrow);
        ResultRow hrow = make_row("theorem_star", cfg.q, "ratio_max", hi[ri]);
        hrow.r = cfg.r_grid[ri];
        rows.push_back(hrow);
        ResultRow srow =
            make_row("theorem_star", cfg.q, "bracket_spread", hi[ri] / lo[ri]);
        srow.r = cfg.r_grid[ri];
        assert_le(srow, 20.0, 0.0);
        rows.push_back(srow);
    }
    return rows;
}

std::vector<ResultRow> suite_inversion(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<ResultRow> rows;
    const TreeParams t(cfg.q, cfg.depth);
    const int m = cfg.level;
    if (m + 1 > cfg.depth) throw config_error("inversion: need depth >= level + 1");
    const std::vector<cplx> zs = cfg.z_grid.empty() ? default_z_grid(cfg.q) : cfg.z_grid;
    for (double r : cfg.r_grid)
        if (!(r > 1.0) || std::isinf(r))
            throw config_error("inversion: r must lie in (1, inf)");

    for (cplx zin : zs) {
        const SpectralParam sp = real_generic_param(cfg.q, zin, "inversion");

        for (int n : {1, 2, 4, 8}) {
            if (n > cfg.depth) continue;
            const InversionCoefficients co = coefficients(n, sp, m);
            double kgap = 0.0;
            double kimag = 0.0;
            double kmin = 1e300;
            for (int j = 0; j <= std::min(m, n); ++j) {
                const cplx kj = co.K[static_cast<std::size_t>(j)];
                kgap = std::max(kgap, std::abs(kj - k_literal(j, n, sp)));
                kimag = std::max(kimag, std::abs(kj.imag()));
                kmin = std::min(kmin, kj.real());
            }
            double abound = -1e300;
            for (const cplx& aj : co.a)
                abound = std::max(abound, std::abs(aj) * 2.0 * n - co.b);

            ResultRow kr = make_row("inversion", cfg.q, "k_identity_gap", kgap);
            set_z(kr, sp.z);
            kr.n = n;
            assert_le(kr, 0.0, 1e-12);
            rows.push_back(kr);
            ResultRow ki = make_row("inversion", cfg.q, "k_imag_max", kimag);
            set_z(ki, sp.z);
            ki.n = n;
            assert_le(ki, 0.0, 0.0);
            rows.push_back(ki);
            ResultRow km = make_row("inversion", cfg.q, "k_min", kmin);
            set_z(km, sp.z);
            km.n = n;
            assert_ge(km, 0.0, 0.0);
            rows.push_back(km);
            ResultRow ab = make_row("inversion", cfg.q, "a_bound_margin", abound);
            set_z(ab, sp.z);
            ab.n = n;
            assert_le(ab, 0.0, 0.0);
            rows.push_back(ab);
        }

        // constant boundary data: the only surviving term is the level-0 one
        const CylFunction f1 = ones(t, m);
        std::vector<double> const_err(static_cast<std::size_t>(cfg.depth) + 1, 0.0);
        for (int n = m + 1; n <= cfg.depth; ++n) {
            const double err = inversion_error(f1, sp, n, 2.0);
            const_err[static_cast<std::size_t>(n)] = err;
            ResultRow rr = make_row("inversion", cfg.q, "inversion_error_const", err);
            set_z(rr, sp.z);
            rr.n = n;
            rows.push_back(rr);
        }
        if (m + 1 <= 6 && 12 <= cfg.depth && const_err[6] > 0.0) {
            const double ratio = const_err[12] / const_err[6];
            ResultRow rl = make_row("inversion", cfg.q, "const_rate_lower", ratio);
            set_z(rl, sp.z);
            assert_ge(rl, 0.3, 0.0);
            rows.push_back(rl);
            ResultRow ru = make_row("inversion", cfg.q, "const_rate_upper", ratio);
            set_z(ru, sp.z);
            assert_le(ru, 0.7, 0.0);
            rows.push_back(ru);
        }

        for (int trial = 0; trial < cfg.trials; ++trial) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
            const CylFunction F = random_cyl_function(seed, t, m, Dist::disc);

            for (int n = m + 1; n <= std::min(8, cfg.depth); ++n) {
                const CylFunction tb = t_n_bruteforce(F, sp, n);
                const CylFunction tc = t_n_closedform(F, sp, n);
                const double gap =
                    max_gap(tb.values, tc.values) / (1.0 + max_abs(tb.values));
                ResultRow orow = make_row("inversion", cfg.q, "oracle_gap", gap);
                set_z(orow, sp.z);
                orow.n = n;
                orow.seed = seed;
                assert_le(orow, 0.0, 1e-10);
                rows.push_back(orow);
            }

            for (double r : cfg.r_grid) {
                std::vector<double> err(static_cast<std::size_t>(cfg.depth) + 1, 0.0);
                for (int n = m + 1; n <= cfg.depth; ++n) {
                    const InversionErrorDetail d = inversion_error_detail(F, sp, n, r);
                    err[static_cast<std::size_t>(n)] = d.error;
                    ResultRow rr = make_row("inversion", cfg.q, "inversion_error", d.error);
                    set_z(rr, sp.z);
                    rr.r = r;
                    rr.n = n;
                    rr.seed = seed;
                    rows.push_back(rr);
                    ResultRow ir =
                        make_row("inversion", cfg.q, "identity_residual", d.identity_residual);
                    set_z(ir, sp.z);
                    ir.r = r;
                    ir.n = n;
                    ir.seed = seed;
                    assert_le(ir, 0.0, 1e-10);
                    rows.push_back(ir);
                    if (r == 2.0) {
                        const double pv = inversion_error_parseval(F, sp, n);
                        const double gap = std::abs(d.error - pv) / (pv > 0.0 ? pv : 1.0);
                        ResultRow pr = make_row("inversion", cfg.q, "parseval_gap", gap);
                        set_z(pr, sp.z);
                        pr.r = r;
                        pr.n = n;
                        pr.seed = seed;
                        assert_le(pr, 0.05, 0.0);
                        rows.push_back(pr);
                    }
                }
                for (int n = m + 1; 2 * n <= cfg.depth; ++n) {
                    if (err[static_cast<std::size_t>(n)] <= 0.0) continue;
                    ResultRow rr = make_row(
                        "inversion", cfg.q, "rate_ratio",
                        err[static_cast<std::size_t>(2 * n)] / err[static_cast<std::size_t>(n)]);
                    set_z(rr, sp.z);
                    rr.r = r;
                    rr.n = n;
                    rr.seed = seed;
                    rows.push_back(rr);
                }
            }
        }

        for (double r : cfg.r_grid) {
            double dmin = 1e300;
            double dmax = 0.0;
            for (int trial = 0; trial < cfg.trials; ++trial) {
                const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(trial);
                const CylFunction F = random_cyl_function(seed, t, m, Dist::disc);
                const double ratio = dual_lower_bound(F, sp, r);
                dmin = std::min(dmin, ratio);
                dmax = std::max(dmax, ratio);
                ResultRow dr = make_row("inversion", cfg.q, "dual_ratio", ratio);
                set_z(dr, sp.z);
                dr.r = r;
                dr.seed = seed;
                assert_le(dr, 2.0, 0.0);
                rows.push_back(dr);
            }
            ResultRow lo = make_row("inversion", cfg.q, "dual_ratio_min", dmin);
            set_z(lo, sp.z);
            lo.r = r;
            rows.push_back(lo);
            ResultRow hi = make_row("inversion", cfg.q, "dual_ratio_max", dmax);
            set_z(hi, sp.z);
            hi.r = r;
            rows.push_back(hi);
        }
    }
    return rows;
}

std::vector<ResultRow> suite_radial(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<ResultRow> rows;
    const TreeParams t(cfg.q, cfg.depth);
    const CylFunction F = sector_indicator(t, cfg.level);

    for (double p : cfg.p_grid) {
        if (!(p >= 1.0 && p <= 2.0)) throw config_error("radial: p must lie in [1, 2]");
        const LebesgueIndex li = delta_index(p);
        const cplx z(0.0, -li.delta);
        const SpectralParam sp(cfg.q, z);
        for (double r : cfg.r_grid) {
            std::vector<double> err(static_cast<std::size_t>(cfg.depth) + 1, 0.0);
            for (int n = cfg.level; n <= cfg.depth; ++n) {
                err[static_cast<std::size_t>(n)] = radial_error(F, sp, r, n);
                ResultRow rr = make_row("radial", cfg.q, "radial_error",
                                        err[static_cast<std::size_t>(n)]);
                set_z(rr, z);
                rr.p = p;
                rr.r = r;
                rr.n = n;
                rows.push_back(rr);
            }
            if (p == 1.0 && r == 2.0 && cfg.depth >= 12) {
                double worst = 0.0;
                for (int n = 4; n < 12; ++n)
                    worst = std::max(worst, err[static_cast<std::size_t>(n) + 1] /
                                                err[static_cast<std::size_t>(n)]);
                ResultRow mono = make_row("radial", cfg.q, "monotone_max_step", worst);
                set_z(mono, z);
                mono.p = p;
                mono.r = r;
                assert_lt(mono, 1.0);
                rows.push_back(mono);
                ResultRow fin = make_row("radial", cfg.q, "final_error", err[12]);
                set_z(fin, z);
                fin.p = p;
                fin.r = r;
                fin.n = 12;
                assert_le(fin, 0.05, 0.0);
                rows.push_back(fin);
            }
        }
    }
    return rows;
}

std::vector<ResultRow> table_special_functions(const ExperimentConfig& cfg) {
    validate(cfg);
    std::vector<ResultRow> rows;
    std::vector<cplx> zs = cfg.z_grid;
    if (zs.empty()) {
        zs = default_z_grid(cfg.q);
        zs.push_back(cplx(0.0));
        zs.push_back(cplx(tau(cfg.q) / 2.0));
        zs.push_back(cplx(0.0, -0.5));
    }
    const int nmax = std::min(cfg.depth, 12);

    for (cplx z : zs) {
        const SpectralParam sp(cfg.q, z);
        ResultRow gr = make_row("tables", cfg.q, "gamma_re", gamma_eig(sp).real());
        set_z(gr, z);
        rows.push_back(gr);
        ResultRow gi = make_row("tables", cfg.q, "gamma_im", gamma_eig(sp).imag());
        set_z(gi, z);
        rows.push_back(gi);

        if (sp.branch == Branch::generic) {
            const cplx c = cfun(sp);
            ResultRow cr = make_row("tables", cfg.q, "cfun_re", c.real());
            set_z(cr, z);
            rows.push_back(cr);
            ResultRow ci = make_row("tables", cfg.q, "cfun_im", c.imag());
            set_z(ci, z);
            rows.push_back(ci);
            if (std::abs(z.imag()) <= k_branch_tol) {
                const cplx cneg = cfun(SpectralParam(cfg.q, -z));
                ResultRow sum = make_row("tables", cfg.q, "c_sum_gap",
                                         std::abs(c + cneg - 1.0));
                set_z(sum, z);
                assert_le(sum, 0.0, 1e-12);
                rows.push_back(sum);
                ResultRow conj = make_row("tables", cfg.q, "c_conj_gap",
                                          std::abs(std::conj(c) - cneg));
                set_z(conj, z);
                assert_le(conj, 0.0, 1e-12);
                rows.push_back(conj);
            }
        } else {
            ResultRow pole = make_row("tables", cfg.q, "cfun_pole", 0.0);
            set_z(pole, z);
            rows.push_back(pole);
        }

        for (int n = 0; n <= nmax; ++n) {
            const cplx pe = phi_explicit(sp, n);
            ResultRow pr = make_row("tables", cfg.q, "phi_re", pe.real());
            set_z(pr, z);
            pr.n = n;
            rows.push_back(pr);
            ResultRow pi = make_row("tables", cfg.q, "phi_im", pe.imag());
            set_z(pi, z);
            pi.n = n;
            rows.push_back(pi);
            ResultRow xc = make_row("tables", cfg.q, "phi_crosscheck",
                                    std::abs(pe - phi_integral(sp, n)) / (1.0 + std::abs(pe)));
            set_z(xc, z);
            xc.n = n;
            assert_le(xc, 0.0, 1e-12);
            rows.push_back(xc);
        }
    }
    return rows;
}

namespace {

void selftest_spectral(std::vector<ResultRow>& rows, int q, std::uint64_t seed) {
    std::vector<cplx> zs = default_z_grid(q);
    zs.push_back(cplx(0.0));
    zs.push_back(cplx(tau(q) / 2.0));
    zs.push_back(cplx(0.0, -0.5));
    zs.push_back(cplx(0.0, -0.25));
    for (cplx z : zs) {
        const SpectralParam sp(q, z);
        double worst = 0.0;
        for (int n = 0; n <= 10; ++n) {
            const cplx pe = phi_explicit(sp, n);
            worst = std::max(worst,
                             std::abs(pe - phi_integral(sp, n)) / (1.0 + std::abs(pe)));
        }
        ResultRow rr = make_row("selftest", q, "phi_crosscheck_max", worst);
        set_z(rr, z);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    CounterRng rng(seed, 101);
    double sum_gap = 0.0;
    double conj_gap = 0.0;
    double even_gap = 0.0;
    double periodic_gap = 0.0;
    double pointwise_margin = -1e300;
    int drawn = 0;
    while (drawn < 50) {
        const double zr = rng.next_unit() * tau(q);
        const SpectralParam sp(q, cplx(zr, 0.0));
        if (sp.branch != Branch::generic) continue;
        ++drawn;
        const cplx c = cfun(sp);
        const cplx cneg = cfun(SpectralParam(q, cplx(-zr, 0.0)));
        sum_gap = std::max(sum_gap, std::abs(c + cneg - 1.0));
        conj_gap = std::max(conj_gap, std::abs(std::conj(c) - cneg));
        for (int n = 0; n <= 10; ++n) {
            const cplx pe = phi_explicit(sp, n);
            const double scale = 1.0 + std::abs(pe);
            even_gap = std::max(
                even_gap,
                std::abs(pe - phi_explicit(SpectralParam(q, cplx(-zr, 0.0)), n)) / scale);
            periodic_gap = std::max(
                periodic_gap,
                std::abs(pe - phi_explicit(SpectralParam(q, cplx(zr + tau(q), 0.0)), n)) /
                    scale);
            pointwise_margin =
                std::max(pointwise_margin,
                         std::abs(pe) - 2.0 * std::abs(c) *
                                            std::pow(static_cast<double>(q), -0.5 * n));
        }
    }
    ResultRow sg = make_row("selftest", q, "c_sum_gap_max", sum_gap);
    assert_le(sg, 0.0, 1e-12);
    rows.push_back(sg);
    ResultRow cg = make_row("selftest", q, "c_conj_gap_max", conj_gap);
    assert_le(cg, 0.0, 1e-12);
    rows.push_back(cg);
    ResultRow eg = make_row("selftest", q, "phi_even_gap_max", even_gap);
    assert_le(eg, 0.0, 1e-10);
    rows.push_back(eg);
    ResultRow pg = make_row("selftest", q, "phi_periodic_gap_max", periodic_gap);
    assert_le(pg, 0.0, 1e-10);
    rows.push_back(pg);
    ResultRow pw = make_row("selftest", q, "phi_pointwise_margin", pointwise_margin);
    assert_le(pw, 0.0, 1e-12);
    rows.push_back(pw);

    // profile ratios |phi| q^(n/p') for the complex families, reported with
    // their empirical stabilization level
    for (double p : {1.0, 4.0 / 3.0}) {
        const LebesgueIndex li = delta_index(p);
        const SpectralParam sp(q, cplx(0.3, -li.delta));
        double rmin = 1e300;
        double rmax = 0.0;
        for (int n = 2; n <= 10; ++n) {
            const double v = std::abs(phi_explicit(sp, n)) *
                             std::pow(static_cast<double>(q), li.inv_conj * n);
            rmin = std::min(rmin, v);
            rmax = std::max(rmax, v);
        }
        ResultRow lo = make_row("selftest", q, "phi_profile_min", rmin);
        lo.p = p;
        assert_ge(lo, 0.0, -1e-12);
        rows.push_back(lo);
        ResultRow hi = make_row("selftest", q, "phi_profile_max", rmax);
        hi.p = p;
        rows.push_back(hi);
    }
    {
        const SpectralParam sp(q, cplx(tau(q) / 2.0, 0.0));
        double rmin = 1e300;
        double rmax = 0.0;
        for (int n = 0; n <= 10; ++n) {
            const double v = std::abs(phi_explicit(sp, n)) /
                             ((1.0 + n) * std::pow(static_cast<double>(q), -0.5 * n));
            rmin = std::min(rmin, v);
            rmax = std::max(rmax, v);
        }
        ResultRow lo = make_row("selftest", q, "phi_lattice_profile_min", rmin);
        assert_ge(lo, 0.0, -1e-12);
        rows.push_back(lo);
        ResultRow hi = make_row("selftest", q, "phi_lattice_profile_max", rmax);
        rows.push_back(hi);
    }

    ResultRow d1 = make_row("selftest", q, "delta_p1_gap",
                            std::abs(delta_index(1.0).delta - 0.5));
    assert_le(d1, 0.0, 0.0);
    rows.push_back(d1);
    ResultRow d2 = make_row("selftest", q, "delta_p43_gap",
                            std::abs(delta_index(4.0 / 3.0).delta - 0.25));
    assert_le(d2, 0.0, 1e-16);
    rows.push_back(d2);
}

void selftest_boundary(std::vector<ResultRow>& rows, int q, std::uint64_t seed) {
    const TreeParams t(q, 10);

    double measure_gap = 0.0;
    double rational_gap = 0.0;
    for (int m = 1; m <= 4; ++m) {
        double sum = 0.0;
        for (std::int64_t i = 0; i < sphere_size(t, m); ++i) sum += sector_measure(t, m);
        measure_gap = std::max(measure_gap, std::abs(sum - 1.0));
        rational_gap = std::max(
            rational_gap, std::abs(sector_measure(t, m) - to_double(rat_sector_measure(t, m))));
        const std::vector<double> mu =
            confluence_measures(t, Vertex(static_cast<std::size_t>(m), std::uint8_t{0}));
        const std::vector<Rat> rmu = rat_confluence_measures(t, m);
        double mass = 0.0;
        for (std::size_t j = 0; j < mu.size(); ++j) {
            mass += mu[j];
            rational_gap = std::max(rational_gap, std::abs(mu[j] - to_double(rmu[j])));
        }
        measure_gap = std::max(measure_gap, std::abs(mass - 1.0));
    }
    ResultRow mg = make_row("selftest", q, "measure_sum_gap", measure_gap);
    assert_le(mg, 0.0, 1e-12);
    rows.push_back(mg);
    ResultRow rg = make_row("selftest", q, "measure_rational_gap", rational_gap);
    assert_le(rg, 0.0, 1e-15);
    rows.push_back(rg);

    const CylFunction F = random_cyl_function(seed, t, 6, Dist::disc);
    {
        const CylFunction tower = cond_expect(cond_expect(F, 5), 2);
        const CylFunction direct = cond_expect(F, 2);
        ResultRow rr = make_row("selftest", q, "tower_gap",
                                max_gap(tower.values, direct.values));
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);
    }
    {
        // exact-rational block averages against the double route
        std::vector<Rat> rv;
        std::vector<cplx> dv;
        CounterRng rng(seed, 102);
        for (std::int64_t i = 0; i < sphere_size(t, 4); ++i) {
            const std::int64_t num = static_cast<std::int64_t>(rng.next_u64() % 33) - 16;
            rv.push_back(rat(num, 16));
            dv.push_back(cplx(static_cast<double>(num) / 16.0, 0.0));
        }
        const std::vector<Rat> rc = rat_cond_expect(t, 4, rv, 1);
        const CylFunction dc = cond_expect(CylFunction(t, 4, dv), 1);
        double gap = 0.0;
        for (std::size_t i = 0; i < rc.size(); ++i)
            gap = std::max(gap, std::abs(dc.values[i] - to_double(rc[i])));
        ResultRow rr = make_row("selftest", q, "cond_expect_rational_gap", gap);
        assert_le(rr, 0.0, 1e-15);
        rows.push_back(rr);
    }
    {
        const Martingale M = martingale_from_function(F, 10);
        double gap = 0.0;
        for (int n = 0; n <= 10; ++n)
            for (int k = 0; k < n; ++k)
                gap = std::max(
                    gap, max_gap(cond_expect(M.terms[static_cast<std::size_t>(n)], k).values,
                                 M.terms[static_cast<std::size_t>(k)].values));
        ResultRow rr = make_row("selftest", q, "martingale_compat_gap", gap);
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);
    }
    {
        double gram = 0.0;
        for (int i = 0; i <= 6; ++i) {
            const CylFunction di = difference(F, i);
            const CylFunction die = reexpress(di, 6);
            for (int j = i + 1; j <= 6; ++j) {
                const CylFunction dje = reexpress(difference(F, j), 6);
                cplx ip = 0.0;
                for (std::size_t k = 0; k < die.values.size(); ++k)
                    ip += die.values[k] * std::conj(dje.values[k]);
                gram = std::max(gram, std::abs(ip) / static_cast<double>(die.values.size()));
            }
        }
        ResultRow rr = make_row("selftest", q, "difference_orthogonality", gram);
        assert_le(rr, 0.0, 1e-15);
        rows.push_back(rr);
    }
    {
        std::vector<cplx> acc = reexpress(cond_expect(F, 0), 6).values;
        for (int j = 1; j <= 6; ++j) {
            const CylFunction dj = reexpress(difference(F, j), 6);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += dj.values[i];
        }
        ResultRow rr =
            make_row("selftest", q, "difference_reconstruction", max_gap(acc, F.values));
        assert_le(rr, 0.0, 1e-14);
        rows.push_back(rr);
    }
    {
        const CylFunction again = random_cyl_function(seed, t, 6, Dist::disc);
        ResultRow rr = make_row("selftest", q, "rng_determinism_gap",
                                max_gap(F.values, again.values));
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);
    }
    {
        double margin = -1e300;
        double prev = 0.0;
        bool first = true;
        for (double r : {1.0, 2.0, 4.0}) {
            const double v = lr_norm(F, r);
            if (!first) margin = std::max(margin, prev - v);
            prev = v;
            first = false;
        }
        margin = std::max(margin, prev - lr_norm(F, INFINITY));
        ResultRow rr = make_row("selftest", q, "norm_monotonicity_margin", margin);
        assert_le(rr, 0.0, 1e-14);
        rows.push_back(rr);
    }
}

void selftest_transform(std::vector<ResultRow>& rows, int q, std::uint64_t seed) {
    const TreeParams t(q, 10);
    const std::vector<cplx> zset = {cplx(0.0, -0.5), cplx(0.0), cplx(tau(q) / 8.0)};

    for (cplx z : zset) {
        const SpectralParam sp(q, z);
        const BallFunction u = poisson_transform(ones(t, 0), sp);
        double gap = 0.0;
        for (int n = 0; n <= t.depth; ++n) {
            const cplx pe = phi_explicit(sp, n);
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                gap = std::max(gap, std::abs(u.at(n, i) - pe) / (1.0 + std::abs(pe)));
        }
        ResultRow rr = make_row("selftest", q, "transform_of_one_gap", gap);
        set_z(rr, z);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    const CylFunction F = random_cyl_function(seed, t, 3, Dist::disc);
    const CylFunction G = random_cyl_function(seed + 1, t, 3, Dist::disc);
    for (cplx z : zset) {
        const SpectralParam sp(q, z);
        const BallFunction uf = poisson_transform(F, sp);
        ResultRow org = make_row("selftest", q, "transform_origin_gap",
                                 std::abs(uf.at(0, 0) - integral(F)));
        set_z(org, z);
        assert_le(org, 0.0, 1e-14);
        rows.push_back(org);

        const BallFunction ug = poisson_transform(G, sp);
        std::vector<cplx> combo(F.values.size());
        for (std::size_t i = 0; i < combo.size(); ++i)
            combo[i] = 2.0 * F.values[i] - cplx(0.0, 1.0) * G.values[i];
        const BallFunction uc = poisson_transform(CylFunction(t, 3, combo), sp);
        double lin = 0.0;
        for (std::size_t i = 0; i < uc.values.size(); ++i)
            lin = std::max(lin, std::abs(uc.values[i] - (2.0 * uf.values[i] -
                                                         cplx(0.0, 1.0) * ug.values[i])));
        ResultRow lr = make_row("selftest", q, "transform_linearity_gap", lin);
        set_z(lr, z);
        assert_le(lr, 0.0, 1e-12);
        rows.push_back(lr);

        ResultRow er = make_row("selftest", q, "eigen_residual", eigen_residual(uf, sp));
        set_z(er, z);
        assert_le(er, 1e-10 * (1.0 + max_abs(uf.values)), 0.0);
        rows.push_back(er);

        const Martingale M = martingale_from_function(F, 10);
        const BallFunction um = poisson_transform_martingale(M, sp);
        ResultRow mr = make_row("selftest", q, "martingale_transform_gap",
                                max_gap(um.values, uf.values));
        set_z(mr, z);
        assert_le(mr, 0.0, 1e-11);
        rows.push_back(mr);
    }

    for (double zr : {tau(q) / 8.0, tau(q) / 4.0}) {
        const SpectralParam sp(q, cplx(zr, 0.0));
        double gap = 0.0;
        for (int j = 0; j <= 3; ++j) {
            const CylFunction dj = difference(F, j);
            for (int l = 0; l <= 6; ++l) {
                const std::vector<cplx> closed = poisson_of_difference(F, j, sp, l);
                const std::vector<cplx> direct = poisson_transform_sphere(dj, sp, l);
                gap = std::max(gap, max_gap(closed, direct));
            }
        }
        ResultRow rr = make_row("selftest", q, "difference_transform_gap", gap);
        set_z(rr, cplx(zr, 0.0));
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    {
        const SpectralParam sp(q, cplx(tau(q) / 8.0, 0.0));
        CounterRng rng(seed, 103);
        double gap = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const int lx = static_cast<int>(rng.next_u64() % 4);
            const int ly = static_cast<int>(rng.next_u64() % 3);
            const Vertex x = vertex_at(
                t, lx, static_cast<std::int64_t>(rng.next_u64() %
                                                 static_cast<std::uint64_t>(sphere_size(t, lx))));
            const Vertex y = vertex_at(
                t, ly, static_cast<std::int64_t>(rng.next_u64() %
                                                 static_cast<std::uint64_t>(sphere_size(t, ly))));
            cplx children = 0.0;
            for (int c = 0; c < (ly == 0 ? q + 1 : q); ++c) {
                Vertex yc = y;
                yc.push_back(static_cast<std::uint8_t>(c));
                children += sector_kernel_integral(t, x, yc, sp.s());
            }
            gap = std::max(gap, std::abs(children - sector_kernel_integral(t, x, y, sp.s())));
        }
        ResultRow rr = make_row("selftest", q, "sector_additivity_gap", gap);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    {
        // sphere pairing against the transform: averaging the kernel against
        // the level-l re-expression reproduces P_z F at the paired vertex
        const SpectralParam sp(q, cplx(tau(q) / 8.0, 0.0));
        const CylFunction F2 = random_cyl_function(seed + 2, t, 2, Dist::disc);
        double gap = 0.0;
        for (int l = F2.level; l <= 6; ++l) {
            const CylFunction fl = reexpress(F2, l);
            const std::vector<cplx> u = poisson_transform_sphere(F2, sp, l);
            const std::int64_t count = sphere_size(t, l);
            const std::int64_t pick = count - 1;
            const Vertex xp = vertex_at(t, l, pick);
            cplx acc = 0.0;
            for (std::int64_t i = 0; i < count; ++i) {
                const Vertex y = vertex_at(t, l, i);
                int cpl = common_prefix_len(xp, y);
                acc += qpow(q, sp.s() * static_cast<double>(2 * cpl - l)) *
                       fl.values[static_cast<std::size_t>(i)];
            }
            acc /= static_cast<double>(count);
            gap = std::max(gap, std::abs(acc - u[static_cast<std::size_t>(pick)]));
        }
        ResultRow rr = make_row("selftest", q, "sphere_pairing_gap", gap);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    {
        const SpectralParam sp(q, cplx(0.0, -0.5));
        ResultRow rr = make_row("selftest", q, "radial_constant_error",
                                radial_error(ones(t, 0), sp, 2.0, t.depth));
        set_z(rr, sp.z);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }
    {
        const SpectralParam sp(q, cplx(tau(q) / 4.0, 0.0));
        bool raised = false;
        try {
            radial_error(ones(t, 0), sp, 2.0, 1);
        } catch (const degenerate_error&) {
            raised = true;
        }
        ResultRow rr = make_row("selftest", q, "radial_degenerate_raises",
                                raised ? 1.0 : 0.0);
        assert_ge(rr, 1.0, 0.0);
        rows.push_back(rr);
    }
}

void selftest_treeops(std::vector<ResultRow>& rows, int q, std::uint64_t seed) {
    const TreeParams t(q, 10);
    {
        BallFunction c(t);
        for (cplx& v : c.values) v = cplx(2.5, -1.0);
        const BallFunction lc = laplacian(c);
        double gap = 0.0;
        for (int n = 0; n < t.depth; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                gap = std::max(gap, std::abs(lc.at(n, i)));
        ResultRow rr = make_row("selftest", q, "laplacian_constant_gap", gap);
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);
    }
    {
        BallFunction radial(t);
        for (int n = 0; n <= t.depth; ++n)
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i)
                radial.at(n, i) = std::pow(static_cast<double>(q), -n);
        const BallFunction lr = laplacian(radial);
        ResultRow rr = make_row("selftest", q, "laplacian_radial_origin_gap",
                                std::abs(lr.at(0, 0) - (1.0 - 1.0 / q)));
        assert_le(rr, 0.0, 1e-15);
        rows.push_back(rr);
    }
    for (cplx z : {cplx(0.0), cplx(tau(q) / 8.0, 0.0), cplx(0.0, -0.5)}) {
        const SpectralParam sp(q, z);
        BallFunction prof(t);
        for (int n = 0; n <= t.depth; ++n) {
            const cplx v = phi_explicit(sp, n);
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i) prof.at(n, i) = v;
        }
        ResultRow rr = make_row("selftest", q, "phi_profile_eigen_residual",
                                eigen_residual(prof, sp));
        set_z(rr, z);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    const SpectralParam sp(q, cplx(tau(q) / 8.0, 0.0));
    const CylFunction F = random_cyl_function(seed, t, 3, Dist::disc);
    const BallFunction u = poisson_transform(F, sp);
    {
        double gap = 0.0;
        for (int n = 0; n <= 5; ++n) {
            const BallFunction en = epsilon_n(u, n);
            const BallFunction pn = poisson_transform(cond_expect(F, n), sp);
            gap = std::max(gap, max_gap(en.values, pn.values));
        }
        ResultRow rr = make_row("selftest", q, "epsilon_transform_gap", gap);
        set_z(rr, sp.z);
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }
    {
        const BallFunction e2 = epsilon_n(u, 2);
        const BallFunction e22 = epsilon_n(e2, 2);
        ResultRow rr = make_row("selftest", q, "epsilon_idempotent_gap",
                                max_gap(e22.values, e2.values));
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);

        const BallFunction v = random_ball_function(seed + 3, t, Dist::disc);
        const BallFunction e2v = epsilon_n(v, 2);
        double adj = 0.0;
        for (int n = 0; n <= t.depth; ++n) {
            cplx lhs = 0.0;
            cplx rhs = 0.0;
            for (std::int64_t i = 0; i < sphere_size(t, n); ++i) {
                lhs += e2.at(n, i) * std::conj(v.at(n, i));
                rhs += u.at(n, i) * std::conj(e2v.at(n, i));
            }
            adj = std::max(adj,
                           std::abs(lhs - rhs) / static_cast<double>(sphere_size(t, n)));
        }
        ResultRow ar = make_row("selftest", q, "epsilon_selfadjoint_gap", adj);
        assert_le(ar, 0.0, 1e-12);
        rows.push_back(ar);
    }
    {
        double margin = -1e300;
        double hardy_margin = -1e300;
        const LebesgueIndex l1 = delta_index(1.0);
        const LebesgueIndex l2 = delta_index(2.0);
        const std::vector<double> rset = {1.0, 1.5, 2.0, 4.0, INFINITY};
        std::vector<double> base_p1(rset.size());
        std::vector<double> base_p2(rset.size());
        std::vector<double> base_star(rset.size());
        for (std::size_t ri = 0; ri < rset.size(); ++ri) {
            base_p1[ri] = hardy_norm_p(u, l1, rset[ri]).value;
            base_p2[ri] = hardy_norm_p(u, l2, rset[ri]).value;
            base_star[ri] = hardy_norm_star(u, rset[ri]).value;
        }
        for (int n = 0; n <= t.depth; ++n) {
            const BallFunction en = epsilon_n(u, n);
            for (std::size_t ri = 0; ri < rset.size(); ++ri) {
                const double r = rset[ri];
                for (int l = 0; l <= t.depth; ++l)
                    margin = std::max(margin, sphere_lr_average(en, l, r) -
                                                  sphere_lr_average(u, l, r));
                hardy_margin = std::max(
                    {hardy_margin, hardy_norm_p(en, l1, r).value - base_p1[ri],
                     hardy_norm_p(en, l2, r).value - base_p2[ri],
                     hardy_norm_star(en, r).value - base_star[ri]});
            }
        }
        ResultRow sm = make_row("selftest", q, "epsilon_sphere_contraction_margin", margin);
        assert_le(sm, 0.0, 1e-12);
        rows.push_back(sm);
        ResultRow hm = make_row("selftest", q, "epsilon_hardy_contraction_margin",
                                hardy_margin);
        assert_le(hm, 0.0, 1e-12);
        rows.push_back(hm);
    }
    {
        const TreeParams ts(q, 6);
        std::vector<double> lambdas;
        for (int k = 1; k <= 20; ++k) lambdas.push_back(0.1 * k);
        int violations = 0;
        for (int rep = 0; rep < 20; ++rep) {
            const BallFunction w =
                random_ball_function(seed + static_cast<std::uint64_t>(rep), ts,
                                     Dist::unit_interval);
            for (int m : {4, 6})
                for (bool ok : weak_type_check(w, m, lambdas))
                    if (!ok) ++violations;
        }
        ResultRow rr = make_row("selftest", q, "weak_type_violations",
                                static_cast<double>(violations));
        assert_le(rr, 0.0, 0.0);
        rows.push_back(rr);
    }
    {
        const BallFunction star = epsilon_star(u);
        double floor_margin = -1e300;
        for (std::size_t i = 0; i < star.values.size(); ++i)
            floor_margin =
                std::max(floor_margin, std::abs(u.values[i]) - star.values[i].real());
        ResultRow rr = make_row("selftest", q, "epsilon_star_floor_margin", floor_margin);
        assert_le(rr, 0.0, 1e-14);
        rows.push_back(rr);
        for (double r : {2.0, 4.0}) {
            const double num = sphere_lr_average(star, t.depth, r);
            const double den = sphere_lr_average(u, t.depth, r);
            ResultRow sr = make_row("selftest", q, "epsilon_star_strong_ratio",
                                    den > 0.0 ? num / den : 0.0);
            sr.r = r;
            rows.push_back(sr);
        }
    }
}

void selftest_inversion(std::vector<ResultRow>& rows, int q, std::uint64_t seed) {
    const TreeParams t(q, 10);
    for (cplx zin : default_z_grid(q)) {
        const SpectralParam sp(q, zin);
        double kgap = 0.0;
        double abound = -1e300;
        double kimag = 0.0;
        double kmin = 1e300;
        for (int n : {1, 3, 6}) {
            const InversionCoefficients co = coefficients(n, sp, 3);
            for (int j = 0; j <= std::min(3, n); ++j) {
                const cplx kj = co.K[static_cast<std::size_t>(j)];
                kgap = std::max(kgap, std::abs(kj - k_literal(j, n, sp)));
                kimag = std::max(kimag, std::abs(kj.imag()));
                kmin = std::min(kmin, kj.real());
            }
            for (const cplx& aj : co.a)
                abound = std::max(abound, std::abs(aj) * 2.0 * n - co.b);
        }
        ResultRow kr = make_row("selftest", q, "k_identity_gap", kgap);
        set_z(kr, zin);
        assert_le(kr, 0.0, 1e-12);
        rows.push_back(kr);
        ResultRow ki = make_row("selftest", q, "k_imag_max", kimag);
        set_z(ki, zin);
        assert_le(ki, 0.0, 0.0);
        rows.push_back(ki);
        ResultRow km = make_row("selftest", q, "k_min", kmin);
        set_z(km, zin);
        assert_ge(km, 0.0, 0.0);
        rows.push_back(km);
        ResultRow ab = make_row("selftest", q, "a_bound_margin", abound);
        set_z(ab, zin);
        assert_le(ab, 0.0, 0.0);
        rows.push_back(ab);
    }

    {
        const SpectralParam sp(q, cplx(tau(q) / 4.0, 0.0));
        const CylFunction one = ones(t, 1);
        const CylFunction t1 = t_n_bruteforce(one, sp, 1);
        double gap = 0.0;
        for (const cplx& v : t1.values) gap = std::max(gap, std::abs(v - 1.0));
        ResultRow rr = make_row("selftest", q, "t1_constant_gap", gap);
        set_z(rr, sp.z);
        rr.n = 1;
        assert_le(rr, 0.0, 1e-12);
        rows.push_back(rr);
    }

    const SpectralParam sp(q, cplx(tau(q) / 8.0, 0.0));
    for (int m : {1, 2, 3}) {
        const CylFunction F =
            random_cyl_function(seed + static_cast<std::uint64_t>(m), t, m, Dist::disc);
        for (int n : {m + 1, 6}) {
            const CylFunction tb = t_n_bruteforce(F, sp, n);
            const CylFunction tc = t_n_closedform(F, sp, n);
            ResultRow rr = make_row("selftest", q, "oracle_gap",
                                    max_gap(tb.values, tc.values) /
                                        (1.0 + max_abs(tb.values)));
            set_z(rr, sp.z);
            rr.n = n;
            assert_le(rr, 0.0, 1e-10);
            rows.push_back(rr);

            const InversionErrorDetail d = inversion_error_detail(F, sp, n, 2.0);
            ResultRow ir = make_row("selftest", q, "identity_residual",
                                    d.identity_residual);
            set_z(ir, sp.z);
            ir.n = n;
            assert_le(ir, 0.0, 1e-10);
            rows.push_back(ir);

            const double pv = inversion_error_parseval(F, sp, n);
            ResultRow pr = make_row("selftest", q, "parseval_gap",
                                    std::abs(d.error - pv) / (1.0 + pv));
            set_z(pr, sp.z);
            pr.n = n;
            assert_le(pr, 0.0, 1e-10);
            rows.push_back(pr);
        }
    }

    {
        double dmax = 0.0;
        for (cplx zin : default_z_grid(q)) {
            const SpectralParam spz(q, zin);
            const CylFunction F = random_cyl_function(seed, t, 2, Dist::disc);
            dmax = std::max(dmax, dual_lower_bound(F, spz, 2.0));
        }
        ResultRow rr = make_row("selftest", q, "dual_ratio_max", dmax);
        assert_le(rr, 2.0, 0.0);
        rows.push_back(rr);
    }
}

} // namespace

std::vector<ResultRow> suite_selftest(const ExperimentConfig& cfg) {
    std::vector<ResultRow> rows;
    for (int q : {2, 3}) {
        selftest_spectral(rows, q, cfg.seed);
        selftest_boundary(rows, q, cfg.seed);
        selftest_transform(rows, q, cfg.seed);
        selftest_treeops(rows, q, cfg.seed);
        selftest_inversion(rows, q, cfg.seed);
    }
    return rows;
}

} // namespace treeharm
