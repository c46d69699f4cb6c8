#include "treeharm/transform.hpp"

#include <cmath>

namespace treeharm {

BallFunction::BallFunction(TreeParams t)
    : params(t),
      values(static_cast<std::size_t>(ball_size(t, t.depth)), cplx(0.0)) {}

BallFunction::BallFunction(TreeParams t, std::vector<cplx> v)
    : params(t), values(std::move(v)) {
    if (static_cast<std::int64_t>(values.size()) != ball_size(params, params.depth))
        throw std::domain_error("BallFunction: value count != ball size");
}

double poisson_kernel(const TreeParams& t, const Vertex& x, int j) {
    validate_vertex(t, x);
    const int n = static_cast<int>(x.size());
    if (j < 0 || j > n) throw std::domain_error("poisson_kernel: j outside [0, |x|]");
    return std::pow(static_cast<double>(t.q), 2 * j - n);
}

cplx sector_kernel_integral(const TreeParams& t, const Vertex& x, const Vertex& y,
                            cplx s) {
    const int n = static_cast<int>(x.size());
    cplx acc = 0.0;
    for (const auto& [j, mass] : confluence_measures_in_sector(t, x, y))
        acc += mass * qpow(t.q, s * static_cast<double>(2 * j - n));
    return acc;
}

std::vector<cplx> poisson_transform_sphere(const CylFunction& F,
                                           const SpectralParam& sp, int level) {
    const TreeParams& t = F.params;
    if (level < 0 || level > t.depth)
        throw std::domain_error("poisson_transform_sphere: level outside [0, depth]");
    const int m = F.level;
    const double nu_m = sector_measure(t, m);

    std::vector<cplx> prefix(F.values.size() + 1, cplx(0.0));
    for (std::size_t i = 0; i < F.values.size(); ++i)
        prefix[i + 1] = prefix[i] + F.values[i];
    const cplx total = nu_m * prefix.back();

    std::vector<double> nu(static_cast<std::size_t>(t.depth) + 1);
    for (int j = 0; j <= t.depth; ++j) nu[static_cast<std::size_t>(j)] = sector_measure(t, j);
    std::vector<std::int64_t> span(static_cast<std::size_t>(m) + 1, 1);
    for (int j = m - 1; j >= 0; --j)
        span[static_cast<std::size_t>(j)] = span[static_cast<std::size_t>(j) + 1] * t.q;

    // q^(s e) for e in [-level, level]
    std::vector<cplx> qp(static_cast<std::size_t>(2 * level) + 1);
    for (int e = -level; e <= level; ++e)
        qp[static_cast<std::size_t>(e + level)] = qpow(t.q, sp.s() * static_cast<double>(e));

    const std::int64_t count = sphere_size(t, level);
    std::vector<cplx> out(static_cast<std::size_t>(count));
    std::vector<std::int64_t> anc(static_cast<std::size_t>(level) + 1);
    std::vector<cplx> gj(static_cast<std::size_t>(level) + 1);
    for (std::int64_t i = 0; i < count; ++i) {
        anc[static_cast<std::size_t>(level)] = i;
        for (int d = level; d >= 2; --d)
            anc[static_cast<std::size_t>(d - 1)] = anc[static_cast<std::size_t>(d)] / t.q;
        if (level >= 1) anc[0] = 0;

        // g_j = integral of F over the sector of the level-j ancestor
        gj[0] = total;
        for (int j = 1; j <= level; ++j) {
            if (j <= m) {
                const std::int64_t lo = anc[static_cast<std::size_t>(j)] *
                                        span[static_cast<std::size_t>(j)];
                gj[static_cast<std::size_t>(j)] =
                    nu_m * (prefix[static_cast<std::size_t>(lo + span[static_cast<std::size_t>(j)])] -
                            prefix[static_cast<std::size_t>(lo)]);
            } else {
                const std::int64_t im = m == 0 ? 0 : anc[static_cast<std::size_t>(m)];
                gj[static_cast<std::size_t>(j)] =
                    F.values[static_cast<std::size_t>(im)] * nu[static_cast<std::size_t>(j)];
            }
        }

        // exponent 2j - level, table shifted by level
        cplx acc = qp[static_cast<std::size_t>(2 * level)] * gj[static_cast<std::size_t>(level)];
        for (int j = 0; j < level; ++j)
            acc += qp[static_cast<std::size_t>(2 * j)] *
                   (gj[static_cast<std::size_t>(j)] - gj[static_cast<std::size_t>(j + 1)]);
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

BallFunction poisson_transform(const CylFunction& F, const SpectralParam& sp) {
    const TreeParams& t = F.params;
    BallFunction u(t);
    for (int level = 0; level <= t.depth; ++level) {
        const std::vector<cplx> sphere = poisson_transform_sphere(F, sp, level);
        const std::int64_t off = ball_offset(t, level);
        for (std::size_t i = 0; i < sphere.size(); ++i)
            u.values[static_cast<std::size_t>(off) + i] = sphere[i];
    }
    return u;
}

BallFunction poisson_transform_martingale(const Martingale& M,
                                          const SpectralParam& sp) {
    const TreeParams& t = M.params;
    if (M.horizon() < t.depth)
        throw std::domain_error("poisson_transform_martingale: horizon < depth");
    BallFunction u(t);
    for (int level = 0; level <= t.depth; ++level) {
        const std::vector<cplx> sphere =
            poisson_transform_sphere(M.terms[static_cast<std::size_t>(level)], sp, level);
        const std::int64_t off = ball_offset(t, level);
        for (std::size_t i = 0; i < sphere.size(); ++i)
            u.values[static_cast<std::size_t>(off) + i] = sphere[i];
    }
    return u;
}

std::vector<cplx> poisson_of_difference(const CylFunction& F, int j,
                                        const SpectralParam& sp, int l) {
    const TreeParams& t = F.params;
    if (j < 0 || j > F.level)
        throw std::domain_error("poisson_of_difference: j outside [0, F.level]");
    if (l < 0 || l > t.depth)
        throw std::domain_error("poisson_of_difference: l outside [0, depth]");
    const std::int64_t count = sphere_size(t, l);
    std::vector<cplx> out(static_cast<std::size_t>(count), cplx(0.0));
    if (l < j) return out;
    const cplx scale = std::pow(static_cast<double>(t.q), -0.5 * l) * bfun(j, l, sp);
    const CylFunction dj = difference(F, j);
    for (std::int64_t i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] =
            scale * dj.values[static_cast<std::size_t>(ancestor_index(t, l, i, j))];
    return out;
}

double radial_error(const CylFunction& F, const SpectralParam& sp, double r, int n) {
    const TreeParams& t = F.params;
    if (n < F.level || n > t.depth)
        throw std::domain_error("radial_error: need F.level <= n <= depth");
    if (!std::isinf(r) && r < 1.0)
        throw std::domain_error("radial_error: r must be >= 1 or inf");
    const cplx phi = phi_explicit(sp, n);
    if (std::abs(phi) < 1e-14)
        throw degenerate_error("radial_error: phi(n) vanishes, normalization undefined");
    const std::vector<cplx> u = poisson_transform_sphere(F, sp, n);
    const std::int64_t count = sphere_size(t, n);
    double acc = 0.0;
    double worst = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
        const cplx fb = F.values[static_cast<std::size_t>(ancestor_index(t, n, i, F.level))];
        const double d = std::abs(u[static_cast<std::size_t>(i)] / phi - fb);
        if (std::isinf(r))
            worst = std::max(worst, d);
        else
            acc += std::pow(d, r);
    }
    if (std::isinf(r)) return worst;
    return std::pow(acc / static_cast<double>(count), 1.0 / r);
}

} // namespace treeharm
