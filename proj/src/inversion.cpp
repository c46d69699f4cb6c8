#include "treeharm/inversion.hpp"

#include <cmath>
#include <string>

#include "treeharm/transform.hpp"
#include "treeharm/treeops.hpp"

namespace treeharm {

namespace {

void require_real_generic(const SpectralParam& sp, const char* who) {
    if (std::abs(sp.z.imag()) > k_branch_tol)
        throw std::domain_error(std::string(who) + ": z must be real");
    if (sp.branch != Branch::generic)
        throw pole_error(std::string(who) + ": z within k_branch_tol of (tau/2)Z");
}

double norm_factor(int q, cplx c) {
    return q / (2.0 * (q + 1.0) * std::norm(c));
}

} // namespace

InversionCoefficients coefficients(int n, const SpectralParam& sp, int m) {
    require_real_generic(sp, "coefficients");
    if (n < 1) throw std::domain_error("coefficients: n must be >= 1");
    if (m < 0) throw std::domain_error("coefficients: m must be >= 0");
    const double q = sp.q;
    const cplx c = cfun(sp);
    const double cc = std::norm(c);
    const cplx w2 = qpow(sp.q, cplx(0.0, 2.0) * sp.z);
    const int top = std::min(m, n);

    // geometric sums w2 (1 - w2^k)/(1 - w2) evaluated per tail length
    auto geom = [&](int k) {
        cplx pw = 1.0;
        for (int i = 0; i < k; ++i) pw *= w2;
        return w2 * (1.0 - pw) / (1.0 - w2);
    };

    InversionCoefficients out;
    out.n = n;
    out.z = sp.z.real();
    out.m = m;
    out.b = 2.0 * m + 4.0 / std::abs(1.0 - w2);
    out.K.resize(static_cast<std::size_t>(top) + 1);
    out.K[0] = (1.0 / n) *
               (1.0 + ((q + 1.0) / q) *
                          (2.0 * n * cc + 2.0 * (c * c * geom(n)).real()));
    for (int j = 1; j <= top; ++j) {
        const cplx s = geom(n - j + 1);
        out.K[static_cast<std::size_t>(j)] =
            ((q + 1.0) / q) * (cc / n) * (2.0 * (n - j + 1) - 2.0 * s.real());
    }
    const double nf = norm_factor(sp.q, c);
    out.a.resize(static_cast<std::size_t>(m) + 1, cplx(-1.0));
    for (int j = 0; j <= top; ++j)
        out.a[static_cast<std::size_t>(j)] = nf * out.K[static_cast<std::size_t>(j)] - 1.0;
    return out;
}

cplx k_literal(int j, int n, const SpectralParam& sp) {
    require_real_generic(sp, "k_literal");
    if (n < 1) throw std::domain_error("k_literal: n must be >= 1");
    if (j < 0 || j > n) throw std::domain_error("k_literal: j outside [0, n]");
    const TreeParams t(sp.q, n);
    cplx acc = 0.0;
    for (int l = j; l <= n; ++l)
        acc += static_cast<double>(sphere_size(t, l)) *
               std::pow(static_cast<double>(sp.q), -l) * std::norm(bfun(j, l, sp));
    return acc / static_cast<double>(n);
}

CylFunction t_n_bruteforce(const CylFunction& F, const SpectralParam& sp, int n) {
    require_real_generic(sp, "t_n_bruteforce");
    const TreeParams& t = F.params;
    if (n < 1 || n > t.depth)
        throw std::domain_error("t_n_bruteforce: n outside [1, depth]");

    // p^(1/2 - iz) powers by confluence exponent e = 2j - |x|
    const cplx sbar = cplx(0.5, 0.0) - cplx(0.0, 1.0) * sp.z;
    std::vector<cplx> kappa(static_cast<std::size_t>(2 * n) + 1);
    for (int e = -n; e <= n; ++e)
        kappa[static_cast<std::size_t>(e + n)] = qpow(t.q, sbar * static_cast<double>(e));

    const std::int64_t count = sphere_size(t, n);
    std::vector<cplx> acc(static_cast<std::size_t>(count), cplx(0.0));
    std::vector<std::int64_t> lo(static_cast<std::size_t>(n) + 1);
    std::vector<std::int64_t> hi(static_cast<std::size_t>(n) + 1);
    for (int level = 0; level <= n; ++level) {
        const std::vector<cplx> u = poisson_transform_sphere(F, sp, level);
        const std::int64_t sc = sphere_size(t, level);
        for (std::int64_t i = 0; i < sc; ++i) {
            // descendant index ranges of the ancestors of x at level n;
            // the confluence with a level-n sector is constant on each ring
            lo[0] = 0;
            hi[0] = count;
            std::int64_t a = i;
            std::int64_t span = 1;
            for (int d = level; d < n; ++d) span *= t.q;
            for (int j = level; j >= 1; --j) {
                lo[static_cast<std::size_t>(j)] = a * span;
                hi[static_cast<std::size_t>(j)] = (a + 1) * span;
                a /= t.q;
                span *= t.q;
            }
            const cplx px = u[static_cast<std::size_t>(i)];
            for (std::int64_t y = lo[static_cast<std::size_t>(level)];
                 y < hi[static_cast<std::size_t>(level)]; ++y)
                acc[static_cast<std::size_t>(y)] +=
                    kappa[static_cast<std::size_t>(level + n)] * px;
            for (int j = level - 1; j >= 0; --j) {
                const cplx kv = kappa[static_cast<std::size_t>(2 * j - level + n)] * px;
                for (std::int64_t y = lo[static_cast<std::size_t>(j)];
                     y < lo[static_cast<std::size_t>(j + 1)]; ++y)
                    acc[static_cast<std::size_t>(y)] += kv;
                for (std::int64_t y = hi[static_cast<std::size_t>(j + 1)];
                     y < hi[static_cast<std::size_t>(j)]; ++y)
                    acc[static_cast<std::size_t>(y)] += kv;
            }
        }
    }
    for (cplx& v : acc) v /= static_cast<double>(n);
    return CylFunction(t, n, std::move(acc));
}

CylFunction t_n_closedform(const CylFunction& F, const SpectralParam& sp, int n) {
    require_real_generic(sp, "t_n_closedform");
    const TreeParams& t = F.params;
    if (n < 1 || n > t.depth)
        throw std::domain_error("t_n_closedform: n outside [1, depth]");
    const InversionCoefficients co = coefficients(n, sp, F.level);
    const int top = std::min(F.level, n);
    std::vector<cplx> acc(static_cast<std::size_t>(sphere_size(t, n)), cplx(0.0));
    for (int j = 0; j <= top; ++j) {
        const CylFunction dj = reexpress(difference(F, j), n);
        const cplx kj = co.K[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += kj * dj.values[i];
    }
    return CylFunction(t, n, std::move(acc));
}

InversionErrorDetail inversion_error_detail(const CylFunction& F,
                                            const SpectralParam& sp, int n,
                                            double r) {
    require_real_generic(sp, "inversion_error");
    if (!(r > 1.0) || std::isinf(r))
        throw std::domain_error("inversion_error: r must lie in (1, inf)");
    if (n < F.level + 1)
        throw std::domain_error("inversion_error: need n >= F.level + 1");
    const TreeParams& t = F.params;
    const double nf = norm_factor(sp.q, cfun(sp));
    const CylFunction tn = t_n_closedform(F, sp, n);
    const CylFunction fn = reexpress(F, n);
    std::vector<cplx> err(tn.values.size());
    for (std::size_t i = 0; i < err.size(); ++i)
        err[i] = nf * tn.values[i] - fn.values[i];
    const CylFunction errf(t, n, std::move(err));

    const InversionCoefficients co = coefficients(n, sp, F.level);
    std::vector<cplx> ident(errf.values.size(), cplx(0.0));
    for (int j = 0; j <= F.level; ++j) {
        const CylFunction dj = reexpress(difference(F, j), n);
        const cplx aj = co.a[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < ident.size(); ++i) ident[i] += aj * dj.values[i];
    }
    double residual = 0.0;
    for (std::size_t i = 0; i < ident.size(); ++i)
        residual = std::max(residual, std::abs(errf.values[i] - ident[i]));
    return {lr_norm(errf, r), residual};
}

double inversion_error(const CylFunction& F, const SpectralParam& sp, int n,
                       double r) {
    const InversionErrorDetail d = inversion_error_detail(F, sp, n, r);
    if (d.identity_residual > 1e-10)
        throw std::logic_error("inversion_error: coefficient identity violated");
    return d.error;
}

double inversion_error_parseval(const CylFunction& F, const SpectralParam& sp,
                                int n) {
    require_real_generic(sp, "inversion_error_parseval");
    if (n < F.level + 1)
        throw std::domain_error("inversion_error_parseval: need n >= F.level + 1");
    const InversionCoefficients co = coefficients(n, sp, F.level);
    double acc = 0.0;
    for (int j = 0; j <= F.level; ++j) {
        const double nj = lr_norm(difference(F, j), 2.0);
        acc += std::norm(co.a[static_cast<std::size_t>(j)]) * nj * nj;
    }
    return std::sqrt(acc);
}

double dual_lower_bound(const CylFunction& F, const SpectralParam& sp, double r) {
    require_real_generic(sp, "dual_lower_bound");
    if (!(r > 1.0) || std::isinf(r))
        throw std::domain_error("dual_lower_bound: r must lie in (1, inf)");
    const BallFunction u = poisson_transform(F, sp);
    const double denom = hardy_norm_star(u, r).value;
    if (denom == 0.0) throw std::domain_error("dual_lower_bound: P_z F vanishes");
    return std::abs(cfun(sp)) * lr_norm(F, r) / denom;
}

} // namespace treeharm
