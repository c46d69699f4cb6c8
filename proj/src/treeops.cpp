#include "treeharm/treeops.hpp"

#include <algorithm>
#include <cmath>

namespace treeharm {

namespace {

cplx stencil(const BallFunction& u, int level, std::int64_t i) {
    const TreeParams& t = u.params;
    cplx nb = 0.0;
    if (level >= 1) nb += u.at(level - 1, level == 1 ? 0 : i / t.q);
    const std::int64_t first = level == 0 ? 0 : i * t.q;
    const std::int64_t fan = level == 0 ? t.q + 1 : t.q;
    for (std::int64_t c = 0; c < fan; ++c) nb += u.at(level + 1, first + c);
    return u.at(level, i) - nb / (t.q + 1.0);
}

} // namespace

BallFunction laplacian(const BallFunction& u) {
    const TreeParams& t = u.params;
    BallFunction out(t);
    for (int level = 0; level < t.depth; ++level) {
        const std::int64_t count = sphere_size(t, level);
        for (std::int64_t i = 0; i < count; ++i) out.at(level, i) = stencil(u, level, i);
    }
    return out;
}

double eigen_residual(const BallFunction& u, const SpectralParam& sp) {
    const TreeParams& t = u.params;
    const cplx g = gamma_eig(sp);
    double worst = 0.0;
    for (int level = 0; level < t.depth; ++level) {
        const std::int64_t count = sphere_size(t, level);
        for (std::int64_t i = 0; i < count; ++i)
            worst = std::max(worst, std::abs(stencil(u, level, i) - g * u.at(level, i)));
    }
    return worst;
}

BallFunction epsilon_n(const BallFunction& u, int n) {
    const TreeParams& t = u.params;
    if (n < 0) throw std::domain_error("epsilon_n: n must be >= 0");
    BallFunction out = u;
    for (int level = n + 1; level <= t.depth; ++level) {
        const std::int64_t count = sphere_size(t, level);
        std::vector<cplx> v(static_cast<std::size_t>(count));
        for (std::int64_t i = 0; i < count; ++i)
            v[static_cast<std::size_t>(i)] = u.at(level, i);
        // iterated one-level block means down to the level-n grouping;
        // shifted means keep block-constant data exact
        for (int d = level; d > n; --d) {
            const std::size_t fan = static_cast<std::size_t>(d == 1 ? t.q + 1 : t.q);
            std::vector<cplx> next(v.size() / fan);
            for (std::size_t b = 0; b < next.size(); ++b) {
                const cplx v0 = v[b * fan];
                cplx acc = 0.0;
                for (std::size_t c = 1; c < fan; ++c) acc += v[b * fan + c] - v0;
                next[b] = v0 + acc / static_cast<double>(fan);
            }
            v = std::move(next);
        }
        const std::int64_t group = count / static_cast<std::int64_t>(v.size());
        for (std::int64_t i = 0; i < count; ++i)
            out.at(level, i) = v[static_cast<std::size_t>(i / group)];
    }
    return out;
}

BallFunction epsilon_star(const BallFunction& u) {
    const TreeParams& t = u.params;
    BallFunction out(t);
    for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] = std::abs(u.values[i]);
    for (int n = 0; n <= t.depth; ++n) {
        const BallFunction en = epsilon_n(u, n);
        for (int level = n; level <= t.depth; ++level) {
            const std::int64_t count = sphere_size(t, level);
            for (std::int64_t i = 0; i < count; ++i)
                out.at(level, i) = std::max(out.at(level, i).real(), std::abs(en.at(level, i)));
        }
    }
    return out;
}

double sphere_lr_average(const BallFunction& u, int n, double r) {
    const TreeParams& t = u.params;
    const std::int64_t count = sphere_size(t, n);
    if (std::isinf(r)) {
        double worst = 0.0;
        for (std::int64_t i = 0; i < count; ++i)
            worst = std::max(worst, std::abs(u.at(n, i)));
        return worst;
    }
    if (r < 1.0) throw std::domain_error("sphere_lr_average: r must be >= 1 or inf");
    double acc = 0.0;
    for (std::int64_t i = 0; i < count; ++i) acc += std::pow(std::abs(u.at(n, i)), r);
    return std::pow(acc / static_cast<double>(count), 1.0 / r);
}

namespace {

HardyNorm weighted_max(const BallFunction& u, double r,
                       const std::vector<double>& weight) {
    HardyNorm best{0.0, 0};
    for (int n = 0; n <= u.params.depth; ++n) {
        const double v = weight[static_cast<std::size_t>(n)] * sphere_lr_average(u, n, r);
        if (v > best.value) best = {v, n};
    }
    return best;
}

} // namespace

HardyNorm hardy_norm_p(const BallFunction& u, const LebesgueIndex& li, double r) {
    const TreeParams& t = u.params;
    const SpectralParam sp(t.q, cplx(0.0, li.delta));
    std::vector<double> w(static_cast<std::size_t>(t.depth) + 1);
    for (int n = 0; n <= t.depth; ++n)
        w[static_cast<std::size_t>(n)] = 1.0 / phi_explicit(sp, n).real();
    return weighted_max(u, r, w);
}

HardyNorm hardy_norm_star(const BallFunction& u, double r) {
    const TreeParams& t = u.params;
    std::vector<double> w(static_cast<std::size_t>(t.depth) + 1);
    for (int n = 0; n <= t.depth; ++n)
        w[static_cast<std::size_t>(n)] = std::pow(static_cast<double>(t.q), 0.5 * n);
    return weighted_max(u, r, w);
}

std::vector<bool> weak_type_check(const BallFunction& u, int m,
                                  std::span<const double> lambdas) {
    const TreeParams& t = u.params;
    if (m < 0 || m > t.depth)
        throw std::domain_error("weak_type_check: m outside [0, depth]");
    BallFunction au(t);
    for (std::size_t i = 0; i < u.values.size(); ++i) au.values[i] = std::abs(u.values[i]);
    const BallFunction star = epsilon_star(au);
    const std::int64_t count = sphere_size(t, m);
    double mass = 0.0;
    for (std::int64_t i = 0; i < count; ++i) mass += au.at(m, i).real();
    std::vector<bool> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        if (lambda <= 0.0) throw std::domain_error("weak_type_check: lambda must be > 0");
        std::int64_t over = 0;
        for (std::int64_t i = 0; i < count; ++i)
            if (star.at(m, i).real() > lambda) ++over;
        out.push_back(lambda * static_cast<double>(over) <= mass);
    }
    return out;
}

} // namespace treeharm
