#include "treeharm/boundary.hpp"

#include <algorithm>
#include <cmath>

namespace treeharm {

CylFunction::CylFunction(TreeParams t, int level_, std::vector<cplx> v)
    : params(t), level(level_), values(std::move(v)) {
    if (level < 0 || level > params.depth)
        throw std::domain_error("CylFunction: level outside [0, depth]");
    if (static_cast<std::int64_t>(values.size()) != sphere_size(params, level))
        throw std::domain_error("CylFunction: value count != sphere size");
}

double sector_measure(const TreeParams& t, int level) {
    if (level < 0 || level > t.depth)
        throw std::domain_error("sector_measure: level outside [0, depth]");
    if (level == 0) return 1.0;
    return 1.0 / static_cast<double>(sphere_size(t, level));
}

double sector_measure(const TreeParams& t, const Vertex& x) {
    validate_vertex(t, x);
    return sector_measure(t, static_cast<int>(x.size()));
}

std::vector<double> confluence_measures(const TreeParams& t, const Vertex& x) {
    validate_vertex(t, x);
    const int n = static_cast<int>(x.size());
    std::vector<double> mu(static_cast<std::size_t>(n) + 1, 0.0);
    if (n == 0) {
        mu[0] = 1.0;
        return mu;
    }
    mu[0] = static_cast<double>(t.q) / (t.q + 1);
    for (int j = 1; j < n; ++j)
        mu[static_cast<std::size_t>(j)] =
            sector_measure(t, j) - sector_measure(t, j + 1);
    mu[static_cast<std::size_t>(n)] = sector_measure(t, n);
    return mu;
}

std::map<int, double> confluence_measures_in_sector(const TreeParams& t,
                                                    const Vertex& x,
                                                    const Vertex& y) {
    validate_vertex(t, x);
    validate_vertex(t, y);
    const int nx = static_cast<int>(x.size());
    const int ny = static_cast<int>(y.size());
    const int l = common_prefix_len(x, y);
    std::map<int, double> out;
    if (l < std::min(nx, ny)) {
        out[l] = sector_measure(t, ny);
    } else if (l == nx) {
        // x is a prefix of y (possibly x = y)
        out[nx] = sector_measure(t, ny);
    } else {
        // y is a proper prefix of x; rays in E(y) may follow x further
        for (int j = ny; j < nx; ++j)
            out[j] = sector_measure(t, j) - sector_measure(t, j + 1);
        out[nx] = sector_measure(t, nx);
    }
    return out;
}

CylFunction reexpress(const CylFunction& F, int level) {
    if (level < F.level)
        throw std::domain_error("reexpress: target level below F.level");
    if (level > F.params.depth)
        throw std::domain_error("reexpress: target level beyond depth");
    std::vector<cplx> v = F.values;
    int cur = F.level;
    while (cur < level) {
        const std::size_t fan = static_cast<std::size_t>(cur == 0 ? F.params.q + 1 : F.params.q);
        std::vector<cplx> next(v.size() * fan);
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t c = 0; c < fan; ++c) next[i * fan + c] = v[i];
        v = std::move(next);
        ++cur;
    }
    return CylFunction(F.params, level, std::move(v));
}

// One-level block average from `from_level`; exact on blocks of identical values.
static std::vector<cplx> coarsen_once(const TreeParams& t, const std::vector<cplx>& v,
                                      int from_level) {
    const std::size_t fan =
        static_cast<std::size_t>(from_level == 1 ? t.q + 1 : t.q);
    std::vector<cplx> out(v.size() / fan);
    for (std::size_t b = 0; b < out.size(); ++b) {
        const cplx v0 = v[b * fan];
        cplx acc = 0.0;
        for (std::size_t c = 1; c < fan; ++c) acc += v[b * fan + c] - v0;
        out[b] = v0 + acc / static_cast<double>(fan);
    }
    return out;
}

CylFunction cond_expect(const CylFunction& F, int n) {
    if (n < 0) throw std::domain_error("cond_expect: negative level");
    if (n >= F.level) return F;
    std::vector<cplx> v = F.values;
    for (int cur = F.level; cur > n; --cur) v = coarsen_once(F.params, v, cur);
    return CylFunction(F.params, n, std::move(v));
}

CylFunction difference(const CylFunction& F, int n) {
    if (n < 0) throw std::domain_error("difference: negative level");
    if (n == 0) return cond_expect(F, 0);
    if (n > F.level) {
        // E_n = E_{n-1} on K_m for n > m
        return CylFunction(F.params, F.level,
                           std::vector<cplx>(F.values.size(), cplx(0.0)));
    }
    CylFunction hi = cond_expect(F, n);
    CylFunction lo = reexpress(cond_expect(F, n - 1), n);
    for (std::size_t i = 0; i < hi.values.size(); ++i) hi.values[i] -= lo.values[i];
    return hi;
}

cplx integral(const CylFunction& F) {
    return cond_expect(F, 0).values[0];
}

double lr_norm(const CylFunction& F, double r) {
    if (std::isinf(r)) {
        double m = 0.0;
        for (const cplx& v : F.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (r < 1.0) throw std::domain_error("lr_norm: r must be >= 1");
    double acc = 0.0;
    for (const cplx& v : F.values) acc += std::pow(std::abs(v), r);
    return std::pow(acc / static_cast<double>(F.values.size()), 1.0 / r);
}

CylFunction multiplier(const CylFunction& F, std::span<const cplx> a) {
    const int m = F.level;
    std::vector<cplx> acc(F.values.size(), cplx(0.0));
    for (int j = 1; j <= m && j <= static_cast<int>(a.size()); ++j) {
        CylFunction dj = reexpress(difference(F, j), m);
        const cplx aj = a[static_cast<std::size_t>(j - 1)];
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += aj * dj.values[i];
    }
    return CylFunction(F.params, m, std::move(acc));
}

std::vector<double> martingale_maximal(const CylFunction& F) {
    std::vector<double> out(F.values.size(), 0.0);
    for (int n = 0; n <= F.level; ++n) {
        CylFunction en = reexpress(cond_expect(F, n), F.level);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::max(out[i], std::abs(en.values[i]));
    }
    return out;
}

Martingale::Martingale(TreeParams t, std::vector<CylFunction> terms_)
    : params(t), terms(std::move(terms_)) {
    if (terms.empty()) throw std::domain_error("Martingale: no terms");
    for (std::size_t n = 0; n < terms.size(); ++n) {
        if (terms[n].level != static_cast<int>(n))
            throw std::domain_error("Martingale: term level mismatch");
    }
    for (std::size_t n = 1; n < terms.size(); ++n) {
        for (std::size_t m = 0; m < n; ++m) {
            CylFunction e = cond_expect(terms[n], static_cast<int>(m));
            if (e.values != terms[m].values)
                throw std::domain_error("Martingale: compatibility E_m(F_n) = F_m violated");
        }
    }
}

Martingale martingale_from_function(const CylFunction& F, int horizon) {
    if (horizon < 0 || horizon > F.params.depth)
        throw std::domain_error("martingale_from_function: horizon outside [0, depth]");
    std::vector<CylFunction> terms;
    terms.reserve(static_cast<std::size_t>(horizon) + 1);
    for (int n = 0; n <= horizon; ++n) {
        if (n <= F.level)
            terms.push_back(cond_expect(F, n));
        else
            terms.push_back(reexpress(F, n));
    }
    return Martingale(F.params, std::move(terms));
}

} // namespace treeharm
