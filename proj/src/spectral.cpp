#include "treeharm/spectral.hpp"

#include <cmath>
#include <numbers>

namespace treeharm {

double tau(int q) {
    if (q < 2) throw std::domain_error("tau: q must be >= 2");
    return 2.0 * std::numbers::pi / std::log(static_cast<double>(q));
}

cplx qpow(int q, cplx e) {
    return std::exp(e * std::log(static_cast<double>(q)));
}

SpectralParam::SpectralParam(int q_, cplx z_) : q(q_), z(z_), branch(Branch::generic) {
    if (q < 2) throw std::domain_error("SpectralParam: q must be >= 2");
    if (std::abs(z.imag()) <= k_branch_tol) {
        const double half = tau(q) / 2.0;
        const double k = std::round(z.real() / half);
        if (std::abs(z.real() - k * half) <= k_branch_tol) {
            const bool even = std::llround(k) % 2 == 0;
            branch = even ? Branch::tau_z : Branch::half_tau_shift;
        }
    }
}

cplx gamma_eig(const SpectralParam& sp) {
    const cplx iz = cplx(0.0, 1.0) * sp.z;
    return 1.0 - (qpow(sp.q, 0.5 + iz) + qpow(sp.q, 0.5 - iz)) / (sp.q + 1.0);
}

cplx cfun(const SpectralParam& sp) {
    if (sp.branch != Branch::generic)
        throw pole_error("cfun: z within k_branch_tol of a pole in (tau/2)Z");
    const cplx iz = cplx(0.0, 1.0) * sp.z;
    const cplx num = qpow(sp.q, 0.5 + iz) - qpow(sp.q, -0.5 - iz);
    const cplx den = qpow(sp.q, iz) - qpow(sp.q, -iz);
    return std::sqrt(static_cast<double>(sp.q)) / (sp.q + 1.0) * num / den;
}

cplx phi_explicit(const SpectralParam& sp, int n) {
    if (n < 0) throw std::domain_error("phi_explicit: n must be >= 0");
    const double q = sp.q;
    if (sp.branch != Branch::generic) {
        const double base = ((q - 1.0) / (q + 1.0) * n + 1.0) * std::pow(q, -0.5 * n);
        const double sign = (sp.branch == Branch::half_tau_shift && n % 2 == 1) ? -1.0 : 1.0;
        return sign * base;
    }
    const cplx iz = cplx(0.0, 1.0) * sp.z;
    const SpectralParam neg(sp.q, -sp.z);
    return cfun(sp) * qpow(sp.q, (iz - 0.5) * static_cast<double>(n)) +
           cfun(neg) * qpow(sp.q, (-iz - 0.5) * static_cast<double>(n));
}

cplx phi_integral(const SpectralParam& sp, int n) {
    if (n < 0) throw std::domain_error("phi_integral: n must be >= 0");
    const TreeParams t(sp.q, std::max(n, 1));
    const Vertex x(static_cast<std::size_t>(n), std::uint8_t{0});
    const std::vector<double> mu = confluence_measures(t, x);
    cplx acc = 0.0;
    for (int j = 0; j <= n; ++j)
        acc += mu[static_cast<std::size_t>(j)] *
               qpow(sp.q, sp.s() * static_cast<double>(2 * j - n));
    return acc;
}

cplx bfun(int j, int l, const SpectralParam& sp) {
    if (j < 0 || j > l) throw std::domain_error("bfun: need 0 <= j <= l");
    const cplx iz = cplx(0.0, 1.0) * sp.z;
    const cplx c_pos = cfun(sp);
    const cplx c_neg = cfun(SpectralParam(sp.q, -sp.z));
    if (j == 0)
        return c_pos * qpow(sp.q, iz * static_cast<double>(l)) +
               c_neg * qpow(sp.q, -iz * static_cast<double>(l));
    const double span = static_cast<double>(l - j + 1);
    return c_pos * qpow(sp.q, iz * static_cast<double>(j - 1)) *
           (qpow(sp.q, iz * span) - qpow(sp.q, -iz * span));
}

LebesgueIndex delta_index(double p) {
    if (!(p >= 1.0 && p <= 2.0))
        throw std::domain_error("delta_index: p must lie in [1, 2]");
    LebesgueIndex li{};
    li.p = p;
    li.conj_is_inf = (p == 1.0);
    li.conj = li.conj_is_inf ? 0.0 : p / (p - 1.0);
    li.inv_conj = 1.0 - 1.0 / p;
    li.delta = 1.0 / p - 0.5;
    return li;
}

} // namespace treeharm
