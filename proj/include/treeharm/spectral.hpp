#pragma once

#include <complex>
#include <stdexcept>

#include "treeharm/boundary.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

/// z sits within k_branch_tol of a c-function pole.
struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Absolute tolerance for classifying z against the lattice (tau/2)Z.
inline constexpr double k_branch_tol = 1e-9;

/// Spectral period: phi and the Poisson transform are tau-periodic in z.
double tau(int q);

/// Formula branch for phi at z: the closed form switches shape on the
/// lattice tau*Z, its half shift, and everywhere else.
enum class Branch { tau_z, half_tau_shift, generic };

/// Spectral parameter z with its derived exponent s = 1/2 + i z and branch.
/// gamma and c are always recomputed from z, never cached.
struct SpectralParam {
    int q;
    cplx z;
    Branch branch;

    SpectralParam(int q_, cplx z_);
    cplx s() const { return cplx(0.5, 0.0) + cplx(0.0, 1.0) * z; }
};

/// q^e via exp(e ln q); q > 1 real, so the principal logarithm is unambiguous.
cplx qpow(int q, cplx e);

/// Eigenvalue of the nearest-neighbour averaging Laplacian on exponentials:
/// 1 - (q^(1/2+iz) + q^(1/2-iz))/(q+1). Entire in z.
cplx gamma_eig(const SpectralParam& sp);

/// c(z) = (q^(1/2)/(q+1)) (q^(1/2+iz) - q^(-1/2-iz)) / (q^(iz) - q^(-iz)).
/// Satisfies c(z) + c(-z) = 1 and conj(c(z)) = c(-z) for real z.
/// Throws pole_error unless branch = generic.
cplx cfun(const SpectralParam& sp);

/// Radial spherical function value at distance n from the root:
///   tau_z branch:         ((q-1)/(q+1) n + 1) q^(-n/2)
///   half_tau_shift branch: same times (-1)^n
///   generic:              c(z) q^((iz-1/2)n) + c(-z) q^((-iz-1/2)n)
cplx phi_explicit(const SpectralParam& sp, int n);

/// Same quantity as a boundary integral: sum_j mu_j q^(s(2j-n)) over the
/// confluence measures of any vertex at level n. Independent route kept as
/// a cross-check against phi_explicit.
cplx phi_integral(const SpectralParam& sp, int n);

/// B(j,l,z), the sphere-l profile coefficient of the transform of a level-j
/// martingale difference:
///   j = 0: c(z) q^(izl) + c(-z) q^(-izl)
///   j >= 1: c(z) q^(iz(j-1)) (q^(iz(l-j+1)) - q^(-iz(l-j+1)))
/// Requires 0 <= j <= l and generic branch.
cplx bfun(int j, int l, const SpectralParam& sp);

/// Lebesgue index p in [1,2] with conjugate index and delta = 1/p - 1/2.
/// p = 1 tags the conjugate as infinite; exponents should use inv_conj = 1/p'.
struct LebesgueIndex {
    double p;
    double conj;
    bool conj_is_inf;
    double inv_conj;
    double delta;
};

LebesgueIndex delta_index(double p);

} // namespace treeharm
