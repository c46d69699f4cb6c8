#pragma once

#include <vector>

#include "treeharm/boundary.hpp"
#include "treeharm/spectral.hpp"

namespace treeharm {

/// Coefficients of the averaged inversion operator at fixed (n, z, m):
/// K[j] multiplies Delta_j inside T_n (j <= min(m,n)); a[j] are the residual
/// multipliers of the normalized error identity
///   (q/(2(q+1)|c|^2)) T_n F - F = a_0 E_0 F + sum_j a_j Delta_j F,
/// with a[j] = -1 for j > min(m,n). For real z all K[j] and a[j] are real,
/// K[j] >= 0, and max_j |a[j]| <= b/(2n) with b = 2m + 4/|1 - q^(2iz)|.
struct InversionCoefficients {
    int n;
    double z;
    int m;
    std::vector<cplx> K;
    std::vector<cplx> a;
    double b;
};

/// Closed forms for K and the derived a, b. Requires real z on the generic
/// branch and n >= 1. Cross-checkable against k_literal.
InversionCoefficients coefficients(int n, const SpectralParam& sp, int m);

/// Literal sphere sum (1/n) sum_{l=j..n} #S(o,l) q^(-l) |B(j,l,z)|^2,
/// the independent route kept to validate coefficients().K[j].
cplx k_literal(int j, int n, const SpectralParam& sp);

/// T_n F(omega) = (1/n) sum_{x in B(o,n)} p^(1/2 - iz)(x, omega) P_z F(x),
/// accumulated pair by pair; constant on level-n sectors, returned at level n.
CylFunction t_n_bruteforce(const CylFunction& F, const SpectralParam& sp, int n);

/// Same operator via the coefficient form sum_{j <= min(m,n)} K[j] Delta_j F.
CylFunction t_n_closedform(const CylFunction& F, const SpectralParam& sp, int n);

struct InversionErrorDetail {
    double error;             // || norm * T_n F - F ||_{L^r}
    double identity_residual; // sup distance to the a-coefficient form
};

/// Error of the normalized inversion at time n in L^r(Omega), 1 < r < inf.
/// Requires n >= F.level + 1. Throws if the computed error function strays
/// more than 1e-10 from its coefficient form.
double inversion_error(const CylFunction& F, const SpectralParam& sp, int n,
                       double r);

/// Same computation, returning the identity residual instead of enforcing it.
InversionErrorDetail inversion_error_detail(const CylFunction& F,
                                            const SpectralParam& sp, int n,
                                            double r);

/// r = 2 only: the error norm recomputed from orthogonality,
/// sqrt(sum_j |a_j|^2 ||Delta_j F||^2). Independent of the T_n evaluation.
double inversion_error_parseval(const CylFunction& F, const SpectralParam& sp,
                                int n);

/// Empirical ratio |c(z)| ||F||_r / ||P_z F||_{H^r_*}; the harness asserts it
/// stays bounded across the z grid.
double dual_lower_bound(const CylFunction& F, const SpectralParam& sp, double r);

} // namespace treeharm
