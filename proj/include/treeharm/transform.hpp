#pragma once

#include <vector>

#include "treeharm/boundary.hpp"
#include "treeharm/spectral.hpp"
#include "treeharm/tree.hpp"

namespace treeharm {

/// The normalizing value phi(n) is numerically zero, so the normalized
/// radial functional is undefined at this level.
struct degenerate_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Complex function on the truncated ball B(o, depth), one value per vertex,
/// stored sphere by sphere in enumerate_sphere order.
struct BallFunction {
    TreeParams params;
    std::vector<cplx> values;

    explicit BallFunction(TreeParams t);
    BallFunction(TreeParams t, std::vector<cplx> v);

    cplx at(int level, std::int64_t index) const {
        return values[static_cast<std::size_t>(ball_offset(params, level) + index)];
    }
    cplx& at(int level, std::int64_t index) {
        return values[static_cast<std::size_t>(ball_offset(params, level) + index)];
    }
};

/// Boundary kernel value q^(2j - |x|) on the set {omega : |c(x, omega)| = j}.
double poisson_kernel(const TreeParams& t, const Vertex& x, int j);

/// Integral of the kernel power p^s(x, .) over the sector E(y):
/// sum over the confluence classes of E(y) relative to x.
cplx sector_kernel_integral(const TreeParams& t, const Vertex& x, const Vertex& y,
                            cplx s);

/// Values of P_z F on S(o, level) in enumerate_sphere order.
/// Uses per-vertex prefix sector integrals: O(level) per vertex after one
/// prefix-sum pass over the boundary data.
std::vector<cplx> poisson_transform_sphere(const CylFunction& F,
                                           const SpectralParam& sp, int level);

/// P_z F on the whole ball; satisfies the eigen-equation L u = gamma(z) u
/// on interior vertices.
BallFunction poisson_transform(const CylFunction& F, const SpectralParam& sp);

/// Transform of a martingale: on S(o, n) the defining sequence stabilizes at
/// term n, so the value is P_z(terms[n]) there. Requires horizon >= depth.
BallFunction poisson_transform_martingale(const Martingale& M,
                                          const SpectralParam& sp);

/// Closed form for P_z(Delta_j F) on S(o, l): identically 0 when l < j,
/// otherwise q^(-l/2) B(j,l,z) times the level-j difference at the level-j
/// ancestor. Cross-checked against poisson_transform(difference(F, j)).
std::vector<cplx> poisson_of_difference(const CylFunction& F, int j,
                                        const SpectralParam& sp, int l);

/// L^r sphere-average distance between phi(n)^(-1) P_z F on S(o, n) and the
/// boundary data F. Requires n >= F.level; throws degenerate_error when
/// |phi(n)| < 1e-14.
double radial_error(const CylFunction& F, const SpectralParam& sp, double r, int n);

} // namespace treeharm
