#pragma once

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "treeharm/tree.hpp"

namespace treeharm {

using cplx = std::complex<double>;

/// Element of K_m(Omega): one complex value per level-m sector E(y),
/// ordered like enumerate_sphere(m). Sectors at a fixed level partition
/// the boundary and all carry the same measure 1/#S(o,m).
struct CylFunction {
    TreeParams params;
    int level;
    std::vector<cplx> values;

    CylFunction(TreeParams t, int level_, std::vector<cplx> v);
};

/// nu(E(x)) for a vertex at the given level: 1 at the root, else 1/((q+1)q^(l-1)).
double sector_measure(const TreeParams& t, int level);
double sector_measure(const TreeParams& t, const Vertex& x);

/// mu_j = nu{omega : |c(x,omega)| = j}, j = 0..|x|.
std::vector<double> confluence_measures(const TreeParams& t, const Vertex& x);

/// Measure of {omega in E(y) : |c(x,omega)| = j}, keyed by j.
/// Splits into three cases by l = common_prefix_len(x, y); the values sum
/// to nu(E(y)).
std::map<int, double> confluence_measures_in_sector(const TreeParams& t,
                                                    const Vertex& x,
                                                    const Vertex& y);

/// Replicate a cylindrical function at a finer level (no arithmetic).
CylFunction reexpress(const CylFunction& F, int level);

/// E_n(F). Implemented as iterated one-level block averages so that the
/// tower identity E_n(E_m(F)) = E_min(m,n)(F) is bitwise exact; each block
/// average is computed as v0 + sum(v_i - v0)/k, which returns v0 exactly
/// when all block entries coincide.
CylFunction cond_expect(const CylFunction& F, int n);

/// Delta_n(F) = E_n(F) - E_{n-1}(F), with E_{-1} = 0. Level min(n, F.level).
CylFunction difference(const CylFunction& F, int n);

/// L^r(Omega) norm; r = inf gives the max. Requires r >= 1.
double lr_norm(const CylFunction& F, double r);

/// Integral of F over Omega.
cplx integral(const CylFunction& F);

/// T_a(F) = sum_{j>=1} a_j Delta_j(F); a[0] multiplies Delta_1.
CylFunction multiplier(const CylFunction& F, std::span<const cplx> a);

/// E*(F)(omega) = max_{0<=n<=level} |E_n(F)(omega)|, one value per level-m sector.
std::vector<double> martingale_maximal(const CylFunction& F);

/// Finite-horizon martingale: terms[n] lives in K_n(Omega).
/// Construction validates E_m(F_n) = F_m bitwise for all m <= n <= M.
struct Martingale {
    TreeParams params;
    std::vector<CylFunction> terms;

    Martingale(TreeParams t, std::vector<CylFunction> terms_);
    int horizon() const { return static_cast<int>(terms.size()) - 1; }
};

/// Martingale {E_n(F)}_{n=0..horizon}; terms beyond F.level replicate F.
Martingale martingale_from_function(const CylFunction& F, int horizon);

} // namespace treeharm
