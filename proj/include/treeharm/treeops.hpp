#pragma once

#include <span>
#include <vector>

#include "treeharm/spectral.hpp"
#include "treeharm/transform.hpp"

namespace treeharm {

/// L u(x) = u(x) - (1/(q+1)) sum of u over the q+1 neighbours of x.
/// Defined on interior vertices (levels 0..depth-1); the outermost sphere of
/// the result is left at zero because its neighbours leave the ball.
BallFunction laplacian(const BallFunction& u);

/// max over interior x of |L u(x) - gamma(z) u(x)|.
double eigen_residual(const BallFunction& u, const SpectralParam& sp);

/// eps_n u(x) = u(x) for |x| <= n, else the average of u over the vertices of
/// S(o,|x|) sharing the level-n ancestor of x. Averages use a shifted mean so
/// sphere-constant inputs are reproduced exactly.
BallFunction epsilon_n(const BallFunction& u, int n);

/// eps* u(x) = max over 0 <= n <= |x| of |eps_n u(x)|. Values are real.
BallFunction epsilon_star(const BallFunction& u);

/// ((1/#S(o,n)) sum over S(o,n) of |u|^r)^(1/r); r = inf takes the max.
double sphere_lr_average(const BallFunction& u, int n, double r);

/// A level-maximal norm together with the level attaining it, reported so a
/// reader can judge whether the truncation depth was adequate.
struct HardyNorm {
    double value;
    int argmax_level;
};

/// max over n <= depth of phi(n)^(-1) sphere_lr_average(u, n, r), where phi
/// is the positive radial profile at z = i delta_p. r = inf uses sphere max.
HardyNorm hardy_norm_p(const BallFunction& u, const LebesgueIndex& li, double r);

/// max over n <= depth of q^(n/2) sphere_lr_average(u, n, r).
HardyNorm hardy_norm_star(const BallFunction& u, double r);

/// For each lambda: lambda * #{x in S(o,m) : eps*|u|(x) > lambda} <= sum of
/// |u| over S(o,m).
std::vector<bool> weak_type_check(const BallFunction& u, int m,
                                  std::span<const double> lambdas);

} // namespace treeharm
