#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "treeharm/report.hpp"
#include "treeharm/rng.hpp"
#include "treeharm/spectral.hpp"

namespace treeharm {

/// Rejected experiment parameters; the CLI maps this to exit code 2.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    int q = 2;
    int depth = 12;
    int level = 2; // boundary data lives in K_level(Omega)
    std::vector<cplx> z_grid; // empty -> per-suite default
    std::vector<double> p_grid = {1.0, 4.0 / 3.0, 2.0};
    std::vector<double> r_grid = {1.5, 2.0, 4.0};
    int trials = 5;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv";
};

/// Shared invariants: q >= 2, 1 <= level <= depth, trials >= 1, grids
/// non-empty, format csv|json. Throws config_error.
void validate(const ExperimentConfig& cfg);

/// {tau/8, tau/6, tau/5, 3 tau/8}: real, away from the (tau/2)Z poles.
std::vector<cplx> default_z_grid(int q);

/// Per p in p_grid and real alpha in z_grid (default {0}): boundary-to-tree
/// norm comparison at z = alpha + i delta_{p'} plus eigen residuals and a
/// radial-convergence table. alpha must lie in (tau/2)Z when p = 2.
std::vector<ResultRow> suite_theorem_p(const ExperimentConfig& cfg);

/// Per real generic z and r in (1, inf): ratios |c(z)|^-1-normalized
/// q^(n/2)-norm over boundary norm, their z-independent bracket, and the
/// pointwise chain bound through the martingale maximal function.
std::vector<ResultRow> suite_theorem_star(const ExperimentConfig& cfg);

/// Averaged-inversion error tables, closed-form vs pair-sum oracle equality,
/// coefficient identities, and the constant-data rate bracket.
std::vector<ResultRow> suite_inversion(const ExperimentConfig& cfg);

/// Normalized radial convergence tables for the z = alpha + i delta_{p'}
/// families on a fixed sector indicator; asserts the p=1, r=2 decay.
std::vector<ResultRow> suite_radial(const ExperimentConfig& cfg);

/// Evaluation tables for gamma, c, phi with cross-check rows; pole rows are
/// marked and skipped.
std::vector<ResultRow> table_special_functions(const ExperimentConfig& cfg);

/// Oracle-equality battery at q in {2,3}, depth 10; only the seed is taken
/// from the config. Designed to finish well under a minute.
std::vector<ResultRow> suite_selftest(const ExperimentConfig& cfg);

} // namespace treeharm
