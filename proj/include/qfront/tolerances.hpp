#pragma once

#include <cstddef>

namespace qfront {

/// Every numerical threshold used by the library, in one place.
///
/// The defaults are the values the frontier checks are calibrated against.
/// The CLI exposes the ones that matter for the staircase (eps_c, eps_p,
/// snap, krylov) as flags.
struct Tolerances {
    /// max |M - M^dagger| relative to max |M| for a matrix to count as Hermitian.
    double hermitian = 1e-12;
    /// Gram-Schmidt / Krylov: a new direction is dropped when its
    /// post-projection norm falls below this.
    double krylov = 1e-10;
    /// Infidelity accepted as complete charging.
    double eps_c = 1e-9;
    /// Block purity deficit accepted as a product factor.
    double eps_p = 1e-8;
    /// Relative distance to an integer at which eta^-2 (or n eta^2) snaps.
    double snap = 1e-9;
    /// Relative time accuracy of the charging-time refinement.
    double time_refine = 1e-10;
    /// Grid-minimum infidelity below which a candidate is refined.
    double capture_band = 0.25;
    /// Central-difference step for block speeds, relative to T.
    double fd_step = 1e-6;

    std::size_t charging_grid = 2048;
    std::size_t depth_samples = 201;
    std::size_t quadrature_points = 257;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Largest qubit count handled with dense 2^n x 2^n operators.
inline constexpr int kMaxDenseQubits = 12;

}  // namespace qfront
