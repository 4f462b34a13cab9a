#pragma once

// Numerical verification of the speed-depth frontier: saturation by balanced
// cluster flips, the upper bound on randomized product-block orbits, spectator
// invariance of the speed-limit times, orbit geometry, and the integer duality
// between eta_max and the certified depth.
//
// Every check records what it measured against what it expected, so a failure
// can be reported with the offending instance instead of aborting the sweep.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfront/depth.hpp"
#include "qfront/dynamics.hpp"
#include "qfront/frontier.hpp"
#include "qfront/qsl.hpp"

namespace qfront::frontier {

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

/// |measured - expected| <= tol * |expected|
Check relative_check(std::string name, double measured, double expected, double tol);
Check absolute_check(std::string name, double measured, double expected, double tol);
/// measured <= bound + tol
Check upper_check(std::string name, double measured, double bound, double tol);
Check exact_check(std::string name, std::int64_t measured, std::int64_t expected);

struct SaturationOptions {
    double T = 1.0;
    Tolerances tol = kDefaultTolerances;
};

struct SaturationReport {
    int n = 0;
    int m = 0;
    double g = 0.0;
    double T = 0.0;
    std::optional<dynamics::ChargingEvent> event;
    qsl::QslReport qsl;
    depth::DepthProfile depth;
    std::optional<Certificate> certificate;
    std::vector<Check> checks;

    bool pass() const;
};

/// Simulates the balanced cluster flip H_m on n qubits and checks the
/// saturation identities: charging at pi/(2g), delta_h = g sqrt(m),
/// e_ml = m g, eta = 1/sqrt(m), Ent[U] = ceil(n/m) = certified depth.
SaturationReport verify_saturation(int n, int m, const SaturationOptions& options = {});

struct FleetOptions {
    double T = 1.0;
    /// Block couplings are (2a+1) pi / (2T) with a uniform in 0..max_half_flip_index.
    int max_half_flip_index = 3;
    double spectator_probability = 0.5;
    std::size_t depth_samples = 65;
    Tolerances tol = kDefaultTolerances;
};

struct FleetTrial {
    int trial = 0;
    std::vector<int> half_flip_index;  ///< a_mu per block
    bool spectator = false;
    bool charged = false;
    double t_charge = 0.0;
    double eta = 0.0;
    double tau_ml_ratio = 0.0;  ///< tau_ml / T
    int ent_u = 0;
    std::int64_t depth_certified = 0;
    std::vector<Check> checks;

    bool pass() const;
};

struct FleetReport {
    int n = 0;
    int m = 0;
    int trials = 0;
    std::uint64_t seed = 0;
    int charged = 0;
    int eta_bound = 0;        ///< eta <= 1/sqrt(m) + 1e-9
    int ml_bound = 0;         ///< tau_ml / T <= 1/m + 1e-9
    int witness_sound = 0;    ///< ent_u >= certified depth
    int endpoints_product = 0;
    int spectator_trials = 0;
    int spectator_invariant = 0;
    int equal_trials = 0;     ///< all a_mu equal: saturation expected
    int equal_saturated = 0;
    int unequal_trials = 0;   ///< some a_mu differ: strict inequality expected
    int unequal_strict = 0;
    double max_eta_excess = -1.0;  ///< max of eta - 1/sqrt(m)
    double max_ml_excess = -1.0;   ///< max of tau_ml/T - 1/m
    std::vector<FleetTrial> violations;

    bool pass() const { return violations.empty(); }
};

/// Randomized product-block orbits: each block of a balanced m-partition flips
/// with its own odd multiple of pi/(2T), optionally with a random Hermitian
/// term on the block space orthogonal to span{D, U}. Trials are independent
/// (one RNG stream per trial) and run in parallel; the merged report does
/// not depend on the thread count.
FleetReport randomized_product_fleet(int n, int m, int trials, std::uint64_t seed, const FleetOptions& options = {});

/// One fleet trial, exposed for reproducibility checks.
FleetTrial run_fleet_trial(int n, int m, int trial, std::uint64_t seed, const FleetOptions& options = {});

struct SpectatorCase {
    int index = 0;
    int n = 0;
    bool charging = false;
    std::size_t extra_levels = 0;
    double max_relative_change = 0.0;
    std::vector<Check> checks;

    bool pass() const;
};

struct SpectatorReport {
    std::vector<SpectatorCase> cases;
    int passed = 0;
    bool pass() const { return passed == static_cast<int>(cases.size()); }
};

/// Random (H, extra levels) pairs: half are product-block charging
/// Hamiltonians, half are dense random Hermitian matrices. At least one extra
/// level always lies below the spectrum of H. tau_mt, tau_ml and tau_qsl must
/// agree within `rel_tol`.
SpectatorReport spectator_invariance(int cases, std::uint64_t seed, double rel_tol = 1e-10);

struct GeometryReport {
    int orbits = 0;
    int speed_constant = 0;
    int path_length_ok = 0;
    int product_orbits = 0;
    int additivity_ok = 0;
    int block_path_ok = 0;
    double worst_speed_variation = 0.0;     ///< relative
    double worst_path_length_error = 0.0;   ///< relative
    double worst_additivity_error = 0.0;    ///< |v^2 - sum v_a^2| / v^2
    double worst_block_path_deficit = 0.0;  ///< max of pi/2 - block path length
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

/// Speed constancy (64 times), path length vs delta_h T, speed additivity and
/// per-block path lengths on cluster flips and randomized product orbits for
/// n <= n_max, plus dense random Hamiltonians for the first two checks.
GeometryReport geometry_checks(int n_max, std::uint64_t seed);

struct DualityReport {
    int pairs = 0;
    int bound_ok = 0;     ///< certified_depth(n, eta_max(n,k)) <= k
    int equality_ok = 0;  ///< equality when k | n or k >= n
    int equality_cases = 0;
    int inverse_ok = 0;   ///< eta_max(n, D(eta)) >= eta on the grid
    int ordering_ok = 0;  ///< D(eta) >= ceil(n eta^2) on the grid
    int grid_points = 0;
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

/// Pure integer checks for 1 <= k <= n <= n_max and a grid on (0, 1].
DualityReport integer_duality(int n_max, std::size_t grid_points);

}  // namespace qfront::frontier
