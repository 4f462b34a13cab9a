#pragma once

// Time evolution under a time-independent Hamiltonian, complete-charging
// detection, and Fubini-Study geometry of the resulting orbit.

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qfront/model.hpp"
#include "qfront/numkit.hpp"

namespace qfront::dynamics {

enum class PropagatorMode {
    /// Eigendecomposition of H restricted to the Krylov space of psi0. Exact on
    /// the orbit, and the only practical choice near the dense size limit.
    cyclic,
    /// Eigendecomposition of the full operator.
    full,
};

/// <target|psi(t)> as a finite sum of c_j exp(-i E_j t).
class SpectralAmplitude {
public:
    SpectralAmplitude(std::vector<double> energies, std::vector<Complex> coeffs);

    Complex value(double t) const;
    Complex derivative(double t) const;
    double fidelity(double t) const { return std::norm(value(t)); }
    /// d/dt |<target|psi(t)>|^2
    double fidelity_derivative(double t) const;

private:
    std::vector<double> energies_;
    std::vector<Complex> coeffs_;
};

/// psi(t) = e^{-iHt} psi0 through a spectral decomposition computed once.
/// Immutable after construction; evaluations at different times may run
/// concurrently.
class Propagator {
public:
    Propagator(const HermitianOperator& h, const Ket& psi0, PropagatorMode mode = PropagatorMode::cyclic,
               double krylov_tol = kDefaultTolerances.krylov);

    std::size_t dim() const noexcept { return modes_.rows(); }
    /// Number of spectral components carried (Krylov dimension in cyclic mode).
    std::size_t rank() const noexcept { return energies_.size(); }
    PropagatorMode mode() const noexcept { return mode_; }
    std::span<const double> energies() const noexcept { return energies_; }

    Ket state_at(double t) const;
    std::vector<Ket> states_at(std::span<const double> times) const;
    SpectralAmplitude amplitude_onto(const Ket& target) const;

private:
    PropagatorMode mode_;
    ComplexMatrix modes_;  // dim x rank, orthonormal eigenvectors
    std::vector<double> energies_;
    std::vector<Complex> weights_;  // <mode_j|psi0>
};

Ket evolve(const HermitianOperator& h, const Ket& psi0, double t, PropagatorMode mode = PropagatorMode::cyclic);

struct ChargingEvent {
    double time = 0.0;        ///< T
    double phase = 0.0;       ///< <target|psi(T)> = |.| e^{i phase}
    double infidelity = 0.0;  ///< 1 - |<target|psi(T)>|^2
};

struct NotCharged {
    double best_time = 0.0;
    double best_infidelity = 1.0;
};

using ChargingOutcome = std::variant<ChargingEvent, NotCharged>;

struct ChargingOptions {
    double eps_c = kDefaultTolerances.eps_c;
    std::size_t grid = kDefaultTolerances.charging_grid;
    double time_refine = kDefaultTolerances.time_refine;
    double capture_band = kDefaultTolerances.capture_band;
};

/// First time in (0, t_max] at which the orbit reaches `target` up to a global
/// phase. The fidelity is scanned on a uniform grid; every grid interval in
/// which d|<target|psi>|^2/dt turns from positive to non-positive and whose
/// endpoints lie within the capture band is refined by bisection on the
/// derivative. The first refined maximum with infidelity <= eps_c wins.
ChargingOutcome find_complete_charging_time(const Propagator& prop, const Ket& target, double t_max,
                                            const ChargingOptions& options = {});
ChargingOutcome find_complete_charging_time(const HermitianOperator& h, const Ket& psi0, const Ket& target,
                                            double t_max, const ChargingOptions& options = {});

/// Fubini-Study speed sqrt(<H^2> - <H>^2), evaluated as |(H - <H>) psi|.
double fs_speed(const HermitianOperator& h, const Ket& psi);

/// Composite Simpson estimate of the integral of fs_speed over [0, T].
/// An even point count is bumped to the next odd one.
double path_length(const HermitianOperator& h, const Ket& psi0, double T,
                   std::size_t quadrature_points = kDefaultTolerances.quadrature_points);

/// Thrown by block_speeds when the orbit is not product across the partition.
class NonProductSample : public ValidationError {
public:
    NonProductSample(double time, const std::string& what) : ValidationError(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

struct BlockSpeedProfile {
    std::vector<double> times;
    /// speeds[block][sample]
    std::vector<std::vector<double>> speeds;
    /// Simpson integral of each block speed over [0, T].
    std::vector<double> path_lengths;

    /// sum over blocks of speed^2 at sample i
    double speed_squared_sum(std::size_t i) const;
};

struct BlockSpeedOptions {
    std::size_t samples = 65;
    double eps_p = kDefaultTolerances.eps_p;
    /// Central-difference step relative to T.
    double fd_step = kDefaultTolerances.fd_step;
};

/// Per-block Fubini-Study speeds along a product trajectory, from central
/// differences of the extracted block states (phase-aligned to the centre
/// point before differencing).
BlockSpeedProfile block_speeds(const Propagator& prop, const model::BlockPartition& partition, double T,
                               const BlockSpeedOptions& options = {});

struct TrajectorySample {
    double t = 0.0;
    double fidelity = 0.0;
    double fs_speed = 0.0;
    double energy = 0.0;
};

/// Charging curve on a uniform grid over [0, t_end]: fidelity to `target`,
/// Fubini-Study speed and stored energy <battery>.
std::vector<TrajectorySample> sample_trajectory(const HermitianOperator& h, const Propagator& prop,
                                                const Ket& target, const HermitianOperator& battery, double t_end,
                                                std::size_t points);

}  // namespace qfront::dynamics
