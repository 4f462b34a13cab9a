#pragma once

// Cyclic (Krylov) support of an orbit and the Mandelstam-Tamm /
// Margolus-Levitin speed-limit report evaluated on it.

#include <optional>

#include "qfront/dynamics.hpp"
#include "qfront/numkit.hpp"

namespace qfront::qsl {

struct CyclicFrame {
    ComplexMatrix basis;         ///< dim x dim_k, orthonormal columns spanning the orbit
    ComplexMatrix restricted_h;  ///< basis^dagger H basis
    std::vector<double> restricted_spectrum;
    double e_min_k = 0.0;
    std::size_t dim_k = 0;
};

CyclicFrame cyclic_frame(const HermitianOperator& h, const Ket& psi0, double tol = kDefaultTolerances.krylov);

/// Speed-limit times of an orbit. When the orbit is stationary (dim_k == 1,
/// zero energy spread or no energy above the restricted ground level) the
/// report is flagged degenerate and carries no eta.
struct QslReport {
    double delta_h = 0.0;
    double e_ml = 0.0;
    double tau_mt = 0.0;
    double tau_ml = 0.0;
    double tau_qsl = 0.0;
    std::optional<double> t_charge;
    std::optional<double> eta;
    std::size_t dim_k = 0;
    bool degenerate = false;
};

/// Times only; no charging event attached.
QslReport qsl_bounds(const HermitianOperator& h, const Ket& psi0, double tol = kDefaultTolerances.krylov);

/// delta_h = fs_speed(H, psi0), e_ml = <psi0|H|psi0> - E_min on the cyclic
/// support, tau_mt = pi/(2 delta_h), tau_ml = pi/(2 e_ml),
/// tau_qsl = max(tau_mt, tau_ml), eta = tau_qsl / T.
QslReport qsl_report(const HermitianOperator& h, const Ket& psi0, const dynamics::ChargingEvent& event,
                     double tol = kDefaultTolerances.krylov);

}  // namespace qfront::qsl
