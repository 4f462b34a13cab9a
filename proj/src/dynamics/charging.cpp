#include <algorithm>
#include <cmath>

#include "qfront/dynamics.hpp"

namespace qfront::dynamics {

namespace {

// Bisection on the fidelity derivative inside [a, b] where it changes from
// positive to non-positive.
double refine_maximum(const SpectralAmplitude& amp, double a, double b, double rel_tol) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (a + b);
        if (b - a <= rel_tol * std::abs(mid) || mid == a || mid == b) {
            break;
        }
        const double fm = amp.fidelity_derivative(mid);
        if (fm > 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    // Pick whichever end sits higher; both are within tolerance of the root.
    return amp.fidelity(a) >= amp.fidelity(b) ? a : b;
}

}  // namespace

ChargingOutcome find_complete_charging_time(const Propagator& prop, const Ket& target, double t_max,
                                            const ChargingOptions& options) {
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw ValidationError("t_max must be positive and finite");
    }
    if (std::abs(norm(target) - 1.0) > 1e-10) {
        throw ValidationError("charging target must be normalized");
    }
    if (options.grid < 2) {
        throw ValidationError("charging grid needs at least two points");
    }
    const SpectralAmplitude amp = prop.amplitude_onto(target);
    const std::size_t g = options.grid;
    std::vector<double> t(g);
    std::vector<double> infid(g);
    std::vector<double> slope(g);
    for (std::size_t i = 0; i < g; ++i) {
        t[i] = t_max * static_cast<double>(i) / static_cast<double>(g - 1);
        infid[i] = 1.0 - amp.fidelity(t[i]);
        slope[i] = amp.fidelity_derivative(t[i]);
    }

    // Refinement is far tighter than any requested relative accuracy.
    const double rel = std::min(options.time_refine, 1e-13);
    NotCharged best{t[g - 1], infid[g - 1]};
    for (std::size_t i = 1; i < g; ++i) {
        if (infid[i] < best.best_infidelity) {
            best = {t[i], infid[i]};
        }
    }

    for (std::size_t i = 0; i + 1 < g; ++i) {
        if (!(slope[i] > 0.0 && slope[i + 1] <= 0.0)) {
            continue;
        }
        if (std::min(infid[i], infid[i + 1]) > options.capture_band) {
            continue;
        }
        const double tc = refine_maximum(amp, t[i], t[i + 1], rel);
        if (tc <= 0.0) {
            continue;
        }
        const Complex a = amp.value(tc);
        const double inf = std::max(0.0, 1.0 - std::norm(a));
        if (inf < best.best_infidelity) {
            best = {tc, inf};
        }
        if (inf <= options.eps_c) {
            return ChargingEvent{tc, std::arg(a), inf};
        }
    }
    // Still rising at the end of the window.
    if (slope[g - 1] > 0.0 && infid[g - 1] <= options.eps_c) {
        const Complex a = amp.value(t[g - 1]);
        return ChargingEvent{t[g - 1], std::arg(a), std::max(0.0, 1.0 - std::norm(a))};
    }
    return best;
}

ChargingOutcome find_complete_charging_time(const HermitianOperator& h, const Ket& psi0, const Ket& target,
                                            double t_max, const ChargingOptions& options) {
    return find_complete_charging_time(Propagator(h, psi0), target, t_max, options);
}

}  // namespace qfront::dynamics
