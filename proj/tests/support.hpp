#pragma once

// Helpers shared by the unit tests: independent oracles and small generators.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qfront/model.hpp"
#include "qfront/numkit.hpp"
#include "qfront/random.hpp"

namespace qfront::testing {

/// exp(-i H t) psi by a Taylor series with scaling: the step is chosen so that
/// |H| dt <= 0.5 and the series is summed to machine precision.
inline Ket taylor_evolve(const ComplexMatrix& h, const Ket& psi, double t) {
    const double scale = std::max(frobenius_norm(h) * std::abs(t), 1e-300);
    const int steps = std::max(1, static_cast<int>(std::ceil(scale / 0.5)));
    const double dt = t / steps;
    Ket cur = psi;
    for (int s = 0; s < steps; ++s) {
        Ket term = cur;
        Ket sum = cur;
        for (int k = 1; k < 60; ++k) {
            term = matvec(h, term);
            for (auto& z : term) {
                z *= Complex(0.0, -dt) / static_cast<double>(k);
            }
            sum = axpy(sum, 1.0, term);
            if (norm(term) < 1e-18) {
                break;
            }
        }
        cur = std::move(sum);
    }
    return cur;
}

/// 1 - |<a|b>|^2 for normalized a, b.
inline double infidelity(const Ket& a, const Ket& b) {
    return 1.0 - std::norm(inner(a, b));
}

inline Ket ghz(int n) {
    Ket psi(std::size_t{1} << n);
    psi[0] = std::numbers::sqrt2 / 2.0;
    psi[psi.dim() - 1] = std::numbers::sqrt2 / 2.0;
    return psi;
}

/// Ket from per-qubit single-qubit states, qubit 1 first.
inline Ket product_of(const std::vector<Ket>& qubits) {
    Ket psi{1.0};
    for (const auto& q : qubits) {
        psi = kron(psi, q);
    }
    return psi;
}

inline const Ket kDown{1.0, 0.0};
inline const Ket kUp{0.0, 1.0};

}  // namespace qfront::testing
