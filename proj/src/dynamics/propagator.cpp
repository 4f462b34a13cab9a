#include <cmath>

#include "qfront/dynamics.hpp"

namespace qfront::dynamics {

SpectralAmplitude::SpectralAmplitude(std::vector<double> energies, std::vector<Complex> coeffs)
    : energies_(std::move(energies)), coeffs_(std::move(coeffs)) {
    if (energies_.size() != coeffs_.size()) {
        throw ValidationError("spectral amplitude: energy and coefficient counts differ");
    }
}

Complex SpectralAmplitude::value(double t) const {
    Complex s{};
    for (std::size_t j = 0; j < energies_.size(); ++j) {
        s += coeffs_[j] * std::polar(1.0, -energies_[j] * t);
    }
    return s;
}

Complex SpectralAmplitude::derivative(double t) const {
    Complex s{};
    for (std::size_t j = 0; j < energies_.size(); ++j) {
        s += Complex(0.0, -energies_[j]) * coeffs_[j] * std::polar(1.0, -energies_[j] * t);
    }
    return s;
}

double SpectralAmplitude::fidelity_derivative(double t) const {
    return 2.0 * (std::conj(value(t)) * derivative(t)).real();
}

Propagator::Propagator(const HermitianOperator& h, const Ket& psi0, PropagatorMode mode, double krylov_tol)
    : mode_(mode) {
    if (psi0.dim() != h.dim()) {
        throw ValidationError("propagator: state dimension " + std::to_string(psi0.dim()) +
                              " does not match operator dimension " + std::to_string(h.dim()));
    }
    if (!psi0.all_finite()) {
        throw ValidationError("propagator: initial state has non-finite entries");
    }
    if (mode == PropagatorMode::full) {
        Eigensystem es = hermitian_eigendecomposition(h);
        modes_ = std::move(es.vectors);
        energies_ = std::move(es.values);
        weights_.resize(energies_.size());
        for (std::size_t j = 0; j < energies_.size(); ++j) {
            Complex s{};
            for (std::size_t i = 0; i < psi0.dim(); ++i) {
                s += std::conj(modes_(i, j)) * psi0[i];
            }
            weights_[j] = s;
        }
        return;
    }

    const KrylovBasis kb = krylov_basis(h.matrix(), psi0, krylov_tol);
    const Eigensystem es = hermitian_eigendecomposition(kb.restricted);
    modes_ = matmul(kb.basis, es.vectors);
    energies_ = es.values;
    // psi0 = |psi0| q_0, so its Krylov coordinates are |psi0| e_0.
    const double scale = norm(psi0);
    weights_.resize(energies_.size());
    for (std::size_t j = 0; j < energies_.size(); ++j) {
        weights_[j] = std::conj(es.vectors(0, j)) * scale;
    }
}

Ket Propagator::state_at(double t) const {
    const std::size_t d = dim();
    const std::size_t r = rank();
    std::vector<Complex> c(r);
    for (std::size_t j = 0; j < r; ++j) {
        c[j] = weights_[j] * std::polar(1.0, -energies_[j] * t);
    }
    Ket out(d);
#pragma omp parallel for schedule(static) if (d * r > (1u << 15))
    for (std::size_t i = 0; i < d; ++i) {
        const Complex* row = modes_.row(i).data();
        Complex s{};
        for (std::size_t j = 0; j < r; ++j) {
            s += row[j] * c[j];
        }
        out[i] = s;
    }
    return out;
}

std::vector<Ket> Propagator::states_at(std::span<const double> times) const {
    std::vector<Ket> out(times.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < times.size(); ++k) {
        out[k] = state_at(times[k]);
    }
    return out;
}

SpectralAmplitude Propagator::amplitude_onto(const Ket& target) const {
    if (target.dim() != dim()) {
        throw ValidationError("target dimension does not match the propagator");
    }
    std::vector<Complex> coeffs(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
        Complex overlap{};
        for (std::size_t i = 0; i < dim(); ++i) {
            overlap += std::conj(target[i]) * modes_(i, j);
        }
        coeffs[j] = overlap * weights_[j];
    }
    return SpectralAmplitude(energies_, std::move(coeffs));
}

Ket evolve(const HermitianOperator& h, const Ket& psi0, double t, PropagatorMode mode) {
    return Propagator(h, psi0, mode).state_at(t);
}

}  // namespace qfront::dynamics
