#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qfront/depth.hpp"
#include "qfront/dynamics.hpp"

namespace qfront::dynamics {

namespace {

std::vector<double> uniform_times(double T, std::size_t points) {
    std::vector<double> t(points);
    for (std::size_t i = 0; i < points; ++i) {
        t[i] = T * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return t;
}

}  // namespace

double fs_speed(const HermitianOperator& h, const Ket& psi) {
    if (psi.dim() != h.dim()) {
        throw ValidationError("fs_speed: state and operator dimensions differ");
    }
    const double nrm2 = std::norm(norm(psi));
    if (nrm2 == 0.0) {
        throw ValidationError("fs_speed: zero state");
    }
    const Ket hpsi = matvec(h.matrix(), psi);
    const double mean = inner(psi, hpsi).real() / nrm2;
    double s = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        s += std::norm(hpsi[i] - mean * psi[i]);
    }
    return std::sqrt(s / nrm2);
}

double path_length(const HermitianOperator& h, const Ket& psi0, double T, std::size_t quadrature_points) {
    if (!(T > 0.0)) {
        throw ValidationError("path_length: T must be positive");
    }
    const std::size_t points = std::max<std::size_t>(3, quadrature_points | 1u);
    const Propagator prop(h, psi0);
    const auto times = uniform_times(T, points);
    std::vector<double> speed(points);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points; ++i) {
        speed[i] = fs_speed(h, prop.state_at(times[i]));
    }
    return simpson(speed, T / static_cast<double>(points - 1));
}

double BlockSpeedProfile::speed_squared_sum(std::size_t i) const {
    double s = 0.0;
    for (const auto& block : speeds) {
        s += block.at(i) * block.at(i);
    }
    return s;
}

BlockSpeedProfile block_speeds(const Propagator& prop, const model::BlockPartition& partition, double T,
                               const BlockSpeedOptions& options) {
    if (!(T > 0.0)) {
        throw ValidationError("block_speeds: T must be positive");
    }
    const int n = partition.n();
    if (prop.dim() != (std::size_t{1} << n)) {
        throw ValidationError("block_speeds: partition does not match the propagator dimension");
    }
    const std::size_t points = std::max<std::size_t>(3, options.samples | 1u);
    const double delta = options.fd_step * T;
    const std::size_t nb = partition.block_count();

    BlockSpeedProfile out;
    out.times = uniform_times(T, points);
    out.speeds.assign(nb, std::vector<double>(points, 0.0));

    double first_failure = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points; ++i) {
        const double t = out.times[i];
        const Ket centre = prop.state_at(t);
        const Ket plus = prop.state_at(t + delta);
        const Ket minus = prop.state_at(t - delta);
        bool product = true;
        for (const Ket* s : {&centre, &plus, &minus}) {
            product = product && depth::is_product_across(*s, partition, options.eps_p).product;
        }
        if (!product) {
#pragma omp critical(qfront_block_speed_failure)
            first_failure = std::min(first_failure, t);
            continue;
        }
        for (std::size_t b = 0; b < nb; ++b) {
            const auto& block = partition.block(b);
            const Ket phi = depth::extract_block_state(centre, block, n, options.eps_p);
            Ket phi_p = depth::extract_block_state(plus, block, n, options.eps_p);
            Ket phi_m = depth::extract_block_state(minus, block, n, options.eps_p);
            for (Ket* side : {&phi_p, &phi_m}) {
                const Complex ov = inner(phi, *side);
                const Complex gauge = std::abs(ov) > 0.0 ? std::conj(ov) / std::abs(ov) : Complex(1.0);
                for (auto& z : *side) {
                    z *= gauge;
                }
            }
            Ket dphi(phi.dim());
            for (std::size_t k = 0; k < phi.dim(); ++k) {
                dphi[k] = (phi_p[k] - phi_m[k]) / (2.0 * delta);
            }
            const double v2 = std::norm(norm(dphi)) - std::norm(inner(phi, dphi));
            out.speeds[b][i] = std::sqrt(std::max(0.0, v2));
        }
    }
    if (std::isfinite(first_failure)) {
        std::ostringstream os;
        os << "trajectory is not product across " << partition.to_string() << " at t = " << first_failure;
        throw NonProductSample(first_failure, os.str());
    }

    const double h = T / static_cast<double>(points - 1);
    for (const auto& block : out.speeds) {
        out.path_lengths.push_back(simpson(block, h));
    }
    return out;
}

std::vector<TrajectorySample> sample_trajectory(const HermitianOperator& h, const Propagator& prop,
                                                const Ket& target, const HermitianOperator& battery, double t_end,
                                                std::size_t points) {
    if (points < 2) {
        throw ValidationError("trajectory needs at least two points");
    }
    if (battery.dim() != h.dim() || target.dim() != h.dim()) {
        throw ValidationError("trajectory: operator and state dimensions differ");
    }
    const auto times = uniform_times(t_end, points);
    std::vector<TrajectorySample> out(points);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points; ++i) {
        const Ket psi = prop.state_at(times[i]);
        out[i] = {times[i], std::norm(inner(target, psi)), fs_speed(h, psi),
                  expectation(battery.matrix(), psi).real()};
    }
    return out;
}

}  // namespace qfront::dynamics
