#include <algorithm>
#include <map>

#include "qfront/depth.hpp"

namespace qfront::depth {

DepthProfile trajectory_depth(const dynamics::Propagator& prop, int n, double T, const DepthOptions& options) {
    if (options.samples < 3) {
        throw ValidationError("trajectory_depth needs at least 3 samples");
    }
    if (!(T > 0.0)) {
        throw ValidationError("trajectory_depth: T must be positive");
    }
    if (prop.dim() != (std::size_t{1} << n)) {
        throw ValidationError("trajectory_depth: propagator dimension does not match n");
    }
    const std::size_t s = options.samples;
    std::vector<double> times(s);
    for (std::size_t i = 0; i < s; ++i) {
        times[i] = T * static_cast<double>(i) / static_cast<double>(s - 1);
    }
    std::vector<Factorization> facts(s);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < s; ++i) {
        facts[i] = finest_factorization(prop.state_at(times[i]), n, options.eps_p);
    }

    // Time-ordered samples; refinement adds midpoints around the witness.
    std::map<double, Factorization> samples;
    for (std::size_t i = 0; i < s; ++i) {
        samples.emplace(times[i], std::move(facts[i]));
    }
    auto witness = [&] {
        auto best = samples.begin();
        for (auto it = samples.begin(); it != samples.end(); ++it) {
            if (it->second.depth > best->second.depth) {
                best = it;
            }
        }
        return best;
    };
    for (int level = 0; level < options.refine_levels; ++level) {
        const auto w = witness();
        std::vector<double> probes;
        if (w != samples.begin()) {
            probes.push_back(0.5 * (std::prev(w)->first + w->first));
        }
        if (std::next(w) != samples.end()) {
            probes.push_back(0.5 * (w->first + std::next(w)->first));
        }
        for (const double t : probes) {
            samples.emplace(t, finest_factorization(prop.state_at(t), n, options.eps_p));
        }
    }

    DepthProfile out;
    const auto w = witness();
    out.ent_u = w->second.depth;
    out.witness_time = w->first;
    for (auto& [t, f] : samples) {
        out.times.push_back(t);
        out.depths.push_back(f.depth);
        out.partitions.push_back(std::move(f.partition));
    }
    return out;
}

DepthProfile trajectory_depth(const HermitianOperator& h, const Ket& psi0, double T, const DepthOptions& options) {
    const int n = qubit_count(psi0.dim());
    return trajectory_depth(dynamics::Propagator(h, psi0), n, T, options);
}

}  // namespace qfront::depth
