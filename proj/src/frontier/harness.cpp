#include "qfront/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfront/model.hpp"
#include "qfront/random.hpp"

namespace qfront::frontier {

using std::numbers::pi;

Check relative_check(std::string name, double measured, double expected, double tol) {
    const bool ok = std::abs(measured - expected) <= tol * std::abs(expected);
    return {std::move(name), ok, measured, expected, tol};
}

Check absolute_check(std::string name, double measured, double expected, double tol) {
    return {std::move(name), std::abs(measured - expected) <= tol, measured, expected, tol};
}

Check upper_check(std::string name, double measured, double bound, double tol) {
    return {std::move(name), measured <= bound + tol, measured, bound, tol};
}

Check exact_check(std::string name, std::int64_t measured, std::int64_t expected) {
    return {std::move(name), measured == expected, static_cast<double>(measured), static_cast<double>(expected), 0.0};
}

namespace {

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

dynamics::ChargingOptions charging_options(const Tolerances& tol) {
    return {tol.eps_c, tol.charging_grid, tol.time_refine, tol.capture_band};
}

// Random Hermitian term on a block's space orthogonal to span{D, U},
// tensored with the identity elsewhere. Zero for single-qubit blocks.
ComplexMatrix in_block_spectator(const std::vector<int>& block, int n, random::Rng& rng, double scale) {
    const std::size_t local = std::size_t{1} << block.size();
    const std::size_t dim = std::size_t{1} << n;
    if (local <= 2) {
        return ComplexMatrix(dim, dim);
    }
    ComplexMatrix l = random::random_hermitian(local, rng, scale);
    for (std::size_t i = 0; i < local; ++i) {
        l(0, i) = l(i, 0) = 0.0;
        l(local - 1, i) = l(i, local - 1) = 0.0;
    }
    return model::embed_block_operator(l, block, n);
}

void add_into(ComplexMatrix& acc, const ComplexMatrix& term) {
    for (std::size_t i = 0; i < acc.entries().size(); ++i) {
        acc.entries()[i] += term.entries()[i];
    }
}

struct ProductBlockOrbit {
    model::BlockPartition partition;
    std::vector<int> half_flip_index;
    HermitianOperator bare;  // block flips only
    HermitianOperator full;  // with in-block spectator terms when requested
};

ProductBlockOrbit make_product_block_orbit(model::BlockPartition partition, double T, int max_index,
                                           bool spectators, random::Rng& rng) {
    std::uniform_int_distribution<int> pick(0, max_index);
    std::vector<int> a(partition.block_count());
    std::vector<double> g(partition.block_count());
    for (std::size_t mu = 0; mu < a.size(); ++mu) {
        a[mu] = pick(rng);
        g[mu] = (2.0 * a[mu] + 1.0) * pi / (2.0 * T);
    }
    HermitianOperator bare = model::block_flip_hamiltonian(partition, g);
    ComplexMatrix h = bare.matrix();
    if (spectators) {
        for (const auto& block : partition.blocks()) {
            add_into(h, in_block_spectator(block, partition.n(), rng, pi / (2.0 * T)));
        }
    }
    return {std::move(partition), std::move(a), std::move(bare), HermitianOperator(std::move(h))};
}

}  // namespace

bool SaturationReport::pass() const {
    return all_pass(checks);
}

SaturationReport verify_saturation(int n, int m, const SaturationOptions& options) {
    model::require_dense_size(n);
    SaturationReport r;
    r.n = n;
    r.m = m;
    auto spec = model::ClusterFlipSpec::from_time(model::balanced_partition(n, m), options.T);
    r.g = spec.g;
    r.T = spec.T;
    const HermitianOperator h = model::cluster_flip_hamiltonian(spec);
    const auto [down, up] = model::endpoint_states(n);
    const dynamics::Propagator prop(h, down, dynamics::PropagatorMode::cyclic, options.tol.krylov);

    const auto outcome =
        dynamics::find_complete_charging_time(prop, up, 2.0 * options.T, charging_options(options.tol));
    const auto* event = std::get_if<dynamics::ChargingEvent>(&outcome);
    r.checks.push_back({"charged", event != nullptr, event ? event->infidelity : 1.0, 0.0, options.tol.eps_c});
    if (event == nullptr) {
        return r;
    }
    r.event = *event;
    r.qsl = qsl::qsl_report(h, down, *event, options.tol.krylov);
    const double sm = std::sqrt(static_cast<double>(m));
    r.checks.push_back(relative_check("t_charge", event->time, pi / (2.0 * r.g), 1e-10));
    r.checks.push_back(relative_check("delta_h", r.qsl.delta_h, r.g * sm, 1e-10));
    r.checks.push_back(relative_check("e_ml", r.qsl.e_ml, m * r.g, 1e-10));
    r.checks.push_back(exact_check("dim_k", static_cast<std::int64_t>(r.qsl.dim_k), m + 1));
    r.checks.push_back(upper_check("mt_branch_active", r.qsl.tau_ml, r.qsl.tau_mt, 1e-12 * r.qsl.tau_mt));
    const double eta = r.qsl.eta.value_or(0.0);
    r.checks.push_back(absolute_check("eta", eta, 1.0 / sm, 1e-9));

    r.depth = depth::trajectory_depth(prop, n, event->time,
                                      {options.tol.depth_samples, options.tol.eps_p, 0});
    r.checks.push_back(exact_check("ent_u", r.depth.ent_u, ceil_div(n, m)));
    r.checks.push_back(exact_check("endpoint_depth_start", r.depth.depths.front(), 1));
    r.checks.push_back(exact_check("endpoint_depth_end", r.depth.depths.back(), 1));
    if (eta > 0.0 && eta <= 1.0 + options.tol.snap) {
        r.certificate = certified_depth(n, eta, options.tol.snap);
        r.checks.push_back(exact_check("certified_depth", r.certificate->depth_certified, r.depth.ent_u));
    } else {
        r.checks.push_back({"certified_depth", false, eta, 1.0 / sm, 0.0});
    }
    return r;
}

bool FleetTrial::pass() const {
    return all_pass(checks);
}

FleetTrial run_fleet_trial(int n, int m, int trial, std::uint64_t seed, const FleetOptions& options) {
    auto rng = random::make_rng(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m),
                                       static_cast<std::uint64_t>(trial)});
    const double T = options.T;
    const bool want_spectator = std::bernoulli_distribution(options.spectator_probability)(rng);
    auto partition = model::balanced_partition(n, m);
    const bool spectator = want_spectator && partition.max_block_size() >= 2;
    const auto orbit =
        make_product_block_orbit(std::move(partition), T, options.max_half_flip_index, spectator, rng);

    FleetTrial out;
    out.trial = trial;
    out.half_flip_index = orbit.half_flip_index;
    out.spectator = spectator;

    const auto [down, up] = model::endpoint_states(n);
    const dynamics::Propagator prop(orbit.full, down, dynamics::PropagatorMode::cyclic, options.tol.krylov);
    const auto copts = charging_options(options.tol);
    const auto outcome = dynamics::find_complete_charging_time(prop, up, 1.25 * T, copts);
    const auto* event = std::get_if<dynamics::ChargingEvent>(&outcome);
    out.charged = event != nullptr && event->time <= T * (1.0 + 1e-9);
    out.checks.push_back({"charged", out.charged, event ? event->time : 0.0, T, 1e-9});
    if (!out.charged) {
        return out;
    }
    out.t_charge = event->time;

    const auto report = qsl::qsl_report(orbit.full, down, *event, options.tol.krylov);
    out.eta = report.eta.value_or(0.0);
    out.tau_ml_ratio = report.tau_ml / event->time;
    const double sm = std::sqrt(static_cast<double>(m));
    out.checks.push_back(upper_check("eta_bound", out.eta, 1.0 / sm, 1e-9));
    out.checks.push_back(upper_check("ml_bound", out.tau_ml_ratio, 1.0 / m, 1e-9));

    const bool equal = std::adjacent_find(orbit.half_flip_index.begin(), orbit.half_flip_index.end(),
                                          std::not_equal_to<>()) == orbit.half_flip_index.end();
    if (equal) {
        out.checks.push_back(absolute_check("saturation_equal_blocks", out.eta, 1.0 / sm, 1e-9));
    } else {
        out.checks.push_back({"strict_unequal_blocks", out.eta < 1.0 / sm - 1e-9, out.eta, 1.0 / sm, 1e-9});
    }

    const auto profile =
        depth::trajectory_depth(prop, n, event->time, {options.depth_samples, options.tol.eps_p, 0});
    out.ent_u = profile.ent_u;
    if (out.eta > 0.0 && out.eta <= 1.0 + options.tol.snap) {
        out.depth_certified = certified_depth(n, out.eta, options.tol.snap).depth_certified;
    }
    out.checks.push_back({"witness_sound", out.depth_certified > 0 && out.ent_u >= out.depth_certified,
                          static_cast<double>(out.ent_u), static_cast<double>(out.depth_certified), 0.0});
    out.checks.push_back({"endpoints_product", profile.depths.front() == 1 && profile.depths.back() == 1,
                          static_cast<double>(std::max(profile.depths.front(), profile.depths.back())), 1.0, 0.0});

    if (spectator) {
        const dynamics::Propagator bare(orbit.bare, down, dynamics::PropagatorMode::cyclic, options.tol.krylov);
        const auto bare_outcome = dynamics::find_complete_charging_time(bare, up, 1.25 * T, copts);
        const auto* bare_event = std::get_if<dynamics::ChargingEvent>(&bare_outcome);
        double bare_eta = 0.0;
        if (bare_event != nullptr) {
            bare_eta = qsl::qsl_report(orbit.bare, down, *bare_event, options.tol.krylov).eta.value_or(0.0);
        }
        out.checks.push_back(relative_check("spectator_eta", out.eta, bare_eta, 1e-10));
    }
    return out;
}

FleetReport randomized_product_fleet(int n, int m, int trials, std::uint64_t seed, const FleetOptions& options) {
    model::require_dense_size(n);
    if (m < 1 || m > n) {
        throw ValidationError("fleet block count out of range");
    }
    std::vector<FleetTrial> results(static_cast<std::size_t>(std::max(trials, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) {
        results[t] = run_fleet_trial(n, m, t, seed, options);
    }
    if (trials > 0) {
        const FleetTrial again = run_fleet_trial(n, m, 0, seed, options);
        if (again.eta != results[0].eta || again.ent_u != results[0].ent_u ||
            again.half_flip_index != results[0].half_flip_index) {
            throw std::runtime_error("fleet trial 0 is not reproducible from its seed");
        }
    }

    FleetReport r;
    r.n = n;
    r.m = m;
    r.trials = trials;
    r.seed = seed;
    auto passed = [](const FleetTrial& t, const std::string& name) {
        return std::any_of(t.checks.begin(), t.checks.end(), [&](const Check& c) { return c.name == name && c.pass; });
    };
    auto has = [](const FleetTrial& t, const std::string& name) {
        return std::any_of(t.checks.begin(), t.checks.end(), [&](const Check& c) { return c.name == name; });
    };
    for (const auto& t : results) {
        r.charged += t.charged ? 1 : 0;
        r.eta_bound += passed(t, "eta_bound");
        r.ml_bound += passed(t, "ml_bound");
        r.witness_sound += passed(t, "witness_sound");
        r.endpoints_product += passed(t, "endpoints_product");
        r.spectator_trials += has(t, "spectator_eta");
        r.spectator_invariant += passed(t, "spectator_eta");
        r.equal_trials += has(t, "saturation_equal_blocks");
        r.equal_saturated += passed(t, "saturation_equal_blocks");
        r.unequal_trials += has(t, "strict_unequal_blocks");
        r.unequal_strict += passed(t, "strict_unequal_blocks");
        if (t.charged) {
            r.max_eta_excess = std::max(r.max_eta_excess, t.eta - 1.0 / std::sqrt(static_cast<double>(m)));
            r.max_ml_excess = std::max(r.max_ml_excess, t.tau_ml_ratio - 1.0 / m);
        }
        if (!t.pass()) {
            r.violations.push_back(t);
        }
    }
    return r;
}

bool SpectatorCase::pass() const {
    return all_pass(checks);
}

SpectatorReport spectator_invariance(int cases, std::uint64_t seed, double rel_tol) {
    SpectatorReport report;
    report.cases.resize(static_cast<std::size_t>(std::max(cases, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < cases; ++i) {
        auto rng = random::make_rng(seed, {0x5ec7a7u, static_cast<std::uint64_t>(i)});
        SpectatorCase c;
        c.index = i;
        c.n = 1 + i % 5;
        c.charging = i % 2 == 0;
        const int n = c.n;
        const auto [down, up] = model::endpoint_states(n);
        const double T = 1.0;

        HermitianOperator h;
        if (c.charging) {
            const int m = std::uniform_int_distribution<int>(1, n)(rng);
            h = make_product_block_orbit(model::balanced_partition(n, m), T, 2, true, rng).full;
        } else {
            h = HermitianOperator(random::random_hermitian(std::size_t{1} << n, rng));
        }
        const double floor_energy = hermitian_eigendecomposition(h).values.front();
        c.extra_levels = 1 + std::uniform_int_distribution<std::size_t>(0, 3)(rng);
        std::uniform_real_distribution<double> level(-50.0, 50.0);
        std::vector<double> extra(c.extra_levels);
        for (auto& e : extra) {
            e = level(rng);
        }
        extra[0] = floor_energy - 1.0 - std::uniform_real_distribution<double>(0.0, 10.0)(rng);
        const auto emb = model::embed_with_spectator(h, down, extra);

        const auto a = qsl::qsl_bounds(h, down);
        const auto b = qsl::qsl_bounds(emb.h, emb.psi0);
        c.checks.push_back(relative_check("tau_mt", b.tau_mt, a.tau_mt, rel_tol));
        c.checks.push_back(relative_check("tau_ml", b.tau_ml, a.tau_ml, rel_tol));
        c.checks.push_back(relative_check("tau_qsl", b.tau_qsl, a.tau_qsl, rel_tol));
        c.checks.push_back(exact_check("dim_k", static_cast<std::int64_t>(b.dim_k), static_cast<std::int64_t>(a.dim_k)));
        for (const auto& [x, y] : {std::pair{a.tau_mt, b.tau_mt}, {a.tau_ml, b.tau_ml}, {a.tau_qsl, b.tau_qsl}}) {
            c.max_relative_change = std::max(c.max_relative_change, std::abs(x - y) / std::abs(x));
        }
        if (c.charging) {
            Ket up_ext(emb.psi0.dim());
            for (std::size_t k = 0; k < up.dim(); ++k) {
                up_ext[k] = up[k];
            }
            const auto ea = dynamics::find_complete_charging_time(h, down, up, 1.25 * T);
            const auto eb = dynamics::find_complete_charging_time(emb.h, emb.psi0, up_ext, 1.25 * T);
            const auto* pa = std::get_if<dynamics::ChargingEvent>(&ea);
            const auto* pb = std::get_if<dynamics::ChargingEvent>(&eb);
            const bool both = pa != nullptr && pb != nullptr;
            c.checks.push_back({"charged", both, pb ? pb->time : 0.0, pa ? pa->time : 0.0, 0.0});
            if (both) {
                c.checks.push_back(relative_check("t_charge", pb->time, pa->time, rel_tol));
            }
        }
        report.cases[i] = std::move(c);
    }
    for (const auto& c : report.cases) {
        report.passed += c.pass() ? 1 : 0;
    }
    return report;
}

GeometryReport geometry_checks(int n_max, std::uint64_t seed) {
    GeometryReport r;
    std::ostringstream fail;

    auto check_orbit = [&](const std::string& label, const HermitianOperator& h, const Ket& psi0, double T,
                           const model::BlockPartition* partition) {
        const dynamics::Propagator prop(h, psi0);
        const double dh = dynamics::fs_speed(h, psi0);
        ++r.orbits;

        double variation = 0.0;
        for (int i = 0; i < 64; ++i) {
            const double t = T * i / 63.0;
            variation = std::max(variation, std::abs(dynamics::fs_speed(h, prop.state_at(t)) - dh) / dh);
        }
        r.worst_speed_variation = std::max(r.worst_speed_variation, variation);
        if (variation <= 1e-10) {
            ++r.speed_constant;
        } else {
            r.failures.push_back(label + ": speed varies by " + std::to_string(variation));
        }

        const double length = dynamics::path_length(h, psi0, T);
        const double err = std::abs(length - dh * T) / (dh * T);
        r.worst_path_length_error = std::max(r.worst_path_length_error, err);
        if (err <= 1e-9) {
            ++r.path_length_ok;
        } else {
            r.failures.push_back(label + ": path length error " + std::to_string(err));
        }

        if (partition == nullptr) {
            return;
        }
        ++r.product_orbits;
        const auto speeds = dynamics::block_speeds(prop, *partition, T);
        double add_err = 0.0;
        for (std::size_t i = 0; i < speeds.times.size(); ++i) {
            add_err = std::max(add_err, std::abs(speeds.speed_squared_sum(i) - dh * dh) / (dh * dh));
        }
        r.worst_additivity_error = std::max(r.worst_additivity_error, add_err);
        if (add_err <= 1e-8) {
            ++r.additivity_ok;
        } else {
            r.failures.push_back(label + ": speed additivity error " + std::to_string(add_err));
        }
        double deficit = -1e300;
        for (const double len : speeds.path_lengths) {
            deficit = std::max(deficit, pi / 2.0 - len);
        }
        r.worst_block_path_deficit = std::max(r.worst_block_path_deficit, deficit);
        if (deficit <= 1e-8) {
            ++r.block_path_ok;
        } else {
            r.failures.push_back(label + ": block path length short by " + std::to_string(deficit));
        }
    };

    const int n_top = std::min(n_max, 6);
    for (int n = 1; n <= n_top; ++n) {
        const auto [down, up] = model::endpoint_states(n);
        for (int m = 1; m <= n; ++m) {
            auto spec = model::ClusterFlipSpec::from_time(model::balanced_partition(n, m), 1.0);
            const auto h = model::cluster_flip_hamiltonian(spec);
            check_orbit("cluster_flip n=" + std::to_string(n) + " m=" + std::to_string(m), h, down, spec.T,
                        &spec.partition);
        }
        for (int trial = 0; trial < 3; ++trial) {
            auto rng = random::make_rng(seed, {0x9e0u, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
            const int m = std::uniform_int_distribution<int>(1, n)(rng);
            const auto orbit = make_product_block_orbit(model::balanced_partition(n, m), 1.0, 3, trial % 2 == 1, rng);
            const auto outcome = dynamics::find_complete_charging_time(orbit.full, down, up, 1.25);
            const auto* event = std::get_if<dynamics::ChargingEvent>(&outcome);
            const std::string label = "product_orbit n=" + std::to_string(n) + " trial=" + std::to_string(trial);
            if (event == nullptr) {
                r.failures.push_back(label + ": did not charge");
                continue;
            }
            check_orbit(label, orbit.full, down, event->time, &orbit.partition);
        }
        if (n <= 4) {
            auto rng = random::make_rng(seed, {0xde05eu, static_cast<std::uint64_t>(n)});
            const HermitianOperator h(random::random_hermitian(std::size_t{1} << n, rng));
            check_orbit("dense_random n=" + std::to_string(n), h, down, 2.0, nullptr);
        }
    }
    return r;
}

DualityReport integer_duality(int n_max, std::size_t grid_points) {
    DualityReport r;
    const auto grid = unit_interval_grid(grid_points);
    r.grid_points = static_cast<int>(grid.size());
    for (int n = 1; n <= n_max; ++n) {
        for (int k = 1; k <= n; ++k) {
            ++r.pairs;
            const auto p = frontier_point(n, k);
            const auto c = certified_depth(n, p.eta_max);
            if (c.depth_certified <= k) {
                ++r.bound_ok;
            } else {
                r.failures.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) + ": certified depth " +
                                     std::to_string(c.depth_certified) + " exceeds k");
            }
            if (n % k == 0 || k >= n) {
                ++r.equality_cases;
                if (c.depth_certified == k) {
                    ++r.equality_ok;
                } else {
                    r.failures.push_back("n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                         ": expected equality, got " + std::to_string(c.depth_certified));
                }
            }
        }
        for (const double eta : grid) {
            const auto c = certified_depth(n, eta);
            // eta_max(n, D) >= eta  <=>  ceil(n / D) <= floor(eta^-2)
            if (ceil_div(n, c.depth_certified) <= c.m_max) {
                ++r.inverse_ok;
            } else {
                r.failures.push_back("n=" + std::to_string(n) + " eta=" + std::to_string(eta) + ": inverse fails");
            }
            if (c.depth_certified >= c.smooth_bound) {
                ++r.ordering_ok;
            } else {
                r.failures.push_back("n=" + std::to_string(n) + " eta=" + std::to_string(eta) +
                                     ": staircase below smooth bound");
            }
        }
    }
    return r;
}

}  // namespace qfront::frontier
