#include "qfront/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "qfront/model.hpp"

namespace qfront::io {

namespace {

const char* type_name(HamiltonianType t) {
    switch (t) {
        case HamiltonianType::cluster_flip:
            return "cluster_flip";
        case HamiltonianType::battery:
            return "battery";
        case HamiltonianType::custom_dense:
            return "custom_dense";
    }
    return "unknown";
}

template <typename T>
T require(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        throw ValidationError(std::string("Hamiltonian spec is missing \"") + key + "\"");
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("Hamiltonian spec field \"") + key + "\": " + e.what());
    }
}

}  // namespace

HamiltonianSpec parse_hamiltonian_spec(const json& j) {
    if (!j.is_object()) {
        throw ValidationError("Hamiltonian spec must be a JSON object");
    }
    HamiltonianSpec s;
    const auto type = require<std::string>(j, "type");
    if (j.contains("t_max") && !j["t_max"].is_null()) {
        s.t_max = require<double>(j, "t_max");
    }
    if (type == "cluster_flip") {
        s.type = HamiltonianType::cluster_flip;
        s.n = require<int>(j, "n");
        s.m = require<int>(j, "m");
        const bool has_g = j.contains("g") && !j["g"].is_null();
        const bool has_t = j.contains("T") && !j["T"].is_null();
        if (has_t) {
            s.T = require<double>(j, "T");
            s.g = model::ClusterFlipSpec::from_time(model::balanced_partition(s.n, s.m), s.T).g;
            if (has_g && std::abs(require<double>(j, "g") - s.g) > 1e-12 * s.g) {
                throw ValidationError("cluster_flip spec: g and T disagree (need g T = pi/2)");
            }
        } else if (has_g) {
            s.g = require<double>(j, "g");
            s.T = model::ClusterFlipSpec::from_coupling(model::balanced_partition(s.n, s.m), s.g).T;
        } else {
            throw ValidationError("cluster_flip spec needs g or T");
        }
    } else if (type == "battery") {
        s.type = HamiltonianType::battery;
        s.n = require<int>(j, "n");
        if (j.contains("omega")) {
            s.omega = require<double>(j, "omega");
        }
    } else if (type == "custom_dense") {
        s.type = HamiltonianType::custom_dense;
        const auto& entries = j.at("matrix");
        if (!entries.is_array()) {
            throw ValidationError("custom_dense matrix must be an array of [re, im] pairs");
        }
        const std::size_t count = entries.size();
        const std::size_t dim = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
        if (dim * dim != count || dim == 0) {
            throw ValidationError("custom_dense matrix has " + std::to_string(count) + " entries, not a square");
        }
        s.n = j.contains("n") ? require<int>(j, "n") : qubit_count(dim);
        model::require_dense_size(s.n);
        if (dim != (std::size_t{1} << s.n)) {
            throw ValidationError("custom_dense matrix dimension does not match n");
        }
        std::vector<Complex> data;
        data.reserve(count);
        for (const auto& e : entries) {
            if (!e.is_array() || e.size() != 2) {
                throw ValidationError("custom_dense entries must be [re, im] pairs");
            }
            data.emplace_back(e[0].get<double>(), e[1].get<double>());
        }
        s.matrix = ComplexMatrix(dim, dim, std::move(data));
    } else {
        throw ValidationError("unknown Hamiltonian type \"" + type + "\"");
    }
    return s;
}

json to_json(const HamiltonianSpec& s) {
    json j{{"type", type_name(s.type)}, {"n", s.n}};
    switch (s.type) {
        case HamiltonianType::cluster_flip:
            j["m"] = s.m;
            j["g"] = s.g;
            j["T"] = s.T;
            break;
        case HamiltonianType::battery:
            j["omega"] = s.omega;
            break;
        case HamiltonianType::custom_dense: {
            json entries = json::array();
            for (const auto& z : s.matrix->entries()) {
                entries.push_back({z.real(), z.imag()});
            }
            j["matrix"] = std::move(entries);
            break;
        }
    }
    if (s.t_max) {
        j["t_max"] = *s.t_max;
    }
    return j;
}

HermitianOperator build_hamiltonian(const HamiltonianSpec& s) {
    switch (s.type) {
        case HamiltonianType::cluster_flip:
            return model::cluster_flip_hamiltonian(
                model::ClusterFlipSpec::from_time(model::balanced_partition(s.n, s.m), s.T));
        case HamiltonianType::battery:
            return model::battery_hamiltonian({s.n, s.omega});
        case HamiltonianType::custom_dense:
            return HermitianOperator(*s.matrix);
    }
    throw ValidationError("unknown Hamiltonian type");
}

std::optional<double> default_horizon(const HamiltonianSpec& s) {
    if (s.t_max) {
        return s.t_max;
    }
    if (s.type == HamiltonianType::cluster_flip) {
        return 2.0 * s.T;
    }
    return std::nullopt;
}

json number(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

json to_json(const model::BlockPartition& p) {
    return p.blocks();
}

json to_json(const dynamics::ChargingEvent& e) {
    return {{"T", e.time}, {"phase", e.phase}, {"infidelity_at_T", e.infidelity}};
}

json to_json(const dynamics::NotCharged& e) {
    return {{"best_time", e.best_time}, {"best_infidelity", e.best_infidelity}};
}

json to_json(const qsl::QslReport& r) {
    json j{{"delta_h", number(r.delta_h)}, {"e_ml", number(r.e_ml)},       {"tau_mt", number(r.tau_mt)},
           {"tau_ml", number(r.tau_ml)},   {"tau_qsl", number(r.tau_qsl)}, {"dim_k", r.dim_k},
           {"degenerate", r.degenerate}};
    j["t_charge"] = r.t_charge ? number(*r.t_charge) : json(nullptr);
    j["eta"] = r.eta ? number(*r.eta) : json(nullptr);
    return j;
}

json to_json(const depth::DepthProfile& p) {
    json samples = json::array();
    for (std::size_t i = 0; i < p.times.size(); ++i) {
        samples.push_back({{"t", p.times[i]}, {"depth", p.depths[i]}, {"partition", to_json(p.partitions[i])}});
    }
    return {{"ent_u", p.ent_u}, {"witness_time", p.witness_time}, {"samples", std::move(samples)}};
}

json to_json(const frontier::Certificate& c) {
    return {{"n", c.n},
            {"eta_observed", c.eta},
            {"m_max", c.m_max},
            {"depth_certified", c.depth_certified},
            {"smooth_bound", c.smooth_bound},
            {"genuine_npartite", c.genuine_npartite}};
}

json to_json(const frontier::StaircaseRow& row) {
    return {{"eta", row.eta}, {"d_cert", row.depth_certified}, {"smooth_bound", row.smooth_bound}};
}

json to_json(const frontier::Check& c) {
    return {{"name", c.name},
            {"pass", c.pass},
            {"measured", number(c.measured)},
            {"expected", number(c.expected)},
            {"tolerance", number(c.tolerance)}};
}

namespace {

json checks_json(const std::vector<frontier::Check>& checks) {
    json a = json::array();
    for (const auto& c : checks) {
        a.push_back(to_json(c));
    }
    return a;
}

}  // namespace

json to_json(const frontier::SaturationReport& r) {
    json j{{"n", r.n}, {"m", r.m}, {"g", r.g}, {"T", r.T}, {"pass", r.pass()}, {"checks", checks_json(r.checks)}};
    if (r.event) {
        j["charging_event"] = to_json(*r.event);
        j["qsl"] = to_json(r.qsl);
        j["ent_u"] = r.depth.ent_u;
        j["witness_time"] = r.depth.witness_time;
    }
    if (r.certificate) {
        j["certificate"] = to_json(*r.certificate);
    }
    return j;
}

json to_json(const frontier::FleetTrial& t) {
    return {{"trial", t.trial},
            {"half_flip_index", t.half_flip_index},
            {"spectator", t.spectator},
            {"charged", t.charged},
            {"t_charge", t.t_charge},
            {"eta", t.eta},
            {"tau_ml_over_T", t.tau_ml_ratio},
            {"ent_u", t.ent_u},
            {"depth_certified", t.depth_certified},
            {"checks", checks_json(t.checks)}};
}

json to_json(const frontier::FleetReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations) {
        violations.push_back(to_json(v));
    }
    return {{"n", r.n},
            {"m", r.m},
            {"trials", r.trials},
            {"seed", r.seed},
            {"charged", r.charged},
            {"eta_bound", r.eta_bound},
            {"ml_bound", r.ml_bound},
            {"witness_sound", r.witness_sound},
            {"endpoints_product", r.endpoints_product},
            {"spectator_trials", r.spectator_trials},
            {"spectator_invariant", r.spectator_invariant},
            {"equal_trials", r.equal_trials},
            {"equal_saturated", r.equal_saturated},
            {"unequal_trials", r.unequal_trials},
            {"unequal_strict", r.unequal_strict},
            {"max_eta_excess", r.max_eta_excess},
            {"max_ml_excess", r.max_ml_excess},
            {"pass", r.pass()},
            {"violations", std::move(violations)}};
}

json to_json(const frontier::SpectatorReport& r) {
    json failed = json::array();
    double worst = 0.0;
    for (const auto& c : r.cases) {
        worst = std::max(worst, c.max_relative_change);
        if (!c.pass()) {
            failed.push_back({{"index", c.index}, {"n", c.n}, {"charging", c.charging}, {"checks", checks_json(c.checks)}});
        }
    }
    return {{"cases", r.cases.size()},
            {"passed", r.passed},
            {"max_relative_change", worst},
            {"pass", r.pass()},
            {"violations", std::move(failed)}};
}

json to_json(const frontier::GeometryReport& r) {
    return {{"orbits", r.orbits},
            {"speed_constant", r.speed_constant},
            {"path_length_ok", r.path_length_ok},
            {"product_orbits", r.product_orbits},
            {"additivity_ok", r.additivity_ok},
            {"block_path_ok", r.block_path_ok},
            {"worst_speed_variation", r.worst_speed_variation},
            {"worst_path_length_error", r.worst_path_length_error},
            {"worst_additivity_error", r.worst_additivity_error},
            {"worst_block_path_deficit", r.worst_block_path_deficit},
            {"pass", r.pass()},
            {"violations", r.failures}};
}

json to_json(const frontier::DualityReport& r) {
    return {{"pairs", r.pairs},
            {"bound_ok", r.bound_ok},
            {"equality_cases", r.equality_cases},
            {"equality_ok", r.equality_ok},
            {"grid_points", r.grid_points},
            {"inverse_ok", r.inverse_ok},
            {"ordering_ok", r.ordering_ok},
            {"pass", r.pass()},
            {"violations", r.failures}};
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_staircase_csv(std::ostream& os, const std::vector<frontier::StaircaseRow>& rows) {
    os << "eta,d_cert,smooth_bound\n";
    for (const auto& r : rows) {
        os << format_double(r.eta) << ',' << r.depth_certified << ',' << r.smooth_bound << '\n';
    }
}

void write_depth_csv(std::ostream& os, const depth::DepthProfile& p) {
    os << "t,depth\n";
    for (std::size_t i = 0; i < p.times.size(); ++i) {
        os << format_double(p.times[i]) << ',' << p.depths[i] << '\n';
    }
}

void write_trajectory_csv(std::ostream& os, const std::vector<dynamics::TrajectorySample>& samples) {
    os << "t,fidelity_to_target,fs_speed,energy\n";
    for (const auto& s : samples) {
        os << format_double(s.t) << ',' << format_double(s.fidelity) << ',' << format_double(s.fs_speed) << ','
           << format_double(s.energy) << '\n';
    }
}

}  // namespace qfront::io
