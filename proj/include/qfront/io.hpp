#pragma once

// Serialization: JSON documents (schema 1) for reports and Hamiltonian specs,
// and CSV tables for trajectories, depth profiles and the staircase.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qfront/depth.hpp"
#include "qfront/dynamics.hpp"
#include "qfront/frontier.hpp"
#include "qfront/harness.hpp"
#include "qfront/qsl.hpp"

namespace qfront::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum class HamiltonianType { cluster_flip, battery, custom_dense };

/// {"type": "cluster_flip" | "battery" | "custom_dense", "n", "m", "g", "T",
///  "omega", "t_max", "matrix"}. cluster_flip needs n, m and one of g / T;
/// battery needs n (omega defaults to 1); custom_dense carries the matrix as a
/// flat row-major list of [re, im] pairs.
struct HamiltonianSpec {
    HamiltonianType type = HamiltonianType::cluster_flip;
    int n = 1;
    int m = 1;
    double g = 0.0;
    double T = 0.0;
    double omega = 1.0;
    std::optional<double> t_max;
    std::optional<ComplexMatrix> matrix;
};

HamiltonianSpec parse_hamiltonian_spec(const json& j);
json to_json(const HamiltonianSpec& spec);
HermitianOperator build_hamiltonian(const HamiltonianSpec& spec);
/// Charging horizon: explicit t_max, else 2T for specs that define T.
std::optional<double> default_horizon(const HamiltonianSpec& spec);

/// Non-finite values become null.
json number(double x);

json to_json(const model::BlockPartition& p);
json to_json(const dynamics::ChargingEvent& e);
json to_json(const dynamics::NotCharged& e);
json to_json(const qsl::QslReport& r);
json to_json(const depth::DepthProfile& p);
json to_json(const frontier::Certificate& c);
json to_json(const frontier::StaircaseRow& row);
json to_json(const frontier::Check& c);
json to_json(const frontier::SaturationReport& r);
json to_json(const frontier::FleetTrial& t);
json to_json(const frontier::FleetReport& r);
json to_json(const frontier::SpectatorReport& r);
json to_json(const frontier::GeometryReport& r);
json to_json(const frontier::DualityReport& r);

/// Round-trip formatting used for every CSV number.
std::string format_double(double x);

void write_staircase_csv(std::ostream& os, const std::vector<frontier::StaircaseRow>& rows);
void write_depth_csv(std::ostream& os, const depth::DepthProfile& p);
void write_trajectory_csv(std::ostream& os, const std::vector<dynamics::TrajectorySample>& samples);

}  // namespace qfront::io
