#pragma once

// Brute-force references for the depth module: exhaustive set-partition
// search and a generator of states with a known finest factorization.

#include <cstdint>
#include <string>
#include <vector>

#include "qfront/model.hpp"
#include "qfront/random.hpp"

namespace qfront::oracles {

/// Every set partition of {1..n}, in restricted-growth-string order.
std::vector<model::BlockPartition> all_set_partitions(int n);

struct ExhaustiveResult {
    model::BlockPartition partition;  ///< product partition of least depth, most blocks on ties
    int depth = 0;
    std::size_t partitions_tested = 0;
};

/// Tests every set partition with the definition-based partial trace.
/// Intended for n <= 6.
ExhaustiveResult exhaustive_depth(const Ket& psi, int n, double eps_p = kDefaultTolerances.eps_p);

/// Uniformly random assignment of qubits to blocks (random restricted growth
/// string, so block counts are not uniform).
model::BlockPartition random_partition(int n, random::Rng& rng);

struct PlantedState {
    Ket psi;
    model::BlockPartition partition;  ///< the planted finest partition
};

/// Product of GHZ states, one per block (a single qubit gets a Haar-random
/// state), with an independent Haar rotation on every qubit.
PlantedState random_ghz_product(int n, random::Rng& rng);

struct OracleReport {
    int trials = 0;
    int depth_agree = 0;      ///< greedy depth == exhaustive depth
    int partition_agree = 0;  ///< greedy partition == exhaustive == planted
    std::vector<std::string> failures;

    bool pass() const { return failures.empty(); }
};

/// Greedy factorization against exhaustive search on `trials` planted states
/// with n drawn uniformly from 1..n_max.
OracleReport oracle_equivalence(int trials, int n_max, std::uint64_t seed, double eps_p = kDefaultTolerances.eps_p);

}  // namespace qfront::oracles
