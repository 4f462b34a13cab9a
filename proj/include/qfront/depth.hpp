#pragma once

// Entanglement depth of pure states: the finest product factorization of a
// state and the largest depth met along a charging orbit.

#include <span>
#include <vector>

#include "qfront/dynamics.hpp"
#include "qfront/model.hpp"
#include "qfront/numkit.hpp"

namespace qfront::depth {

struct Factorization {
    model::BlockPartition partition;  ///< finest product partition
    int depth = 0;                    ///< largest block size
    std::vector<double> purities;     ///< Tr rho_B^2 per block
};

/// Greedy minimal-factor extraction. Starting from the lowest unassigned qubit,
/// candidate blocks are the subsets of the unassigned qubits that contain it,
/// visited by increasing size and then lexicographically; the first one whose
/// reduced purity is at least 1 - eps_p becomes a block. For a pure state this
/// is the unique finest product partition.
Factorization finest_factorization(const Ket& psi, int n, double eps_p = kDefaultTolerances.eps_p);

struct ProductCheck {
    bool product = false;
    std::vector<double> purities;

    explicit operator bool() const noexcept { return product; }
};

ProductCheck is_product_across(const Ket& psi, const model::BlockPartition& partition,
                               double eps_p = kDefaultTolerances.eps_p);

/// The block's pure state: dominant eigenvector of rho_block with its
/// largest-magnitude amplitude made real and positive. Throws ValidationError
/// when the block's purity is below 1 - eps_p.
Ket extract_block_state(const Ket& psi, std::span<const int> block, int n, double eps_p = kDefaultTolerances.eps_p);

/// Tensor product of block states placed on the partition's qubits.
Ket product_state(const model::BlockPartition& partition, std::span<const Ket> block_states);

struct DepthProfile {
    std::vector<double> times;
    std::vector<int> depths;
    std::vector<model::BlockPartition> partitions;  ///< finest partition at each sample
    int ent_u = 0;                                  ///< max over samples; a lower bound on the orbit supremum
    double witness_time = 0.0;                      ///< first sample attaining ent_u
};

struct DepthOptions {
    std::size_t samples = kDefaultTolerances.depth_samples;
    double eps_p = kDefaultTolerances.eps_p;
    /// Bisect towards neighbouring samples of the witness this many times.
    int refine_levels = 0;
};

/// Depth on a uniform grid over [0, T] including both endpoints.
DepthProfile trajectory_depth(const dynamics::Propagator& prop, int n, double T, const DepthOptions& options = {});
DepthProfile trajectory_depth(const HermitianOperator& h, const Ket& psi0, double T, const DepthOptions& options = {});

}  // namespace qfront::depth
