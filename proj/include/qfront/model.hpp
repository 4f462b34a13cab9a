#pragma once

// Battery, endpoint states, block partitions and the block-flip Hamiltonians.
//
// Spin convention: |down> is bit 0 and |up> is bit 1 of a qubit, so the empty
// battery |down...down> is basis index 0 and the full battery is index 2^n - 1.

#include <span>
#include <string>
#include <vector>

#include "qfront/numkit.hpp"

namespace qfront::model {

/// Raised when a dense construction would exceed kMaxDenseQubits.
class SizeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

struct BatterySpec {
    int n = 1;
    double omega = 1.0;
};

/// Ordered list of disjoint blocks of 1-based qubit indices covering 1..n.
/// Qubits inside a block are kept in ascending order.
class BlockPartition {
public:
    BlockPartition() = default;
    BlockPartition(std::vector<std::vector<int>> blocks, int n);

    static BlockPartition singletons(int n);
    static BlockPartition whole(int n);
    static BlockPartition from_masks(std::span<const QubitMask> masks, int n);

    int n() const noexcept { return n_; }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    const std::vector<std::vector<int>>& blocks() const noexcept { return blocks_; }
    const std::vector<int>& block(std::size_t i) const { return blocks_.at(i); }
    std::vector<int> sizes() const;
    int max_block_size() const;
    QubitMask mask(std::size_t i) const;
    std::vector<QubitMask> masks() const;

    /// True when every block of `this` is a union of blocks of `finer`.
    bool is_coarsening_of(const BlockPartition& finer) const;

    /// Same blocks regardless of block order.
    bool same_blocks(const BlockPartition& other) const;

    std::string to_string() const;

    friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
};

/// Block-flip Hamiltonian parameters. Coupling and charging time are tied by
/// g T = pi / 2.
struct ClusterFlipSpec {
    BlockPartition partition;
    double g = 0.0;
    double T = 0.0;

    static ClusterFlipSpec from_time(BlockPartition partition, double T);
    static ClusterFlipSpec from_coupling(BlockPartition partition, double g);
};

void require_dense_size(int n);

/// H_B = (omega/2) sum_j (1 + sigma^z_j): diagonal, omega per up-spin.
HermitianOperator battery_hamiltonian(const BatterySpec& spec);

struct Endpoints {
    Ket down;
    Ket up;
};
Endpoints endpoint_states(int n);

/// m contiguous blocks, sizes in {floor(n/m), ceil(n/m)}, larger blocks first.
BlockPartition balanced_partition(int n, int m);

/// local (x) identity-on-the-rest, with `local` indexed by the block's qubits
/// in ascending order.
ComplexMatrix embed_block_operator(const ComplexMatrix& local, std::span<const int> block, int n);

/// |U><D| + |D><U| on the block, zero on the rest of the block space,
/// identity on other qubits.
ComplexMatrix block_flip(std::span<const int> block, int n);

/// sum_mu couplings[mu] X_mu.
HermitianOperator block_flip_hamiltonian(const BlockPartition& partition, std::span<const double> couplings);

/// H_m = g sum_mu X_mu.
HermitianOperator cluster_flip_hamiltonian(const ClusterFlipSpec& spec);

struct Embedding {
    HermitianOperator h;
    Ket psi0;
};

/// H (+) diag(extra_levels), with psi0 padded by zeros.
Embedding embed_with_spectator(const HermitianOperator& h, const Ket& psi0, std::span<const double> extra_levels);

}  // namespace qfront::model
