#include "qfront/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qfront::model {

BlockPartition::BlockPartition(std::vector<std::vector<int>> blocks, int n) : n_(n), blocks_(std::move(blocks)) {
    if (n < 1 || n > 30) {
        throw ValidationError("partition qubit count " + std::to_string(n) + " out of range");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (auto& b : blocks_) {
        if (b.empty()) {
            throw ValidationError("partition contains an empty block");
        }
        std::sort(b.begin(), b.end());
        for (const int q : b) {
            if (q < 1 || q > n) {
                throw ValidationError("partition references qubit " + std::to_string(q) + " outside 1.." +
                                      std::to_string(n));
            }
            if (seen[q]) {
                throw ValidationError("partition blocks overlap on qubit " + std::to_string(q));
            }
            seen[q] = true;
        }
    }
    for (int q = 1; q <= n; ++q) {
        if (!seen[q]) {
            throw ValidationError("partition does not cover qubit " + std::to_string(q));
        }
    }
}

BlockPartition BlockPartition::singletons(int n) {
    std::vector<std::vector<int>> blocks;
    for (int q = 1; q <= n; ++q) {
        blocks.push_back({q});
    }
    return BlockPartition(std::move(blocks), n);
}

BlockPartition BlockPartition::whole(int n) {
    std::vector<int> all(n);
    for (int q = 1; q <= n; ++q) {
        all[q - 1] = q;
    }
    return BlockPartition({all}, n);
}

BlockPartition BlockPartition::from_masks(std::span<const QubitMask> masks, int n) {
    std::vector<std::vector<int>> blocks;
    for (const auto m : masks) {
        blocks.push_back(qubits_from_mask(m, n));
    }
    return BlockPartition(std::move(blocks), n);
}

std::vector<int> BlockPartition::sizes() const {
    std::vector<int> s;
    for (const auto& b : blocks_) {
        s.push_back(static_cast<int>(b.size()));
    }
    return s;
}

int BlockPartition::max_block_size() const {
    int m = 0;
    for (const auto& b : blocks_) {
        m = std::max(m, static_cast<int>(b.size()));
    }
    return m;
}

QubitMask BlockPartition::mask(std::size_t i) const {
    return mask_from_qubits(blocks_.at(i), n_);
}

std::vector<QubitMask> BlockPartition::masks() const {
    std::vector<QubitMask> out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        out.push_back(mask(i));
    }
    return out;
}

bool BlockPartition::is_coarsening_of(const BlockPartition& finer) const {
    if (finer.n() != n_) {
        return false;
    }
    const auto coarse = masks();
    for (const auto f : finer.masks()) {
        const bool inside = std::any_of(coarse.begin(), coarse.end(), [f](QubitMask c) { return (f & ~c) == 0; });
        if (!inside) {
            return false;
        }
    }
    return true;
}

bool BlockPartition::same_blocks(const BlockPartition& other) const {
    auto a = masks();
    auto b = other.masks();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return n_ == other.n_ && a == b;
}

std::string BlockPartition::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        os << (i ? " " : "") << '{';
        for (std::size_t j = 0; j < blocks_[i].size(); ++j) {
            os << (j ? "," : "") << blocks_[i][j];
        }
        os << '}';
    }
    return os.str();
}

ClusterFlipSpec ClusterFlipSpec::from_time(BlockPartition partition, double T) {
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ValidationError("charging time must be positive and finite");
    }
    return {std::move(partition), std::numbers::pi / (2.0 * T), T};
}

ClusterFlipSpec ClusterFlipSpec::from_coupling(BlockPartition partition, double g) {
    if (!(g > 0.0) || !std::isfinite(g)) {
        throw ValidationError("coupling must be positive and finite");
    }
    return {std::move(partition), g, std::numbers::pi / (2.0 * g)};
}

void require_dense_size(int n) {
    if (n < 1) {
        throw ValidationError("qubit count must be at least 1, got " + std::to_string(n));
    }
    if (n > kMaxDenseQubits) {
        throw SizeError("n = " + std::to_string(n) + " exceeds the dense limit of " +
                        std::to_string(kMaxDenseQubits) + " qubits");
    }
}

HermitianOperator battery_hamiltonian(const BatterySpec& spec) {
    require_dense_size(spec.n);
    if (!(spec.omega > 0.0) || !std::isfinite(spec.omega)) {
        throw ValidationError("battery level splitting must be positive");
    }
    const std::size_t dim = std::size_t{1} << spec.n;
    ComplexMatrix h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        h(i, i) = spec.omega * std::popcount(i);
    }
    return HermitianOperator(std::move(h));
}

Endpoints endpoint_states(int n) {
    if (n < 1 || n > 30) {
        throw ValidationError("qubit count " + std::to_string(n) + " out of range");
    }
    const std::size_t dim = std::size_t{1} << n;
    return {Ket::basis(dim, 0), Ket::basis(dim, dim - 1)};
}

BlockPartition balanced_partition(int n, int m) {
    if (n < 1) {
        throw ValidationError("qubit count must be at least 1");
    }
    if (m < 1 || m > n) {
        throw ValidationError("block count m = " + std::to_string(m) + " must lie in 1.." + std::to_string(n));
    }
    const int small = n / m;
    const int large_count = n % m;
    std::vector<std::vector<int>> blocks;
    int next = 1;
    for (int b = 0; b < m; ++b) {
        const int size = small + (b < large_count ? 1 : 0);
        std::vector<int> block;
        for (int j = 0; j < size; ++j) {
            block.push_back(next++);
        }
        blocks.push_back(std::move(block));
    }
    return BlockPartition(std::move(blocks), n);
}

ComplexMatrix embed_block_operator(const ComplexMatrix& local, std::span<const int> block, int n) {
    require_dense_size(n);
    const QubitMask mask = mask_from_qubits(block, n);
    const std::size_t local_dim = std::size_t{1} << std::popcount(mask);
    if (local.rows() != local_dim || local.cols() != local_dim) {
        throw ValidationError("block operator has the wrong dimension for its block");
    }
    const QubitMask rest = ((QubitMask{1} << n) - 1) & ~mask;
    const auto in = subsystem_offsets(mask, n);
    const auto out = subsystem_offsets(rest, n);
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix h(dim, dim);
#pragma omp parallel for schedule(static) if (dim > 256)
    for (std::size_t r = 0; r < out.size(); ++r) {
        for (std::size_t a = 0; a < local_dim; ++a) {
            for (std::size_t b = 0; b < local_dim; ++b) {
                const Complex v = local(a, b);
                if (v != Complex{}) {
                    h(in[a] | out[r], in[b] | out[r]) = v;
                }
            }
        }
    }
    return h;
}

ComplexMatrix block_flip(std::span<const int> block, int n) {
    require_dense_size(n);
    const std::size_t local_dim = std::size_t{1} << block.size();
    ComplexMatrix x(local_dim, local_dim);
    x(local_dim - 1, 0) = 1.0;
    x(0, local_dim - 1) = 1.0;
    return embed_block_operator(x, block, n);
}

HermitianOperator block_flip_hamiltonian(const BlockPartition& partition, std::span<const double> couplings) {
    require_dense_size(partition.n());
    if (couplings.size() != partition.block_count()) {
        throw ValidationError("need one coupling per block");
    }
    const int n = partition.n();
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix h(dim, dim);
    for (std::size_t mu = 0; mu < partition.block_count(); ++mu) {
        if (!std::isfinite(couplings[mu])) {
            throw ValidationError("non-finite block coupling");
        }
        const QubitMask mask = partition.mask(mu);
        const QubitMask rest = ((QubitMask{1} << n) - 1) & ~mask;
        const auto in = subsystem_offsets(mask, n);
        const std::size_t d_idx = in.front();
        const std::size_t u_idx = in.back();
        for (const auto r : subsystem_offsets(rest, n)) {
            h(u_idx | r, d_idx | r) += couplings[mu];
            h(d_idx | r, u_idx | r) += couplings[mu];
        }
    }
    return HermitianOperator(std::move(h));
}

HermitianOperator cluster_flip_hamiltonian(const ClusterFlipSpec& spec) {
    if (std::abs(spec.g * spec.T - std::numbers::pi / 2.0) > 1e-12 * std::max(1.0, spec.g * spec.T)) {
        throw ValidationError("cluster-flip spec violates g T = pi/2");
    }
    const std::vector<double> couplings(spec.partition.block_count(), spec.g);
    return block_flip_hamiltonian(spec.partition, couplings);
}

Embedding embed_with_spectator(const HermitianOperator& h, const Ket& psi0, std::span<const double> extra_levels) {
    if (psi0.dim() != h.dim()) {
        throw ValidationError("embed_with_spectator: state and operator dimensions differ");
    }
    for (const double e : extra_levels) {
        if (!std::isfinite(e)) {
            throw ValidationError("spectator levels must be finite");
        }
    }
    const std::size_t d = h.dim();
    const std::size_t ext = d + extra_levels.size();
    ComplexMatrix big(ext, ext);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            big(i, j) = h.matrix()(i, j);
        }
    }
    for (std::size_t k = 0; k < extra_levels.size(); ++k) {
        big(d + k, d + k) = extra_levels[k];
    }
    Ket padded(ext);
    for (std::size_t i = 0; i < d; ++i) {
        padded[i] = psi0[i];
    }
    return {HermitianOperator(std::move(big)), std::move(padded)};
}

}  // namespace qfront::model
