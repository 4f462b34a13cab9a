#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qfront/depth.hpp"

namespace qfront::depth {

namespace {

void require_pure_state(const Ket& psi, int n) {
    if (n < 1 || n > 30 || psi.dim() != (std::size_t{1} << n)) {
        throw ValidationError("state dimension does not match n = " + std::to_string(n));
    }
}

// Calls visit(mask) for every k-subset of `pool` in lexicographic order of the
// sorted index lists; stops early when visit returns true.
template <typename Visit>
bool for_each_combination(const std::vector<int>& pool, std::size_t k, Visit&& visit) {
    const std::size_t r = pool.size();
    if (k > r) {
        return false;
    }
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        QubitMask mask = 0;
        for (const auto i : idx) {
            mask |= QubitMask{1} << (pool[i] - 1);
        }
        if (visit(mask)) {
            return true;
        }
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == r - k + (i - 1)) {
            --i;
        }
        if (i == 0) {
            return false;
        }
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

}  // namespace

Factorization finest_factorization(const Ket& psi, int n, double eps_p) {
    require_pure_state(psi, n);
    QubitMask remaining = (QubitMask{1} << n) - 1;
    std::vector<QubitMask> blocks;
    std::vector<double> purities;
    while (remaining != 0) {
        const QubitMask lowest = remaining & (~remaining + 1);
        const std::vector<int> pool = qubits_from_mask(remaining & ~lowest, n);
        QubitMask found = remaining;
        double found_purity = 0.0;
        bool hit = false;
        for (std::size_t k = 0; k < pool.size() && !hit; ++k) {
            hit = for_each_combination(pool, k, [&](QubitMask extra) {
                const QubitMask candidate = lowest | extra;
                const double p = subsystem_purity(psi, candidate, n);
                if (p >= 1.0 - eps_p) {
                    found = candidate;
                    found_purity = p;
                    return true;
                }
                return false;
            });
        }
        if (!hit) {
            found_purity = subsystem_purity(psi, found, n);
        }
        blocks.push_back(found);
        purities.push_back(found_purity);
        remaining &= ~found;
    }
    auto partition = model::BlockPartition::from_masks(blocks, n);
    const int depth = partition.max_block_size();
    return {std::move(partition), depth, std::move(purities)};
}

ProductCheck is_product_across(const Ket& psi, const model::BlockPartition& partition, double eps_p) {
    require_pure_state(psi, partition.n());
    ProductCheck out{true, {}};
    for (const auto mask : partition.masks()) {
        const double p = subsystem_purity(psi, mask, partition.n());
        out.purities.push_back(p);
        out.product = out.product && p >= 1.0 - eps_p;
    }
    return out;
}

Ket extract_block_state(const Ket& psi, std::span<const int> block, int n, double eps_p) {
    require_pure_state(psi, n);
    const QubitMask mask = mask_from_qubits(block, n);
    if (mask == 0) {
        throw ValidationError("extract_block_state: empty block");
    }
    const double p = subsystem_purity(psi, mask, n);
    if (p < 1.0 - eps_p) {
        throw ValidationError("block is not pure: Tr rho^2 = " + std::to_string(p));
    }
    const ComplexMatrix m = bipartition_matrix(psi, mask, n);
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();

    // rho = M M^dagger is rank one up to eps_p; its dominant eigenvector is
    // parallel to the heaviest column of M. Two power steps clean up the rest.
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t c = 0; c < cols; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
            s += std::norm(m(r, c));
        }
        if (s > best_norm) {
            best_norm = s;
            best = c;
        }
    }
    Ket x = normalized(m.column(best));
    for (int step = 0; step < 2; ++step) {
        std::vector<Complex> y(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            Complex s{};
            for (std::size_t r = 0; r < rows; ++r) {
                s += std::conj(m(r, c)) * x[r];
            }
            y[c] = s;
        }
        Ket z(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            Complex s{};
            for (std::size_t c = 0; c < cols; ++c) {
                s += m(r, c) * y[c];
            }
            z[r] = s;
        }
        x = normalized(z);
    }

    std::size_t peak = 0;
    for (std::size_t r = 1; r < rows; ++r) {
        if (std::abs(x[r]) > std::abs(x[peak])) {
            peak = r;
        }
    }
    const Complex phase = std::conj(x[peak]) / std::abs(x[peak]);
    for (auto& z : x) {
        z *= phase;
    }
    x[peak] = std::abs(x[peak]);
    return x;
}

Ket product_state(const model::BlockPartition& partition, std::span<const Ket> block_states) {
    const int n = partition.n();
    if (block_states.size() != partition.block_count()) {
        throw ValidationError("product_state: need one state per block");
    }
    std::vector<std::vector<std::size_t>> offsets;
    for (std::size_t b = 0; b < partition.block_count(); ++b) {
        const auto& blk = partition.block(b);
        if (block_states[b].dim() != (std::size_t{1} << blk.size())) {
            throw ValidationError("product_state: block state has the wrong dimension");
        }
        offsets.push_back(subsystem_offsets(partition.mask(b), n));
    }
    Ket psi(std::size_t{1} << n);
    psi[0] = 1.0;
    // Grow the product one block at a time: each existing amplitude at index
    // i spreads over i | offsets[b][a].
    std::vector<std::size_t> support{0};
    for (std::size_t b = 0; b < offsets.size(); ++b) {
        std::vector<std::size_t> next;
        Ket grown(psi.dim());
        for (const auto i : support) {
            for (std::size_t a = 0; a < offsets[b].size(); ++a) {
                grown[i | offsets[b][a]] = psi[i] * block_states[b][a];
                next.push_back(i | offsets[b][a]);
            }
        }
        psi = std::move(grown);
        support = std::move(next);
    }
    return psi;
}

}  // namespace qfront::depth
