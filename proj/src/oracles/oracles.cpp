#include "qfront/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfront/depth.hpp"

namespace qfront::oracles {

namespace {

model::BlockPartition from_growth_string(const std::vector<int>& labels, int n) {
    const int count = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::vector<int>> blocks(count);
    for (int q = 0; q < n; ++q) {
        blocks[labels[q]].push_back(q + 1);
    }
    return {std::move(blocks), n};
}

Ket rotate_qubit(const Ket& psi, int qubit, int n, const ComplexMatrix& u) {
    const std::size_t bit = std::size_t{1} << (n - qubit);
    Ket out(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (i & bit) {
            continue;
        }
        const Complex a0 = psi[i];
        const Complex a1 = psi[i | bit];
        out[i] = u(0, 0) * a0 + u(0, 1) * a1;
        out[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return out;
}

}  // namespace

std::vector<model::BlockPartition> all_set_partitions(int n) {
    std::vector<model::BlockPartition> out;
    if (n < 1) {
        return out;
    }
    // labels[i] <= 1 + max(labels[0..i-1])
    std::vector<int> labels(n, 0);
    std::vector<int> prefix_max(n, 0);
    while (true) {
        out.push_back(from_growth_string(labels, n));
        int i = n - 1;
        while (i > 0 && labels[i] == prefix_max[i - 1] + 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++labels[i];
        prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
        for (int j = i + 1; j < n; ++j) {
            labels[j] = 0;
            prefix_max[j] = prefix_max[i];
        }
    }
    return out;
}

ExhaustiveResult exhaustive_depth(const Ket& psi, int n, double eps_p) {
    ExhaustiveResult best;
    best.depth = n + 1;
    for (const auto& p : all_set_partitions(n)) {
        ++best.partitions_tested;
        const int d = p.max_block_size();
        if (d > best.depth || (d == best.depth && p.block_count() <= best.partition.block_count())) {
            continue;
        }
        bool product = true;
        for (std::size_t b = 0; b < p.block_count() && product; ++b) {
            product = reference::subsystem_purity(psi, p.mask(b), n) >= 1.0 - eps_p;
        }
        if (product) {
            best.partition = p;
            best.depth = d;
        }
    }
    return best;
}

model::BlockPartition random_partition(int n, random::Rng& rng) {
    std::vector<int> labels(n, 0);
    int top = 0;
    for (int q = 1; q < n; ++q) {
        std::uniform_int_distribution<int> pick(0, top + 1);
        labels[q] = pick(rng);
        top = std::max(top, labels[q]);
    }
    return from_growth_string(labels, n);
}

PlantedState random_ghz_product(int n, random::Rng& rng) {
    auto partition = random_partition(n, rng);
    std::vector<Ket> states;
    for (const auto& block : partition.blocks()) {
        const std::size_t dim = std::size_t{1} << block.size();
        if (block.size() == 1) {
            states.push_back(random::random_state(2, rng));
            continue;
        }
        Ket ghz(dim);
        ghz[0] = std::numbers::sqrt2 / 2.0;
        ghz[dim - 1] = std::numbers::sqrt2 / 2.0;
        states.push_back(std::move(ghz));
    }
    Ket psi = depth::product_state(partition, states);
    for (int q = 1; q <= n; ++q) {
        psi = rotate_qubit(psi, q, n, random::haar_unitary(2, rng));
    }
    return {std::move(psi), std::move(partition)};
}

OracleReport oracle_equivalence(int trials, int n_max, std::uint64_t seed, double eps_p) {
    if (n_max < 1) {
        throw ValidationError("oracle_equivalence: n_max must be at least 1");
    }
    OracleReport report;
    for (int t = 0; t < trials; ++t) {
        auto rng = random::make_rng(seed, {0x6f7261636c65ULL, static_cast<std::uint64_t>(t)});
        std::uniform_int_distribution<int> pick_n(1, n_max);
        const int n = pick_n(rng);
        const auto planted = random_ghz_product(n, rng);
        const auto greedy = depth::finest_factorization(planted.psi, n, eps_p);
        const auto brute = exhaustive_depth(planted.psi, n, eps_p);
        ++report.trials;
        const bool depth_ok = greedy.depth == brute.depth && brute.depth == planted.partition.max_block_size();
        const bool partition_ok =
            greedy.partition.same_blocks(brute.partition) && brute.partition.same_blocks(planted.partition);
        report.depth_agree += depth_ok;
        report.partition_agree += partition_ok;
        if (!depth_ok || !partition_ok) {
            std::ostringstream os;
            os << "trial " << t << " n=" << n << " planted " << planted.partition.to_string() << " greedy "
               << greedy.partition.to_string() << " exhaustive " << brute.partition.to_string();
            report.failures.push_back(os.str());
        }
    }
    return report;
}

}  // namespace qfront::oracles
