#include <cmath>
#include <numbers>

#include "doctest.h"

#include "qfront/depth.hpp"
#include "qfront/model.hpp"
#include "qfront/oracles.hpp"
#include "qfront/random.hpp"
#include "support.hpp"

using namespace qfront;
using model::BlockPartition;
using qfront::testing::ghz;
using qfront::testing::infidelity;
using qfront::testing::kDown;
using qfront::testing::kUp;
using qfront::testing::product_of;

namespace {

HermitianOperator cluster_flip(int n, int m, double T) {
    return model::cluster_flip_hamiltonian(model::ClusterFlipSpec::from_time(model::balanced_partition(n, m), T));
}

}  // namespace

TEST_CASE("finest factorization of simple states") {
    SUBCASE("all down") {
        const auto f = depth::finest_factorization(model::endpoint_states(5).down, 5);
        CHECK(f.depth == 1);
        CHECK(f.partition == BlockPartition::singletons(5));
        for (const double p : f.purities) {
            CHECK(p == doctest::Approx(1.0));
        }
    }
    SUBCASE("GHZ is one block") {
        for (int n = 2; n <= 7; ++n) {
            const auto f = depth::finest_factorization(ghz(n), n);
            CHECK(f.depth == n);
            CHECK(f.partition.block_count() == 1);
        }
    }
    SUBCASE("interleaved Bell pairs") {
        // Bell pair on qubits {1,3}, |up> on 2, Bell pair on {4,5}.
        const auto bell = ghz(2);
        const BlockPartition p({{1, 3}, {2}, {4, 5}}, 5);
        const std::vector<Ket> states{bell, kUp, bell};
        const auto f = depth::finest_factorization(depth::product_state(p, states), 5);
        CHECK(f.partition == p);
        CHECK(f.depth == 2);
    }
    SUBCASE("single qubit") {
        CHECK(depth::finest_factorization(Ket{0.6, 0.8}, 1).depth == 1);
    }
}

TEST_CASE("cluster-flip state at T/2 has two blocks of two") {
    const auto h = cluster_flip(4, 2, 1.0);
    const auto [down, up] = model::endpoint_states(4);
    const auto f = depth::finest_factorization(dynamics::evolve(h, down, 0.5), 4);
    CHECK(f.depth == 2);
    CHECK(f.partition == model::balanced_partition(4, 2));
}

TEST_CASE("is_product_across") {
    const auto bell = ghz(2);
    CHECK_FALSE(depth::is_product_across(bell, BlockPartition::singletons(2)));
    CHECK(depth::is_product_across(bell, BlockPartition::whole(2)));
    const auto h = cluster_flip(6, 3, 1.0);
    const auto [down, up] = model::endpoint_states(6);
    const dynamics::Propagator prop(h, down);
    for (const double t : {0.1, 0.33, 0.5, 0.91}) {
        const auto check = depth::is_product_across(prop.state_at(t), model::balanced_partition(6, 3));
        CHECK(check.product);
        CHECK(check.purities.size() == 3);
    }
    CHECK_THROWS_AS(depth::is_product_across(bell, BlockPartition::whole(3)), ValidationError);
}

TEST_CASE("extract_block_state") {
    SUBCASE("product basis state") {
        const auto psi = product_of({kDown, kUp});
        const std::vector<int> block{2};
        const auto b = depth::extract_block_state(psi, block, 2);
        CHECK(std::abs(b[1] - Complex(1.0)) < 1e-14);
        CHECK(std::abs(b[0]) < 1e-14);
    }
    SUBCASE("cluster-flip block follows cos(gt)|D> - i sin(gt)|U>") {
        const double T = 1.0;
        const double g = std::numbers::pi / (2 * T);
        const auto h = cluster_flip(5, 2, T);
        const auto [down, up] = model::endpoint_states(5);
        const double t = 0.2;
        const auto psi = dynamics::evolve(h, down, t);
        const std::vector<int> block{4, 5};
        const auto b = depth::extract_block_state(psi, block, 5);
        const Ket expected{std::cos(g * t), 0.0, 0.0, Complex(0.0, -std::sin(g * t))};
        CHECK(infidelity(b, expected) < 1e-13);
        // Largest amplitude made real and positive.
        CHECK(b[0].real() > 0.0);
        CHECK(std::abs(b[0].imag()) < 1e-15);
    }
    SUBCASE("mixed reduction is rejected") {
        const std::vector<int> block{1};
        CHECK_THROWS_AS(depth::extract_block_state(ghz(2), block, 2), ValidationError);
    }
}

TEST_CASE("property: product of extracted blocks reconstructs the state") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        auto rng = random::make_rng(seed, {40});
        const int n = 1 + static_cast<int>(seed % 7);
        const auto planted = oracles::random_ghz_product(n, rng);
        const auto f = depth::finest_factorization(planted.psi, n);
        std::vector<Ket> blocks;
        for (const auto& b : f.partition.blocks()) {
            blocks.push_back(depth::extract_block_state(planted.psi, b, n));
        }
        const auto rebuilt = depth::product_state(f.partition, blocks);
        CHECK(infidelity(rebuilt, planted.psi) <= 10 * kDefaultTolerances.eps_p);
        CHECK(infidelity(rebuilt, planted.psi) < 1e-12);
    }
}

TEST_CASE("property: product certificates survive coarsening") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = random::make_rng(seed, {41});
        const int n = 2 + static_cast<int>(seed % 5);
        const auto planted = oracles::random_ghz_product(n, rng);
        REQUIRE(depth::is_product_across(planted.psi, planted.partition));
        for (const auto& coarse : oracles::all_set_partitions(n)) {
            if (coarse.is_coarsening_of(planted.partition)) {
                CHECK(depth::is_product_across(planted.psi, coarse));
            }
        }
    }
}

TEST_CASE("property: the finest partition is minimal") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = random::make_rng(seed, {42});
        const int n = 2 + static_cast<int>(seed % 5);
        const auto planted = oracles::random_ghz_product(n, rng);
        const auto f = depth::finest_factorization(planted.psi, n);
        for (const auto& p : oracles::all_set_partitions(n)) {
            if (f.partition.is_coarsening_of(p) && !(p.same_blocks(f.partition))) {
                CHECK_FALSE(depth::is_product_across(planted.psi, p));
            }
        }
    }
}

TEST_CASE("generic random states have full depth") {
    auto rng = random::make_rng(43);
    for (int n = 2; n <= 6; ++n) {
        CHECK(depth::finest_factorization(random::random_state(std::size_t{1} << n, rng), n).depth == n);
    }
}

TEST_CASE("trajectory depth of cluster flips") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 1; m <= n; ++m) {
            const auto h = cluster_flip(n, m, 1.0);
            const auto [down, up] = model::endpoint_states(n);
            const auto prof = depth::trajectory_depth(h, down, 1.0, {.samples = 33});
            CAPTURE(n);
            CAPTURE(m);
            CHECK(prof.ent_u == (n + m - 1) / m);
            CHECK(prof.depths.front() == 1);
            CHECK(prof.depths.back() == 1);
            CHECK(prof.ent_u == *std::max_element(prof.depths.begin(), prof.depths.end()));
            CHECK(prof.times.size() == 33);
            if (prof.ent_u > 1) {
                CHECK(prof.witness_time > 0.0);
                CHECK(prof.witness_time < 1.0);
            } else {
                CHECK(prof.witness_time == 0.0);
            }
        }
    }
}

TEST_CASE("trajectory depth refinement keeps the grid maximum") {
    const auto h = cluster_flip(4, 2, 1.0);
    const auto [down, up] = model::endpoint_states(4);
    const auto prof = depth::trajectory_depth(h, down, 1.0, {.samples = 5, .refine_levels = 3});
    CHECK(prof.ent_u == 2);
    CHECK(prof.times.size() > 5);
    CHECK(std::is_sorted(prof.times.begin(), prof.times.end()));
    CHECK_THROWS_AS(depth::trajectory_depth(h, down, 1.0, {.samples = 2}), ValidationError);
}
