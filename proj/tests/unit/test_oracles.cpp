#include "doctest.h"

#include "qfront/depth.hpp"
#include "qfront/oracles.hpp"
#include "support.hpp"

using namespace qfront;

TEST_CASE("set partitions are counted by the Bell numbers") {
    const std::size_t bell[] = {1, 2, 5, 15, 52, 203, 877};
    for (int n = 1; n <= 7; ++n) {
        const auto all = oracles::all_set_partitions(n);
        CHECK(all.size() == bell[n - 1]);
        for (std::size_t i = 0; i < all.size(); ++i) {
            for (std::size_t j = i + 1; j < std::min<std::size_t>(all.size(), i + 5); ++j) {
                CHECK_FALSE(all[i].same_blocks(all[j]));
            }
        }
    }
    CHECK(oracles::all_set_partitions(0).empty());
}

TEST_CASE("exhaustive search on known states") {
    CHECK(oracles::exhaustive_depth(testing::ghz(4), 4).depth == 4);
    CHECK(oracles::exhaustive_depth(model::endpoint_states(4).down, 4).partition ==
          model::BlockPartition::singletons(4));
    const auto planted_partition = model::BlockPartition({{1, 4}, {2, 3}}, 4);
    const std::vector<Ket> blocks{testing::ghz(2), testing::ghz(2)};
    const auto r = oracles::exhaustive_depth(depth::product_state(planted_partition, blocks), 4);
    CHECK(r.depth == 2);
    CHECK(r.partition.same_blocks(planted_partition));
    CHECK(r.partitions_tested == 15);
}

TEST_CASE("planted states factor as planted") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = random::make_rng(seed, {50});
        const auto s = oracles::random_ghz_product(5, rng);
        CHECK(norm(s.psi) == doctest::Approx(1.0));
        CHECK(depth::is_product_across(s.psi, s.partition));
    }
}

TEST_CASE("greedy factorization agrees with exhaustive search") {
    const auto r = oracles::oracle_equivalence(100, 6, 2024);
    CHECK(r.trials == 100);
    CHECK(r.depth_agree == 100);
    CHECK(r.partition_agree == 100);
    CHECK(r.pass());
    CHECK_THROWS_AS(oracles::oracle_equivalence(1, 0, 0), ValidationError);
}
