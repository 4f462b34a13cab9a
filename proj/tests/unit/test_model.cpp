#include <cmath>
#include <numbers>

#include "doctest.h"

#include "qfront/model.hpp"
#include "support.hpp"

using namespace qfront;
using model::BlockPartition;

TEST_CASE("battery Hamiltonian stores omega per up-spin") {
    const auto h = model::battery_hamiltonian({3, 2.0});
    REQUIRE(h.dim() == 8);
    CHECK(h.matrix()(0, 0).real() == 0.0);
    CHECK(h.matrix()(7, 7).real() == doctest::Approx(6.0));
    CHECK(h.matrix()(5, 5).real() == doctest::Approx(4.0));  // 101
    CHECK(h.matrix()(1, 2) == Complex(0.0));
    CHECK_THROWS_AS(model::battery_hamiltonian({0, 1.0}), ValidationError);
}

TEST_CASE("endpoint states") {
    const auto [down, up] = model::endpoint_states(4);
    CHECK(down[0] == Complex(1.0));
    CHECK(up[15] == Complex(1.0));
    CHECK(norm(down) == 1.0);
    CHECK(inner(down, up) == Complex(0.0));
}

TEST_CASE("block partitions validate their blocks") {
    const BlockPartition p({{3, 1}, {2}}, 3);
    CHECK(p.block(0) == std::vector<int>{1, 3});
    CHECK(p.max_block_size() == 2);
    CHECK(p.mask(0) == 0b101u);
    CHECK(p.to_string() == "{1,3} {2}");
    CHECK_THROWS_AS(BlockPartition({{1, 2}, {2, 3}}, 3), ValidationError);
    CHECK_THROWS_AS(BlockPartition({{1}, {3}}, 3), ValidationError);
    CHECK_THROWS_AS(BlockPartition({{1, 2, 3}, {}}, 3), ValidationError);
    CHECK_THROWS_AS(BlockPartition({{1, 2, 4}}, 3), ValidationError);
    CHECK_THROWS_AS(BlockPartition({{0, 1, 2}}, 3), ValidationError);
}

TEST_CASE("singletons, whole and coarsening") {
    const auto s = BlockPartition::singletons(4);
    const auto w = BlockPartition::whole(4);
    const BlockPartition mid({{1, 2}, {3, 4}}, 4);
    const BlockPartition cross({{1, 3}, {2, 4}}, 4);
    CHECK(s.block_count() == 4);
    CHECK(w.max_block_size() == 4);
    CHECK(mid.is_coarsening_of(s));
    CHECK(w.is_coarsening_of(mid));
    CHECK_FALSE(mid.is_coarsening_of(cross));
    CHECK_FALSE(s.is_coarsening_of(mid));
    CHECK(BlockPartition({{3, 4}, {1, 2}}, 4).same_blocks(mid));
    const std::vector<QubitMask> masks{0b0011u, 0b1100u};
    CHECK(BlockPartition::from_masks(masks, 4) == mid);
}

TEST_CASE("balanced partitions put the larger blocks first") {
    CHECK(model::balanced_partition(5, 2).blocks() == std::vector<std::vector<int>>{{1, 2, 3}, {4, 5}});
    CHECK(model::balanced_partition(10, 3).sizes() == std::vector<int>{4, 3, 3});
    CHECK(model::balanced_partition(4, 4) == BlockPartition::singletons(4));
    CHECK(model::balanced_partition(4, 1) == BlockPartition::whole(4));
    CHECK_THROWS_AS(model::balanced_partition(3, 4), ValidationError);
    CHECK_THROWS_AS(model::balanced_partition(3, 0), ValidationError);
    for (int n = 1; n <= 12; ++n) {
        for (int m = 1; m <= n; ++m) {
            const auto p = model::balanced_partition(n, m);
            CHECK(p.block_count() == static_cast<std::size_t>(m));
            CHECK(p.max_block_size() == (n + m - 1) / m);
        }
    }
}

TEST_CASE("block flip swaps the block's all-down and all-up states") {
    const std::vector<int> block{1, 3};
    const auto x = model::block_flip(block, 3);
    CHECK(x.hermiticity_defect() == 0.0);
    // |down down down> = 0 -> qubits 1 and 3 up = 101 = 5
    const auto out = matvec(x, Ket::basis(8, 0));
    CHECK(out[5] == Complex(1.0));
    // qubit 2 is a spectator: 010 = 2 -> 111 = 7
    CHECK(matvec(x, Ket::basis(8, 2))[7] == Complex(1.0));
    // states with a mixed block are annihilated: 100 = 4
    CHECK(norm(matvec(x, Ket::basis(8, 4))) == 0.0);
}

TEST_CASE("embed_block_operator matches a Kronecker product") {
    const auto sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const std::vector<int> q2{2};
    const auto e = model::embed_block_operator(sx, q2, 2);
    // 1 (x) X
    CHECK(e(0, 1) == Complex(1.0));
    CHECK(e(2, 3) == Complex(1.0));
    CHECK(e(0, 2) == Complex(0.0));
    CHECK_THROWS_AS(model::embed_block_operator(ComplexMatrix::identity(4), q2, 2), ValidationError);
}

TEST_CASE("cluster flip spec ties g and T") {
    const auto p = model::balanced_partition(4, 2);
    const auto a = model::ClusterFlipSpec::from_time(p, 2.0);
    CHECK(a.g == doctest::Approx(std::numbers::pi / 4.0));
    const auto b = model::ClusterFlipSpec::from_coupling(p, std::numbers::pi);
    CHECK(b.T == doctest::Approx(0.5));
    CHECK_THROWS_AS(model::ClusterFlipSpec::from_time(p, 0.0), ValidationError);
    CHECK_THROWS_AS(model::ClusterFlipSpec::from_coupling(p, -1.0), ValidationError);
    model::ClusterFlipSpec bad{p, 1.0, 1.0};
    CHECK_THROWS_AS(model::cluster_flip_hamiltonian(bad), ValidationError);
    const auto h = model::cluster_flip_hamiltonian(a);
    CHECK(h.matrix()(0, 0b1100) == Complex(a.g));
    CHECK(h.matrix()(0, 0b0011) == Complex(a.g));
    CHECK(h.matrix()(0, 0b1111) == Complex(0.0));
}

TEST_CASE("block flip Hamiltonian needs one coupling per block") {
    const auto p = model::balanced_partition(4, 2);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(model::block_flip_hamiltonian(p, one), ValidationError);
}

TEST_CASE("dense size guard") {
    CHECK_NOTHROW(model::require_dense_size(kMaxDenseQubits));
    CHECK_THROWS_AS(model::require_dense_size(kMaxDenseQubits + 1), model::SizeError);
    CHECK_THROWS_AS(model::battery_hamiltonian({13, 1.0}), model::SizeError);
}

TEST_CASE("spectator embedding pads with a diagonal block") {
    const auto h = model::battery_hamiltonian({1, 1.0});
    const Ket psi{1.0, 0.0};
    const std::vector<double> extra{-3.0, 7.0};
    const auto e = model::embed_with_spectator(h, psi, extra);
    REQUIRE(e.h.dim() == 4);
    CHECK(e.h.matrix()(2, 2).real() == -3.0);
    CHECK(e.h.matrix()(3, 3).real() == 7.0);
    CHECK(e.h.matrix()(1, 1).real() == 1.0);
    CHECK(e.psi0.dim() == 4);
    CHECK(e.psi0[0] == Complex(1.0));
    CHECK(e.psi0[2] == Complex(0.0));
    CHECK_THROWS_AS(model::embed_with_spectator(h, Ket(3), extra), ValidationError);
}
