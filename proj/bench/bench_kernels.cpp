// Parallel kernels against their serial references.

#include <omp.h>

#include <benchmark/benchmark.h>

#include "qfront/depth.hpp"
#include "qfront/harness.hpp"
#include "qfront/model.hpp"
#include "qfront/numkit.hpp"
#include "qfront/random.hpp"

using namespace qfront;

namespace {

void BM_Matvec(benchmark::State& state) {
    const std::size_t d = std::size_t{1} << state.range(0);
    auto rng = random::make_rng(1);
    const auto h = random::random_hermitian(d, rng);
    const auto v = random::random_state(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(matvec(h, v));
    }
}

void BM_MatvecReference(benchmark::State& state) {
    const std::size_t d = std::size_t{1} << state.range(0);
    auto rng = random::make_rng(1);
    const auto h = random::random_hermitian(d, rng);
    const auto v = random::random_state(d, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::matvec(h, v));
    }
}

void BM_EigenHouseholderQL(benchmark::State& state) {
    auto rng = random::make_rng(2);
    const auto h = random::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eigendecomposition(h));
    }
}

void BM_EigenJacobiReference(benchmark::State& state) {
    auto rng = random::make_rng(2);
    const auto h = random::random_hermitian(static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::jacobi_eigendecomposition(h));
    }
}

void BM_SubsystemPurity(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto rng = random::make_rng(3);
    const auto psi = random::random_state(std::size_t{1} << n, rng);
    const QubitMask half = (QubitMask{1} << (n / 2)) - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(subsystem_purity(psi, half, n));
    }
}

void BM_SubsystemPurityReference(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto rng = random::make_rng(3);
    const auto psi = random::random_state(std::size_t{1} << n, rng);
    const QubitMask half = (QubitMask{1} << (n / 2)) - 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(reference::subsystem_purity(psi, half, n));
    }
}

void BM_TrajectoryDepth(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto h =
        model::cluster_flip_hamiltonian(model::ClusterFlipSpec::from_time(model::balanced_partition(n, 2), 1.0));
    const auto down = model::endpoint_states(n).down;
    const dynamics::Propagator prop(h, down);
    for (auto _ : state) {
        benchmark::DoNotOptimize(depth::trajectory_depth(prop, n, 1.0, {.samples = 33}));
    }
}

// range(1): thread count, 0 for the runtime default.
void BM_Fleet(benchmark::State& state) {
    const int saved = omp_get_max_threads();
    if (state.range(1) > 0) {
        omp_set_num_threads(static_cast<int>(state.range(1)));
    }
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(frontier::randomized_product_fleet(n, 2, 16, 1));
    }
    omp_set_num_threads(saved);
}

}  // namespace

BENCHMARK(BM_Matvec)->DenseRange(8, 12, 2);
BENCHMARK(BM_MatvecReference)->DenseRange(8, 12, 2);
BENCHMARK(BM_EigenHouseholderQL)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_EigenJacobiReference)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_SubsystemPurity)->Arg(6)->Arg(10);
BENCHMARK(BM_SubsystemPurityReference)->Arg(6)->Arg(10);
BENCHMARK(BM_TrajectoryDepth)->Arg(6)->Arg(10);
BENCHMARK(BM_Fleet)->Args({6, 1})->Args({6, 0});

BENCHMARK_MAIN();
