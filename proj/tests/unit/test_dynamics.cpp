#include <cmath>
#include <numbers>

#include "doctest.h"

#include "qfront/dynamics.hpp"
#include "qfront/model.hpp"
#include "qfront/random.hpp"
#include "support.hpp"

using namespace qfront;
using dynamics::PropagatorMode;
using qfront::testing::infidelity;
using qfront::testing::taylor_evolve;

namespace {

constexpr double kPi = std::numbers::pi;

HermitianOperator cluster_flip(int n, int m, double T) {
    return model::cluster_flip_hamiltonian(model::ClusterFlipSpec::from_time(model::balanced_partition(n, m), T));
}

}  // namespace

TEST_CASE("evolution agrees with a Taylor-series exponential") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto rng = random::make_rng(seed, {10});
        const std::size_t d = 2 + 3 * seed;
        const HermitianOperator h(random::random_hermitian(d, rng));
        const auto psi = random::random_state(d, rng);
        const double t = 0.3 + 0.2 * static_cast<double>(seed);
        const auto exact = taylor_evolve(h.matrix(), psi, t);
        for (const auto mode : {PropagatorMode::cyclic, PropagatorMode::full}) {
            const auto out = dynamics::evolve(h, psi, t, mode);
            double diff = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                diff = std::max(diff, std::abs(out[i] - exact[i]));
            }
            CAPTURE(d);
            CHECK(diff < 1e-10);
            CHECK(norm(out) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("cyclic and full propagators agree on a degenerate cluster flip") {
    const auto h = cluster_flip(6, 2, 1.0);
    const auto [down, up] = model::endpoint_states(6);
    const dynamics::Propagator cyc(h, down, PropagatorMode::cyclic);
    const dynamics::Propagator full(h, down, PropagatorMode::full);
    CHECK(cyc.rank() == 3);
    CHECK(full.rank() == 64);
    const std::vector<double> times{0.0, 0.1, 0.37, 1.0, 1.9};
    const auto a = cyc.states_at(times);
    const auto b = full.states_at(times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(infidelity(a[k], b[k]) < 1e-13);
        CHECK(infidelity(a[k], cyc.state_at(times[k])) == doctest::Approx(0.0));
    }
    CHECK(infidelity(cyc.state_at(1.0), up) < 1e-13);
}

TEST_CASE("propagator input validation") {
    const auto h = cluster_flip(2, 1, 1.0);
    CHECK_THROWS_AS(dynamics::Propagator(h, Ket(3)), ValidationError);
    CHECK_THROWS_AS(dynamics::Propagator(h, Ket(4)), ValidationError);
}

TEST_CASE("cluster-flip orbit matches the closed form") {
    // Each block: cos(gt)|D> - i sin(gt)|U>.
    const double T = 1.0;
    const double g = kPi / (2 * T);
    const auto h = cluster_flip(2, 2, T);
    const double t = 0.3;
    const Ket block{std::cos(g * t), Complex(0.0, -std::sin(g * t))};
    const Ket expected = kron(block, block);
    const auto [down, up] = model::endpoint_states(2);
    CHECK(infidelity(dynamics::evolve(h, down, t), expected) < 1e-14);
}

TEST_CASE("single-qubit flip charges at pi / 2g") {
    const double g = 1.7;
    const HermitianOperator h(ComplexMatrix::from_rows({{0.0, g}, {g, 0.0}}));
    const auto out = dynamics::find_complete_charging_time(h, Ket{1.0, 0.0}, Ket{0.0, 1.0}, 5.0);
    REQUIRE(std::holds_alternative<dynamics::ChargingEvent>(out));
    const auto ev = std::get<dynamics::ChargingEvent>(out);
    CHECK(ev.time == doctest::Approx(kPi / (2 * g)).epsilon(1e-12));
    CHECK(ev.infidelity < 1e-15);
    // <U| e^{-iHT} |D> = -i
    CHECK(ev.phase == doctest::Approx(-kPi / 2).epsilon(1e-12));
}

TEST_CASE("charging search returns the first of several arrivals") {
    const auto h = cluster_flip(3, 1, 0.5);
    const auto [down, up] = model::endpoint_states(3);
    const auto out = dynamics::find_complete_charging_time(h, down, up, 3.0);
    REQUIRE(std::holds_alternative<dynamics::ChargingEvent>(out));
    CHECK(std::get<dynamics::ChargingEvent>(out).time == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("charging outside the horizon or never") {
    const auto [down, up] = model::endpoint_states(3);
    SUBCASE("horizon too short") {
        const auto out = dynamics::find_complete_charging_time(cluster_flip(3, 3, 1.0), down, up, 0.9);
        REQUIRE(std::holds_alternative<dynamics::NotCharged>(out));
        const auto nc = std::get<dynamics::NotCharged>(out);
        CHECK(nc.best_time == doctest::Approx(0.9));
        CHECK(nc.best_infidelity > 0.0);
    }
    SUBCASE("diagonal Hamiltonian") {
        const auto out = dynamics::find_complete_charging_time(model::battery_hamiltonian({3, 1.0}), down, up, 10.0);
        REQUIRE(std::holds_alternative<dynamics::NotCharged>(out));
        CHECK(std::get<dynamics::NotCharged>(out).best_infidelity == doctest::Approx(1.0));
    }
    SUBCASE("partial transfer") {
        // Random three-level mixing never reaches the target exactly.
        const HermitianOperator h(ComplexMatrix::from_rows({{0.0, 1.0, 0.3}, {1.0, 0.5, 0.7}, {0.3, 0.7, -0.2}}));
        const auto out = dynamics::find_complete_charging_time(h, Ket{1.0, 0.0, 0.0}, Ket{0.0, 1.0, 0.0}, 20.0);
        CHECK(std::holds_alternative<dynamics::NotCharged>(out));
    }
    CHECK_THROWS_AS(dynamics::find_complete_charging_time(cluster_flip(3, 3, 1.0), down, up, 0.0), ValidationError);
    CHECK_THROWS_AS(dynamics::find_complete_charging_time(cluster_flip(3, 3, 1.0), down, Ket(4), 1.0),
                    ValidationError);
}

TEST_CASE("unequal odd multiples charge at the common time") {
    const auto p = model::balanced_partition(4, 2);
    const double T = 1.0;
    const std::vector<double> g{kPi / (2 * T), 3 * kPi / (2 * T)};
    const auto h = model::block_flip_hamiltonian(p, g);
    const auto [down, up] = model::endpoint_states(4);
    const auto out = dynamics::find_complete_charging_time(h, down, up, 2.5 * T);
    REQUIRE(std::holds_alternative<dynamics::ChargingEvent>(out));
    CHECK(std::get<dynamics::ChargingEvent>(out).time == doctest::Approx(T).epsilon(1e-12));
}

TEST_CASE("spectral amplitude derivatives match finite differences") {
    auto rng = random::make_rng(21);
    const HermitianOperator h(random::random_hermitian(8, rng));
    const auto psi = random::random_state(8, rng);
    const auto target = random::random_state(8, rng);
    const auto amp = dynamics::Propagator(h, psi, PropagatorMode::full).amplitude_onto(target);
    for (const double t : {0.0, 0.4, 1.3}) {
        const double dt = 1e-6;
        const double fd = (amp.fidelity(t + dt) - amp.fidelity(t - dt)) / (2 * dt);
        CHECK(amp.fidelity_derivative(t) == doctest::Approx(fd).epsilon(1e-6));
        const Complex dv = (amp.value(t + dt) - amp.value(t - dt)) / (2 * dt);
        CHECK(std::abs(amp.derivative(t) - dv) < 1e-7);
        CHECK(std::abs(amp.value(t) - inner(target, dynamics::evolve(h, psi, t))) < 1e-12);
    }
}

TEST_CASE("Fubini-Study speed") {
    SUBCASE("eigenstate is stationary") {
        CHECK(dynamics::fs_speed(model::battery_hamiltonian({2, 1.0}), Ket::basis(4, 1)) == 0.0);
    }
    SUBCASE("cluster flip speed is g sqrt(m)") {
        for (int m = 1; m <= 4; ++m) {
            const auto h = cluster_flip(4, m, 1.0);
            const auto [down, up] = model::endpoint_states(4);
            CHECK(dynamics::fs_speed(h, down) == doctest::Approx(kPi / 2 * std::sqrt(m)).epsilon(1e-14));
        }
    }
    SUBCASE("agrees with sqrt(<H^2> - <H>^2)") {
        auto rng = random::make_rng(22);
        const HermitianOperator h(random::random_hermitian(10, rng));
        const auto psi = random::random_state(10, rng);
        const double e1 = expectation(h.matrix(), psi).real();
        const double e2 = expectation(matmul(h.matrix(), h.matrix()), psi).real();
        CHECK(dynamics::fs_speed(h, psi) == doctest::Approx(std::sqrt(e2 - e1 * e1)).epsilon(1e-12));
    }
}

TEST_CASE("property: speed is constant and path length is delta_h T") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto rng = random::make_rng(seed, {23});
        const std::size_t d = 4 + seed;
        const HermitianOperator h(random::random_hermitian(d, rng));
        const auto psi = random::random_state(d, rng);
        const double v0 = dynamics::fs_speed(h, psi);
        const dynamics::Propagator prop(h, psi);
        for (const double t : {0.5, 1.5, 4.0}) {
            CHECK(dynamics::fs_speed(h, prop.state_at(t)) == doctest::Approx(v0).epsilon(1e-10));
        }
        const double T = 2.0;
        CHECK(dynamics::path_length(h, psi, T) == doctest::Approx(v0 * T).epsilon(1e-9));
    }
}

TEST_CASE("block speeds on a cluster-flip orbit") {
    const int n = 5;
    const int m = 2;
    const double T = 1.0;
    const auto h = cluster_flip(n, m, T);
    const auto [down, up] = model::endpoint_states(n);
    const auto p = model::balanced_partition(n, m);
    const dynamics::Propagator prop(h, down);
    const auto bs = dynamics::block_speeds(prop, p, T);
    const double g = kPi / (2 * T);
    REQUIRE(bs.speeds.size() == 2);
    for (std::size_t i = 0; i < bs.times.size(); ++i) {
        CHECK(bs.speeds[0][i] == doctest::Approx(g).epsilon(1e-8));
        CHECK(bs.speed_squared_sum(i) == doctest::Approx(m * g * g).epsilon(1e-8));
    }
    for (const double len : bs.path_lengths) {
        CHECK(len == doctest::Approx(kPi / 2).epsilon(1e-8));
    }
}

TEST_CASE("block speeds reject an entangling orbit") {
    const auto h = cluster_flip(2, 1, 1.0);
    const auto [down, up] = model::endpoint_states(2);
    const dynamics::Propagator prop(h, down);
    CHECK_THROWS_AS(dynamics::block_speeds(prop, model::BlockPartition::singletons(2), 1.0),
                    dynamics::NonProductSample);
}

TEST_CASE("trajectory samples track fidelity and stored energy") {
    const int n = 3;
    const auto h = cluster_flip(n, 3, 1.0);
    const auto [down, up] = model::endpoint_states(n);
    const dynamics::Propagator prop(h, down);
    const auto battery = model::battery_hamiltonian({n, 1.0});
    const auto samples = dynamics::sample_trajectory(h, prop, up, battery, 1.0, 5);
    REQUIRE(samples.size() == 5);
    CHECK(samples.front().t == 0.0);
    CHECK(samples.back().t == 1.0);
    CHECK(samples.front().energy == doctest::Approx(0.0));
    CHECK(samples.back().energy == doctest::Approx(3.0));
    CHECK(samples.back().fidelity == doctest::Approx(1.0));
    // Each qubit is up with probability sin^2(g t).
    const double g = kPi / 2;
    CHECK(samples[2].energy == doctest::Approx(3 * std::pow(std::sin(g * 0.5), 2)));
    for (const auto& s : samples) {
        CHECK(s.fs_speed == doctest::Approx(g * std::sqrt(3.0)));
    }
}
