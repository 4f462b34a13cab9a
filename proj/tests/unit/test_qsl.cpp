#include <cmath>
#include <numbers>

#include "doctest.h"

#include "qfront/dynamics.hpp"
#include "qfront/model.hpp"
#include "qfront/qsl.hpp"
#include "qfront/random.hpp"

using namespace qfront;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("cyclic frame of a cluster flip has m + 1 levels") {
    for (int m = 1; m <= 5; ++m) {
        const auto spec = model::ClusterFlipSpec::from_time(model::balanced_partition(5, m), 1.0);
        const auto h = model::cluster_flip_hamiltonian(spec);
        const auto [down, up] = model::endpoint_states(5);
        const auto frame = qsl::cyclic_frame(h, down);
        CHECK(frame.dim_k == static_cast<std::size_t>(m + 1));
        // Restricted spectrum is g (m - 2j), j = 0..m.
        CHECK(frame.e_min_k == doctest::Approx(-m * spec.g).epsilon(1e-12));
        CHECK(frame.restricted_spectrum.back() == doctest::Approx(m * spec.g).epsilon(1e-12));
    }
}

TEST_CASE("cluster-flip speed-limit report") {
    const int n = 6;
    const int m = 3;
    const double T = 2.0;
    const auto spec = model::ClusterFlipSpec::from_time(model::balanced_partition(n, m), T);
    const auto h = model::cluster_flip_hamiltonian(spec);
    const auto [down, up] = model::endpoint_states(n);
    const auto r = qsl::qsl_report(h, down, {T, 0.0, 0.0});
    CHECK_FALSE(r.degenerate);
    CHECK(r.delta_h == doctest::Approx(spec.g * std::sqrt(3.0)).epsilon(1e-13));
    CHECK(r.e_ml == doctest::Approx(3 * spec.g).epsilon(1e-13));
    CHECK(r.tau_mt == doctest::Approx(T / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(r.tau_ml == doctest::Approx(T / 3).epsilon(1e-13));
    CHECK(r.tau_qsl == r.tau_mt);
    REQUIRE(r.eta.has_value());
    CHECK(*r.eta == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-13));
    CHECK(*r.t_charge == T);
}

TEST_CASE("single-qubit flip sits on the speed limit") {
    const HermitianOperator h(ComplexMatrix::from_rows({{0.0, 2.0}, {2.0, 0.0}}));
    const auto r = qsl::qsl_report(h, Ket{1.0, 0.0}, {kPi / 4, 0.0, 0.0});
    CHECK(*r.eta == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.tau_mt == doctest::Approx(r.tau_ml).epsilon(1e-14));
}

TEST_CASE("ML branch can dominate") {
    // psi0 = cos a |0> + sin a |1> with H = diag(0, E): ML energy E sin^2 a
    // falls below delta_h = E sin a cos a once tan a < 1.
    const double E = 1.0;
    const double a = 0.3;
    const HermitianOperator h(ComplexMatrix::from_rows({{0.0, 0.0}, {0.0, E}}));
    const auto r = qsl::qsl_bounds(h, Ket{std::cos(a), std::sin(a)});
    CHECK(r.e_ml == doctest::Approx(E * std::sin(a) * std::sin(a)).epsilon(1e-14));
    CHECK(r.delta_h == doctest::Approx(E * std::sin(a) * std::cos(a)).epsilon(1e-14));
    CHECK(r.tau_qsl == r.tau_ml);
    CHECK_FALSE(r.eta.has_value());
}

TEST_CASE("stationary orbits are flagged degenerate") {
    const auto h = model::battery_hamiltonian({2, 1.0});
    const auto r = qsl::qsl_bounds(h, Ket::basis(4, 3));
    CHECK(r.degenerate);
    CHECK(r.dim_k == 1);
    CHECK(r.delta_h == 0.0);
    CHECK(std::isinf(r.tau_mt));
    CHECK(std::isinf(r.tau_qsl));
    const auto with_event = qsl::qsl_report(h, Ket::basis(4, 3), {1.0, 0.0, 0.0});
    CHECK_FALSE(with_event.eta.has_value());
    CHECK_THROWS_AS(qsl::qsl_report(h, Ket::basis(4, 3), {0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("spectator levels below the orbit do not shift the ML energy") {
    auto rng = random::make_rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const HermitianOperator h(random::random_hermitian(6, rng));
        const auto psi = random::random_state(6, rng);
        const auto base = qsl::qsl_bounds(h, psi);
        const std::vector<double> extra{-50.0, 3.0, 100.0};
        const auto e = model::embed_with_spectator(h, psi, extra);
        const auto padded = qsl::qsl_bounds(e.h, e.psi0);
        CHECK(padded.dim_k == base.dim_k);
        CHECK(padded.tau_mt == doctest::Approx(base.tau_mt).epsilon(1e-10));
        CHECK(padded.tau_ml == doctest::Approx(base.tau_ml).epsilon(1e-10));
        CHECK(padded.tau_qsl == doctest::Approx(base.tau_qsl).epsilon(1e-10));
        // The full-spectrum ground energy would have given a very different answer.
        const double full_ml = expectation(e.h.matrix(), e.psi0).real() + 50.0;
        CHECK(full_ml > 10 * base.e_ml);
    }
}

TEST_CASE("property: charged random product orbits respect the speed limit") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto rng = random::make_rng(seed, {32});
        const int n = 2 + static_cast<int>(seed % 3);
        const auto p = model::balanced_partition(n, 1 + static_cast<int>(seed % n));
        std::vector<double> g;
        std::uniform_int_distribution<int> odd(0, 3);
        for (std::size_t b = 0; b < p.block_count(); ++b) {
            g.push_back((2 * odd(rng) + 1) * kPi / 2);
        }
        const auto h = model::block_flip_hamiltonian(p, g);
        const auto [down, up] = model::endpoint_states(n);
        const auto out = dynamics::find_complete_charging_time(h, down, up, 1.25);
        REQUIRE(std::holds_alternative<dynamics::ChargingEvent>(out));
        const auto r = qsl::qsl_report(h, down, std::get<dynamics::ChargingEvent>(out));
        CHECK(*r.eta <= 1.0 + 1e-12);
        CHECK(r.tau_qsl <= *r.t_charge * (1 + 1e-12));
    }
}
