#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "autopump/topology.hpp"
#include "oracles.hpp"

using namespace autopump::topology;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("Bloch matrix and closed-form bands") {
    for (double eta : {0.0, 0.5, 0.95})
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) {
                const double k = -kPi + 2 * kPi * (i + 1) / 32, phi = 2 * kPi * j / 32;
                const auto b = bloch_h(k, phi, eta, 1.3);
                CHECK((b.h - b.h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
                CHECK((b.h - oracle::bloch(k, phi, eta, 1.3)).cwiseAbs().maxCoeff() < 1e-14);
                Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(b.h);
                const double e = band_energy(k, phi, eta, 1.3);
                CHECK(std::abs(es.eigenvalues()(0) + e) < 1e-12);
                CHECK(std::abs(es.eigenvalues()(1) - e) < 1e-12);
            }
    const auto q = bloch_h(0.7, kPi / 2, 0.95, 1.0);
    CHECK(q.dz == doctest::Approx(0.95));
    CHECK(q.dy == doctest::Approx(0.5 * std::sin(0.7)));
    for (double k : {0.0, 1.0, 2.5, kPi}) CHECK(band_energy(k, 0.3, 0.0, 1.0) == doctest::Approx(std::abs(std::cos(k / 2))));
}

TEST_CASE("band states and gauge") {
    const double eta = 0.95;
    // phi = pi/2, k = 0: h = J eta sz - J sx; lower state (1, eta + sqrt(1 + eta^2)) up to normalisation.
    const auto u = band_state(0.0, kPi / 2, eta, 1.0, Band::lower);
    Eigen::Vector2cd ref(1.0, eta + std::sqrt(1 + eta * eta));
    ref.normalize();
    CHECK((u - ref).norm() < 1e-12);
    CHECK(u(0).imag() == 0.0);
    CHECK(u(0).real() > 0.0);

    for (double k : {-2.0, 0.3, 1.7, kPi})
        for (double phi : {0.1, 2.0, 4.5}) {
            const auto lo = band_state(k, phi, eta, 1.0, Band::lower);
            const auto hi = band_state(k, phi, eta, 1.0, Band::upper);
            CHECK(std::abs(lo.dot(hi)) < 1e-12);
            const auto again = band_state(k, phi, eta, 1.0, Band::lower);
            CHECK(lo == again);
        }
    // k = pi, phi = pi/2: h = J eta sz, so the lower state is (0, 1) and the gauge uses the second entry.
    const auto pole = band_state(kPi, kPi / 2, eta, 1.0, Band::lower);
    CHECK(std::abs(pole(0)) < 1e-12);
    CHECK(pole(1).imag() == 0.0);
    CHECK(pole(1).real() == doctest::Approx(1.0));

    CHECK_THROWS_AS(band_state(kPi, 0.0, 0.0, 1.0, Band::lower), GapClosure);
}

TEST_CASE("Zak phase") {
    const double eta = 0.95, phi = kPi / 4;
    std::vector<Eigen::Vector2cd> states;
    for (int i = 0; i < 64; ++i) states.push_back(band_state(2 * kPi * i / 64, phi, eta, 1.0, Band::lower));
    const double base = wilson_loop_phase(states);
    CHECK(base == doctest::Approx(zak_phase(phi, eta, 1.0, 64)));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (auto& s : states) s *= std::polar(1.0, angle(rng));
    CHECK(std::abs(std::remainder(wilson_loop_phase(states) - base, 2 * kPi)) < 1e-10);

    // The link product converges as n_k^-2: doubling cuts the change by four, and the change
    // drops below 1e-8 from n_k = 4096.
    const double d1 = std::abs(zak_phase(phi, eta, 1.0, 128) - zak_phase(phi, eta, 1.0, 64));
    const double d2 = std::abs(zak_phase(phi, eta, 1.0, 256) - zak_phase(phi, eta, 1.0, 128));
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.02));
    CHECK(std::abs(zak_phase(phi, eta, 1.0, 8192) - zak_phase(phi, eta, 1.0, 4096)) < 1e-8);
    CHECK_THROWS(zak_phase(phi, eta, 1.0, 32));

    const auto w = zak_winding(eta, 1.0, 64, 64);
    CHECK(w.rounded == 1);
    CHECK(std::abs(w.winding - 1.0) < 1e-10);
    CHECK(w.phases.size() == 65);
}

TEST_CASE("Chern number") {
    for (int n : {32, 64, 128}) {
        const auto c = chern_number(0.95, 1.0, n, n);
        CHECK(c.chern == 1);
        CHECK(std::abs(c.raw - 1.0) < 1e-10);
        CHECK(c.plaquette_fluxes.size() == static_cast<std::size_t>(n * n));
        for (double f : c.plaquette_fluxes) CHECK((f >= -kPi && f <= kPi));
        CHECK(c.min_gap_on_grid > 0.0);
    }
    CHECK(chern_number(0.5, 1.0, 64, 64).chern == 1);
    CHECK(chern_number(0.95, 1.0, 48, 20).chern == 1);
    // Orientation: the plaquette sum reproduces the curvature integral.
    CHECK(oracle::kubo_chern(0.95, 1.0, 200) == doctest::Approx(chern_number(0.95, 1.0, 64, 64).chern).epsilon(1e-3));
    CHECK(zak_winding(0.5, 1.0, 64, 64).rounded == chern_number(0.5, 1.0, 64, 64).chern);

    try {
        chern_number(0.0, 1.0, 64, 64);
        FAIL("expected gap closure");
    } catch (const GapClosure& e) {
        CHECK(e.k == doctest::Approx(kPi));
        CHECK(e.gap < 1e-10);
    }
}

TEST_CASE("driven Rice-Mele pump") {
    const auto r = driven_rmm_pump(0.5, 200.0, 0.05, 32);
    CHECK(std::abs(r.delta_n - 1.0) < 0.01);
    CHECK(r.adiabatic);
    CHECK(r.min_gap == doctest::Approx(1.0).epsilon(1e-6));

    PumpOptions off;
    off.gamma_offset = 1.0;
    CHECK(std::abs(driven_rmm_pump(0.5, 200.0, 0.05, 32, off).delta_n) < 0.01);
    PumpOptions rev;
    rev.orientation = -1;
    CHECK(std::abs(driven_rmm_pump(0.5, 200.0, 0.05, 32, rev).delta_n + 1.0) < 0.01);

    const auto fast = driven_rmm_pump(0.5, 10.0, 0.05, 16);
    CHECK_FALSE(fast.adiabatic);
    CHECK_FALSE(fast.warning.empty());
    CHECK_THROWS(driven_rmm_pump(0.5, 200.0, 0.05, 31));
}
