#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "casimir/cavity.hpp"
#include "casimir/constants.hpp"

using namespace casimir;
using Catch::Approx;

namespace {
const DielectricModel gold = DielectricModel::drude(ev_to_angular(9.0), ev_to_angular(0.035));
const CavityConfig cav{250e-9, semi_infinite, 300.0, gold};
}  // namespace

TEST_CASE("config validation") {
    CHECK_THROWS_AS(CavityConfig(0.0, semi_infinite, 300.0, gold), invalid_configuration);
    CHECK_THROWS_AS(CavityConfig(250e-9, semi_infinite, 0.0, gold), invalid_configuration);
    CHECK_THROWS_AS(CavityConfig(250e-9, 0.0, 300.0, gold), invalid_configuration);
}

TEST_CASE("open loop on the imaginary axis is a real contraction") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> xs(-2.0, 1.0), ks(5.0, 7.5);
    for (int i = 0; i < 1000; ++i) {
        const double xi = gold.omega_p * std::pow(10.0, xs(rng));
        const double k = std::pow(10.0, ks(rng));
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const Complex rho = open_loop(cav, {k, pol, Complex(0.0, xi)});
            CHECK(rho.imag() == 0.0);
            CHECK(rho.real() >= 0.0);
            CHECK(rho.real() < 1.0);
        }
    }
}

TEST_CASE("closed loop pinned values") {
    // f = rho/(1-rho): check against directly computed rho
    const ModeCoordinate mode{2e6, Polarization::TM, Complex(0.0, 1e14)};
    const Complex rho = open_loop(cav, mode);
    const Complex f = closed_loop(cav, mode);
    CHECK(std::abs(f - rho / (1.0 - rho)) < 1e-15 * std::abs(f));
    CHECK(f.real() >= 0.0);
}

TEST_CASE("energy ratio: two formulas agree and bracket amplification") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> ws(11.0, 16.3), ks(4.0, 7.8);
    int n_res = 0, n_out = 0;
    for (int i = 0; i < 1500; ++i) {
        const double w = std::pow(10.0, ws(rng));
        const double k = std::pow(10.0, ks(rng));
        const auto pol = (i % 2 == 0) ? Polarization::TE : Polarization::TM;
        const ModeCoordinate mode{k, pol, Complex(w, 0.0)};
        const double g = energy_ratio(cav, mode);
        const Complex f = closed_loop(cav, mode);
        const double g2 = 1.0 + 2.0 * f.real();
        CHECK(g == Approx(g2).epsilon(1e-12).margin(1e-12));
        (g > 1.0 ? n_res : n_out)++;
    }
    // both resonant and non-resonant samples must occur
    CHECK(n_res > 10);
    CHECK(n_out > 10);
}

TEST_CASE("energy ratio arithmetic cases") {
    // rho = 0 -> g = 1 ; rho = -1/2 -> g = 1/3 (pure arithmetic on the formula)
    auto g_of_rho = [](Complex rho) {
        return (1.0 - std::norm(rho)) / std::norm(Complex(1.0, 0.0) - rho);
    };
    CHECK(g_of_rho({0.0, 0.0}) == 1.0);
    CHECK(g_of_rho({-0.5, 0.0}) == Approx(1.0 / 3.0).epsilon(1e-15));
    // f(rho=-1) = -1/2, f(rho->1-) blows up
    CHECK(Complex(-1.0, 0.0) / (1.0 - Complex(-1.0, 0.0)) == Complex(-0.5, 0.0));
}

TEST_CASE("photon weight") {
    const double T = 300.0;
    const double x = codata.hbar / (2.0 * codata.k_B * T);  // maps z to w = x z

    // zero-temperature limit C -> 1 for large real argument
    CHECK(photon_weight(T, Complex(50.0 / x, 0.0)).real() == Approx(1.0).epsilon(1e-15));
    // oddness C(-z) = -C(z)
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> zz(-2.0, 2.0);
    const double xi1 = matsubara_frequency(1, T);
    for (int i = 0; i < 1000; ++i) {
        const Complex z = Complex(zz(rng), zz(rng)) * xi1;
        if (std::abs(z) < 1e-3 * xi1) continue;
        const double dist = std::abs(z.imag() - xi1 * std::round(z.imag() / xi1));
        if (std::hypot(z.real(), dist) < 1e-3 * xi1) continue;
        const Complex a = photon_weight(T, z);
        const Complex b = photon_weight(T, -z);
        CHECK(std::abs(a + b) < 1e-10 * std::abs(a));
    }
    // near-pole evaluation raises with the index attached
    try {
        photon_weight(T, Complex(0.0, 2.0 * xi1 * (1.0 + 1e-16)));
        FAIL("expected singular_evaluation");
    } catch (const singular_evaluation& e) {
        CHECK(e.matsubara_index == 2);
    }
}

TEST_CASE("spectral density mirror symmetry") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> zz(-1.5, 1.5), ks(4.5, 7.5);
    const double scale = gold.omega_p;
    int checked = 0;
    for (int i = 0; i < 2500 && checked < 1200; ++i) {
        Complex z = Complex(zz(rng), zz(rng)) * scale;
        const double k = std::pow(10.0, ks(rng));
        if (std::abs(z.imag()) < 1e-5 * scale) continue;  // stay off the cut
        const double xi1 = matsubara_frequency(1, 300.0);
        if (std::abs(z.real()) < 0.05 * xi1 &&
            std::abs(z.imag() - xi1 * std::round(z.imag() / xi1)) < 0.05 * xi1)
            continue;  // keep clear of Matsubara poles
        const auto pol = (i % 2 == 0) ? Polarization::TE : Polarization::TM;
        const Complex p = spectral_density(cav, {k, pol, z});
        const Complex pm = std::conj(spectral_density(cav, {k, pol, -std::conj(z)}));
        CHECK(std::abs(pm - p) <= 1e-10 * std::abs(p));
        ++checked;
    }
    CHECK(checked >= 1200);
}

TEST_CASE("parity on the real axis: Re p even, Im p odd") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ws(10.5, 16.3), ks(4.5, 7.5);
    for (int i = 0; i < 1200; ++i) {
        const double w = std::pow(10.0, ws(rng));
        const double k = std::pow(10.0, ks(rng));
        const auto pol = (i % 2 == 0) ? Polarization::TE : Polarization::TM;
        const Complex pp = spectral_density(cav, {k, pol, Complex(w, 0.0)});
        const Complex pm = spectral_density(cav, {k, pol, Complex(-w, 0.0)});
        CHECK(pm.real() == Approx(pp.real()).epsilon(1e-11).margin(1e-300));
        CHECK(pm.imag() == Approx(-pp.imag()).epsilon(1e-11).margin(1e-300));
    }
}

TEST_CASE("drude TE spectral density vanishes linearly at the origin") {
    const double k = 2e6;
    const Complex p1 = spectral_density(cav, {k, Polarization::TE, Complex(1e-5 * gold.gamma, 0.0)});
    const Complex p2 = spectral_density(cav, {k, Polarization::TE, Complex(2e-5 * gold.gamma, 0.0)});
    CHECK(std::abs(p2) > 1.5 * std::abs(p1));  // ~ linear growth from zero
    CHECK(std::abs(p1) < 1e-3 * codata.k_B * 300.0 * k * codata.hbar / codata.hbar);
}

TEST_CASE("drude TM spectral density keeps the 1/omega pole at the origin") {
    const double k = 2e6;
    const Complex pa = spectral_density(cav, {k, Polarization::TM, Complex(1e-6 * gold.gamma, 0.0)});
    const Complex pb = spectral_density(cav, {k, Polarization::TM, Complex(2e-6 * gold.gamma, 0.0)});
    // Im p ~ 1/omega: halves when omega doubles
    CHECK(pa.imag() == Approx(2.0 * pb.imag()).epsilon(1e-3));
    CHECK(std::abs(pa.imag()) > 1e3 * std::abs(pa.real()));
}
