#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/materials.hpp"

using namespace casimir;
using Catch::Approx;

namespace {
const DielectricModel gold = DielectricModel::drude(ev_to_angular(9.0), ev_to_angular(0.035));
const DielectricModel gold_plasma = DielectricModel::plasma(ev_to_angular(9.0));

Complex random_z(std::mt19937& rng, double scale) {
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-2.0, 2.0);
    return {re(rng) * scale, im(rng) * scale};
}
}  // namespace

TEST_CASE("model invariants") {
    CHECK(gold.static_conductivity() == Approx(gold.omega_p * gold.omega_p / gold.gamma));
    CHECK_THROWS_AS(gold_plasma.static_conductivity(), invalid_configuration);
    CHECK_THROWS_AS(DielectricModel::drude(0.0, 1.0), invalid_configuration);
    CHECK_THROWS_AS(DielectricModel::drude(1.0, 0.0), invalid_configuration);
}

TEST_CASE("permittivity on the imaginary axis is real and > 1") {
    const double xi1 = matsubara_frequency(1, 300.0);
    const Complex e = permittivity(gold, Complex(0.0, xi1));
    CHECK(e.imag() == 0.0);
    CHECK(e.real() == Approx(2526.7564496755135).epsilon(1e-12));

    const Complex ep = permittivity(gold_plasma, Complex(0.0, xi1));
    CHECK(ep.real() ==
          Approx(1.0 + gold_plasma.omega_p * gold_plasma.omega_p / (xi1 * xi1)).epsilon(1e-14));
}

TEST_CASE("permittivity high-frequency transparency") {
    const Complex e = permittivity(gold, Complex(1e3 * gold.omega_p, 0.0));
    CHECK(std::abs(e - 1.0) < 2e-6);
}

TEST_CASE("permittivity poles raise") {
    CHECK_THROWS_AS(permittivity(gold, Complex(0.0, 0.0)), singular_evaluation);
    CHECK_THROWS_AS(permittivity(gold, Complex(0.0, -gold.gamma)), singular_evaluation);
}

TEST_CASE("vacuum_kz sector conventions") {
    const double k = 2e6;
    const double ck = codata.c * k;

    const Complex prop = vacuum_kz(Complex(2.0 * ck, 0.0), k);
    CHECK(prop.imag() == 0.0);
    CHECK(prop.real() == Approx(std::sqrt(3.0) * k).epsilon(1e-14));

    const Complex propm = vacuum_kz(Complex(-2.0 * ck, 0.0), k);
    CHECK(propm.real() == Approx(-std::sqrt(3.0) * k).epsilon(1e-14));

    const Complex evan = vacuum_kz(Complex(0.5 * ck, 0.0), k);
    CHECK(evan.real() == 0.0);
    CHECK(evan.imag() == Approx(std::sqrt(3.0) / 2.0 * k).epsilon(1e-14));

    // evanescent values are even in omega (continuation from above)
    const Complex evanm = vacuum_kz(Complex(-0.5 * ck, 0.0), k);
    CHECK(evanm.imag() == Approx(evan.imag()).epsilon(1e-14));

    const double xi = 1e14;
    const Complex axis = vacuum_kz(Complex(0.0, xi), k);
    CHECK(axis.real() == 0.0);
    CHECK(axis.imag() == Approx(std::hypot(k, xi / codata.c)).epsilon(1e-14));

    CHECK(vacuum_kz(Complex(0.0, 0.0), k) == Complex(0.0, k));
    CHECK(vacuum_kz(Complex(0.0, 0.0), 0.0) == Complex(0.0, 0.0));
}

TEST_CASE("medium_Kz branch") {
    const double k = 2e6;
    const double xi = 1e14;
    const Complex K = medium_Kz(gold_plasma, Complex(0.0, xi), k);
    const double wp = gold_plasma.omega_p;
    CHECK(K.real() == 0.0);
    CHECK(K.imag() ==
          Approx(std::sqrt(xi * xi / (codata.c * codata.c) + wp * wp / (codata.c * codata.c) +
                           k * k))
              .epsilon(1e-14));

    // vacuum limit at high frequency
    const double w = 500.0 * gold.omega_p;
    CHECK(std::abs(medium_Kz(gold, Complex(w, 0.0), k) - vacuum_kz(Complex(w, 0.0), k)) <
          1e-5 * (w / codata.c));

    // Drude low-frequency limit: eps w^2 -> 0, K_z -> i k
    const Complex K0 = medium_Kz(gold, Complex(1e-3, 0.0), k);
    CHECK(std::abs(K0 - Complex(0.0, k)) < 1e-9 * k);

    // Im K_z >= 0 just above the real axis (decaying into the medium)
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> wr(1e12, 3e16);
    for (int i = 0; i < 300; ++i) {
        const Complex Kz = medium_Kz(gold, Complex(wr(rng), 0.0), k);
        CHECK(Kz.imag() >= 0.0);
    }
}

TEST_CASE("fresnel pinned values") {
    const double k = 2e6;
    // plasma TE at z = 0 stays reflective
    const double km = std::hypot(k, gold_plasma.omega_p / codata.c);
    const Complex r0 = fresnel_reflection(gold_plasma, Complex(0.0, 0.0), k, Polarization::TE);
    CHECK(r0.real() == Approx((k - km) / (k + km)).epsilon(1e-14));
    CHECK(r0.real() != 0.0);

    // Drude TE vanishes at the origin, linearly in omega
    CHECK(fresnel_reflection(gold, Complex(0.0, 0.0), k, Polarization::TE) == Complex(0.0, 0.0));
    const Complex rsmall =
        fresnel_reflection(gold, Complex(1e-4 * gold.gamma, 0.0), k, Polarization::TE);
    const Complex rsmall2 =
        fresnel_reflection(gold, Complex(2e-4 * gold.gamma, 0.0), k, Polarization::TE);
    CHECK(std::abs(rsmall) < 0.05);
    CHECK(std::abs(rsmall2) == Approx(2.0 * std::abs(rsmall)).epsilon(5e-3));

    // normal incidence, k = 0: plasma TE -> -1 at z = 0
    const Complex rn = fresnel_reflection(gold_plasma, Complex(0.0, 0.0), 0.0, Polarization::TE);
    CHECK(rn.real() == Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("mirror symmetry of the response functions") {
    std::mt19937 rng(42);
    const double wp = gold.omega_p;
    int checked = 0;
    for (int i = 0; i < 1200; ++i) {
        const Complex z = random_z(rng, wp);
        const double k = std::uniform_real_distribution<double>(1e4, 1e8)(rng);
        // stay away from the real axis where the cut jump breaks pointwise symmetry checks
        if (std::abs(z.imag()) < 1e-6 * wp) continue;
        const Complex lhs_e = std::conj(permittivity(gold, -std::conj(z)));
        CHECK(std::abs(lhs_e - permittivity(gold, z)) < 1e-12 * std::abs(permittivity(gold, z)));
        const Complex lhs_k = std::conj(vacuum_kz(-std::conj(z), k));
        CHECK(std::abs(lhs_k + vacuum_kz(z, k)) < 1e-12 * std::abs(vacuum_kz(z, k)));
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const Complex r = fresnel_reflection(gold, z, k, pol);
            const Complex rm = std::conj(fresnel_reflection(gold, -std::conj(z), k, pol));
            CHECK(std::abs(rm - r) < 1e-10 * std::max(1.0, std::abs(r)));
        }
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("imaginary-axis reality of the TE reflection") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(-3.0, 1.5), ks(4.0, 8.0);
    for (int i = 0; i < 1200; ++i) {
        const double xi = gold.omega_p * std::pow(10.0, xs(rng));
        const double k = std::pow(10.0, ks(rng));
        for (const auto& m : {gold, gold_plasma}) {
            const Complex r = fresnel_reflection(m, Complex(0.0, xi), k, Polarization::TE);
            CHECK(r.imag() == 0.0);
            CHECK(r.real() <= 0.0);
            CHECK(r.real() >= -1.0);
        }
    }
}

TEST_CASE("high-frequency transparency of reflection amplitudes") {
    const double k = 2e6;
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> th(0.05, pi - 0.05);
    const double R = 1e3 * gold.omega_p;
    for (int i = 0; i < 200; ++i) {
        const double t = th(rng);
        const Complex z = R * Complex(std::cos(t), std::sin(t));
        for (auto pol : {Polarization::TE, Polarization::TM}) {
            const Complex r = fresnel_reflection(gold, z, k, pol);
            // rate O(|z|^-2): |r| ~ (omega_p/|z|)^2 / 4
            CHECK(std::abs(r) < 2.0 * std::pow(gold.omega_p / R, 2));
        }
    }
}

TEST_CASE("TE/TM degeneracy at k = 0") {
    std::mt19937 rng(3);
    for (int i = 0; i < 1200; ++i) {
        Complex z = random_z(rng, gold.omega_p);
        if (z.imag() < 0.0) z = std::conj(z);  // upper half-plane and real axis
        if (std::abs(z) < 1e-3 * gold.gamma) continue;
        const Complex rte = fresnel_reflection(gold, z, 0.0, Polarization::TE);
        const Complex rtm = fresnel_reflection(gold, z, 0.0, Polarization::TM);
        CHECK(std::abs(rte + rtm) < 1e-10 * std::max(std::abs(rte), 1e-6));
    }
}

TEST_CASE("slab reflection limits") {
    const double k = 2e6;
    const Complex z(3e15, 1e13);
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        const Complex bulk = fresnel_reflection(gold, z, k, pol);
        CHECK(slab_reflection(gold, z, k, pol, semi_infinite) == bulk);
        // a slab much thicker than the penetration depth converges to bulk
        const Complex thick = slab_reflection(gold, z, k, pol, 5e-5);
        CHECK(std::abs(thick - bulk) < 1e-8 * std::abs(bulk) + 1e-14);
        // a vanishing slab reflects nothing
        const Complex thin = slab_reflection(gold, z, k, pol, 1e-16);
        CHECK(std::abs(thin) < 1e-6 * std::abs(bulk) + 1e-12);
    }
    CHECK_THROWS_AS(slab_reflection(gold, z, k, Polarization::TE, 0.0), invalid_configuration);
    CHECK_THROWS_AS(slab_reflection(gold, z, k, Polarization::TE, -1.0), invalid_configuration);
}
