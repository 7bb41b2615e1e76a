#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "casimir/constants.hpp"

using namespace casimir;
using Catch::Approx;

TEST_CASE("eV to angular frequency conversion") {
    CHECK(ev_to_angular(0.160) == Approx(2.43e14).epsilon(0.01));
    CHECK(ev_to_angular(0.160) == Approx(243082791809521.66).epsilon(1e-12));
    CHECK(ev_to_angular(0.0) == 0.0);
    CHECK(ev_to_angular(9.0) == Approx(1.37e16).epsilon(0.01));
    CHECK(ev_to_angular(9.0) == Approx(1.3673407039285594e16).epsilon(1e-12));
}

TEST_CASE("eV round trip is identity") {
    std::mt19937 rng(991);
    std::uniform_real_distribution<double> u(-3.0, 2.0);
    for (int i = 0; i < 2000; ++i) {
        const double e = std::pow(10.0, u(rng));
        CHECK(angular_to_ev(ev_to_angular(e)) == Approx(e).epsilon(1e-12));
    }
}

TEST_CASE("Matsubara frequencies") {
    const double xi1 = matsubara_frequency(1, 300.0);
    CHECK(xi1 == Approx(2.46e14).epsilon(0.01));
    // hbar xi1 ~ 162 meV, larger than gamma ~ 35 meV for gold at room temperature
    CHECK(angular_to_ev(xi1) * 1e3 == Approx(162.43).epsilon(1e-3));
    CHECK(matsubara_frequency(0, 300.0) == 0.0);
    CHECK(matsubara_frequency(0, 77.0) == 0.0);
    CHECK(matsubara_frequency(2, 300.0) == Approx(2.0 * xi1).epsilon(1e-15));

    std::mt19937 rng(17);
    std::uniform_int_distribution<int> nn(0, 400);
    std::uniform_real_distribution<double> tt(0.5, 2000.0);
    for (int i = 0; i < 2000; ++i) {
        const int n = nn(rng);
        const double T = tt(rng);
        CHECK(matsubara_frequency(n, T) ==
              Approx(n * matsubara_frequency(1, T)).margin(1e-300).epsilon(1e-15));
    }
}

TEST_CASE("Matsubara frequency rejects non-positive temperature") {
    CHECK_THROWS_AS(matsubara_frequency(1, 0.0), invalid_configuration);
    CHECK_THROWS_AS(matsubara_frequency(1, -10.0), invalid_configuration);
}

TEST_CASE("frequency scale") {
    FrequencyScale s(ev_to_angular(9.0));
    CHECK(s.length_ref == Approx(codata.c / s.omega_ref));
    CHECK_THROWS_AS(FrequencyScale(0.0), invalid_configuration);
}
