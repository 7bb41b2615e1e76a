#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace casimir {

/// Base class for all errors raised by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configuration value violates a precondition (T <= 0, L <= 0, wrong model kind, ...).
struct invalid_configuration : error {
    using error::error;
};

/// A function was evaluated at (or too close to) one of its singular points.
struct singular_evaluation : error {
    std::complex<double> location{};
    int matsubara_index = -1;

    explicit singular_evaluation(const std::string& what, std::complex<double> where = {},
                                 int n = -1)
        : error(what), location(where), matsubara_index(n) {}
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct quadrature_failure : error {
    double worst_a = 0.0, worst_b = 0.0;  // worst interval (in the integration parameter)
    double error_estimate = 0.0;

    explicit quadrature_failure(const std::string& what, double a = 0.0, double b = 0.0,
                                double err = 0.0)
        : error(what), worst_a(a), worst_b(b), error_estimate(err) {}
};

/// The logarithmic-derivative integral did not land near an integer.
struct ill_conditioned_contour : error {
    double raw_value = 0.0;

    explicit ill_conditioned_contour(const std::string& what, double raw = 0.0)
        : error(what), raw_value(raw) {}
};

/// A divergence was met inside a principal-value domain that was not declared by the caller.
struct missing_singularity : error {
    double location_estimate = 0.0;

    explicit missing_singularity(const std::string& what, double where = 0.0)
        : error(what), location_estimate(where) {}
};

/// A pole left the search window during continuation tracking.
struct window_violation : error {
    using error::error;
};

}  // namespace casimir
