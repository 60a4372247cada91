#pragma once

#include <iosfwd>
#include <vector>

#include "fracac/scheme.hpp"
#include "fracac/spectral.hpp"

namespace fracac {

// integral of F(phi) = 1/4 (phi^2 - 1)^2 over the domain.
double potential_integral(const Field& phi);

// E(phi) = integral[ eps2/2 |grad phi|^2 + F(phi) ].
double original_energy(const Field& phi, double eps2);

/// Scheme-appropriate modified energy:
///   L1:            (eps2 - theta2)/2 |grad phi|^2 + R^2
///   CN, theta = 0: eps2/2 |grad phi|^2 + R^2
///   CN, theta > 0: adds theta2/4 |grad(phi^n - phi^{n-1})|^2
double modified_energy(const SchemeState& state, const SchemeConfig& config);

/// Minimum of the quadratic form
///   A(psi,psi) = 1/Gamma(1-a) int_a^b int_a^s (s-sigma)^-alpha psi(sigma) psi(s)
/// over the sample functions; the form is provably nonnegative.
double bilinear_positivity_check(
    double alpha, double a, double b,
    const std::vector<std::function<double(double)>>& samples);

struct EnergyRow {
    std::size_t n;
    double t;
    double energy;
    double modified;
    double R;
    double phi_min;
    double phi_max;
    double step_change;  // ||phi^n - phi^{n-1}||_0
};

struct EnergyReport {
    std::vector<EnergyRow> rows;
    void record(const SchemeState& state, const SchemeConfig& config);
    void write_csv(std::ostream& os) const;
};

}  // namespace fracac
