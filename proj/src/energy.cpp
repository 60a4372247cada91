#include "fracac/energy.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "fracac/quadrature.hpp"

namespace fracac {

double potential_integral(const Field& phi) {
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i) {
        const double q = phi[i] * phi[i] - 1.0;
        s += 0.25 * q * q;
    }
    return phi.grid->quad_weight() * s;
}

double original_energy(const Field& phi, double eps2) {
    return 0.5 * eps2 * grad_norm_sq(phi) + potential_integral(phi);
}

double modified_energy(const SchemeState& state, const SchemeConfig& config) {
    const double R2 = state.R * state.R;
    if (config.scheme == SchemeKind::L1)
        return 0.5 * (config.eps2 - config.theta2) * grad_norm_sq(state.phi) +
               R2;
    double e = 0.5 * (config.eps2 - config.theta2) * grad_norm_sq(state.phi) +
               R2;
    if (config.theta2 != 0.0 && state.n >= 1) {
        Field d(state.phi.grid);
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = state.phi[i] - state.phi_prev[i];
        e += 0.25 * config.theta2 * grad_norm_sq(d);
    }
    return e;
}

double bilinear_positivity_check(
    double alpha, double a, double b,
    const std::vector<std::function<double(double)>>& samples) {
    const double g1 = std::tgamma(1.0 - alpha);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& psi : samples) {
        // Inner integral in the distance u = s - sigma, so the singular
        // kernel factor is sampled without cancellation.
        auto outer = [&](double s) {
            return psi(s) * tanh_sinh(
                                [&](double u) {
                                    return std::pow(u, -alpha) * psi(s - u);
                                },
                                0.0, s - a, 1e-12);
        };
        // The outer tolerance must sit above the inner quadrature noise.
        worst = std::min(worst, tanh_sinh(outer, a, b, 1e-10) / g1);
    }
    return worst;
}

void EnergyReport::record(const SchemeState& state,
                          const SchemeConfig& config) {
    EnergyRow row;
    row.n = state.n;
    row.t = state.time();
    row.energy = original_energy(state.phi, config.eps2);
    row.modified = modified_energy(state, config);
    row.R = state.R;
    row.phi_min = state.phi.values[0];
    row.phi_max = state.phi.values[0];
    for (double v : state.phi.values) {
        row.phi_min = std::min(row.phi_min, v);
        row.phi_max = std::max(row.phi_max, v);
    }
    if (state.n >= 1) {
        Field d(state.phi.grid);
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = state.phi[i] - state.phi_prev[i];
        row.step_change = std::sqrt(norm_l2_sq(d));
    } else {
        row.step_change = 0.0;
    }
    rows.push_back(row);
}

void EnergyReport::write_csv(std::ostream& os) const {
    os << "n,t,E,E_mod,R,phi_min,phi_max,step_change\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.n << ',' << r.t << ',' << r.energy << ',' << r.modified << ','
           << r.R << ',' << r.phi_min << ',' << r.phi_max << ','
           << r.step_change << '\n';
}

}  // namespace fracac
