#include "fracac/scheme.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracac/energy.hpp"
#include "fracac/kernels.hpp"

namespace fracac {

void SchemeConfig::validate() const {
    if (eps2 <= 0.0) throw std::invalid_argument("config: eps2 must be > 0");
    if (theta2 < 0.0 || theta2 > eps2)
        throw std::invalid_argument("config: need 0 <= theta2 <= eps2");
    if (!classical && !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument(
            "config: alpha must be in (0,1); use classical=true for alpha=1");
}

namespace {

Field source_field(const SchemeState& state, const SchemeConfig& cfg) {
    const auto& t = state.mesh.points;
    const std::size_t n = state.n;
    if (cfg.scheme == SchemeKind::L1)
        return make_field(state.phi.grid, [&](double x, double y) {
            return cfg.source(x, y, t[n + 1]);
        });
    if (cfg.scheme == SchemeKind::L1CN) {
        const double th = 0.5 * (t[n] + t[n + 1]);
        return make_field(state.phi.grid, [&](double x, double y) {
            return cfg.source(x, y, th);
        });
    }
    // L1+ averages the equation over the step; trapezoid for the source.
    return make_field(state.phi.grid, [&](double x, double y) {
        return 0.5 * (cfg.source(x, y, t[n]) + cfg.source(x, y, t[n + 1]));
    });
}

Field history_term(const SchemeState& state, const SchemeConfig& cfg) {
    if (cfg.classical || state.n == 0) return Field(state.phi.grid, 0.0);
    if (state.fast)
        return state.fast->eval(cfg.scheme, state.mesh, state.n, cfg.alpha);
    return direct_history(*state.direct,
                          weights_for(cfg.scheme, state.mesh, state.n,
                                      cfg.alpha));
}

// Everything the step equation needs that does not involve phi^{n+1}.
struct StepContext {
    double tau;
    double b0;
    double diffusion;   // eps2 for L1, eps2/2 for the CN schemes
    double denom;       // 2 R^2 (L1) or 4 R*^2 (CN)
    double R_star;      // R for L1, extrapolant for CN
    Field history;
    Field gamma;
    Field rhs;          // g(phi^n), source included
    bool cn;
};

StepContext make_context(const SchemeState& state, const SchemeConfig& cfg) {
    cfg.validate();
    if (state.done()) throw std::logic_error("step: mesh exhausted");
    const std::size_t n = state.n;
    StepContext c;
    c.cn = cfg.scheme != SchemeKind::L1;
    c.tau = state.mesh.tau(n + 1);
    c.b0 = cfg.classical ? 1.0 : local_weight(cfg.scheme, c.tau, cfg.alpha);
    c.diffusion = c.cn ? 0.5 * cfg.eps2 : cfg.eps2;
    c.history = history_term(state, cfg);

    Field phi_star = state.phi;
    c.R_star = state.R;
    if (c.cn && n >= 1) {
        // Explicit midpoint extrapolants phi^{n+1/2}, R^{n+1/2}.
        const double w = c.tau / (2.0 * state.mesh.tau(n));
        for (std::size_t i = 0; i < phi_star.size(); ++i)
            phi_star[i] += w * (state.phi[i] - state.phi_prev[i]);
        c.R_star += w * (state.R - state.R_prev);
    }
    if (std::abs(c.R_star) <= cfg.r_floor)
        throw std::runtime_error("step: |R| fell below r_floor");
    c.denom = c.cn ? 4.0 * c.R_star * c.R_star : 2.0 * state.R * state.R;

    Field lap_star = laplacian(phi_star);
    c.gamma = Field(state.phi.grid);
    kernels::double_well_deriv(phi_star.values, c.gamma.values);
    if (cfg.theta2 != 0.0)
        kernels::axpy(c.gamma.values, -cfg.theta2, lap_star.values);
    kernels::axpy(c.gamma.values, 1.0, c.history.values);

    // rhs holds only the gamma-free part of the step equation; the gamma
    // contribution is folded in through the scalar coefficient rho, which is
    // computed as a ratio of bounded quantities so that nothing blows up
    // when the (extrapolated) auxiliary variable passes near zero.
    if (c.cn) {
        // g = (b0/tau) phi + (eps2/2) lap(phi) - theta2 lap(phi*) + s
        c.rhs = laplacian(state.phi);
        kernels::scale(c.rhs.values, 0.5 * cfg.eps2);
        kernels::axpy(c.rhs.values, c.b0 / c.tau, state.phi.values);
        if (cfg.theta2 != 0.0)
            kernels::axpy(c.rhs.values, -cfg.theta2, lap_star.values);
    } else {
        // g = (b0/tau) phi - theta2 lap(phi) + s
        c.rhs = Field(state.phi.grid, 0.0);
        kernels::axpy(c.rhs.values, c.b0 / c.tau, state.phi.values);
        if (cfg.theta2 != 0.0)
            kernels::axpy(c.rhs.values, -cfg.theta2, lap_star.values);
    }
    if (cfg.source) {
        Field s = source_field(state, cfg);
        kernels::axpy(c.rhs.values, 1.0, s.values);
    }
    return c;
}

// Relative residual of the defining equations for a candidate next pair.
StepDiagnostics eval_residual(const SchemeState& state, const StepContext& c,
                              const SchemeConfig& cfg, const Field& phi_next,
                              double R_next, double sigma) {
    const std::size_t n = state.n;
    Field delta(state.phi.grid);
    for (std::size_t i = 0; i < delta.size(); ++i)
        delta[i] = phi_next[i] - state.phi[i];

    Field res(state.phi.grid, 0.0);
    kernels::axpy(res.values, c.b0 / c.tau, delta.values);
    double scale = kernels::max_abs(res.values);

    Field lap_next = laplacian(phi_next);
    double rho;
    if (c.cn) {
        Field lap_cur = laplacian(state.phi);
        kernels::axpy(res.values, -0.5 * cfg.eps2, lap_next.values);
        kernels::axpy(res.values, -0.5 * cfg.eps2, lap_cur.values);
        scale = std::max(scale, 0.5 * cfg.eps2 * kernels::max_abs(lap_next.values));
        rho = (R_next + state.R) / (2.0 * c.R_star);
    } else {
        kernels::axpy(res.values, -cfg.eps2, lap_next.values);
        scale = std::max(scale, cfg.eps2 * kernels::max_abs(lap_next.values));
        rho = R_next / state.R;
    }
    if (cfg.theta2 != 0.0) {
        // (1 - rho) theta2 lap(phi_eval) enters via gamma plus this term.
        Field phi_eval = state.phi;
        if (c.cn && n >= 1) {
            const double w = c.tau / (2.0 * state.mesh.tau(n));
            for (std::size_t i = 0; i < phi_eval.size(); ++i)
                phi_eval[i] += w * (state.phi[i] - state.phi_prev[i]);
        }
        Field lap_eval = laplacian(phi_eval);
        kernels::axpy(res.values, cfg.theta2, lap_eval.values);
    }
    kernels::axpy(res.values, rho, c.gamma.values);
    scale = std::max(scale, std::abs(rho) * kernels::max_abs(c.gamma.values));
    if (cfg.source) {
        Field s = source_field(state, cfg);
        kernels::axpy(res.values, -1.0, s.values);
        scale = std::max(scale, kernels::max_abs(s.values));
    }

    StepDiagnostics d;
    d.sigma = sigma;
    d.field_residual = kernels::max_abs(res.values) / std::max(scale, 1e-300);

    const double denom_R = c.cn ? 2.0 * c.R_star : 2.0 * state.R;
    const double drive = inner(c.gamma, delta) / denom_R;
    d.scalar_residual = std::abs(R_next - state.R - drive) /
                        (std::abs(state.R) + std::abs(R_next) +
                         std::abs(drive) + 1e-300);
    return d;
}

void advance(SchemeState& state, const SchemeConfig& cfg, Field phi_next,
             double R_next) {
    if (!cfg.classical) {
        if (state.fast)
            state.fast->push(phi_next, state.phi, state.mesh.tau(state.n + 1));
        else
            state.direct->push(phi_next, state.phi,
                               state.mesh.tau(state.n + 1));
    }
    state.phi_prev = std::move(state.phi);
    state.R_prev = state.R;
    state.phi = std::move(phi_next);
    state.R = R_next;
    ++state.n;
}

}  // namespace

SchemeState init_state(const Field& phi0, const SchemeConfig& config,
                       const TimeMesh& mesh) {
    config.validate();
    SchemeState state;
    state.phi = phi0;
    state.mesh = mesh;
    const double e_theta =
        0.5 * config.theta2 * grad_norm_sq(phi0) + potential_integral(phi0);
    const double radicand = e_theta + config.C0;
    if (radicand <= 0.0) {
        std::ostringstream msg;
        msg << "init_state: E_theta(phi0) + C0 = " << radicand
            << " is not positive; choose C0 > " << -e_theta;
        throw std::invalid_argument(msg.str());
    }
    state.R = std::sqrt(radicand);
    state.R_prev = state.R;
    if (!config.classical) {
        if (config.history_mode == HistoryMode::Soe) {
            const double delta = mesh.min_tau();
            state.fast.emplace(
                fit_soe(config.alpha, delta, mesh.horizon(), config.soe_tol),
                phi0.grid, config.alpha);
        } else {
            state.direct.emplace(phi0.grid);
        }
    }
    return state;
}

StepDiagnostics step(SchemeState& state, const SchemeConfig& cfg) {
    StepContext c = make_context(state, cfg);
    if (!c.cn && std::abs(state.R) <= cfg.r_floor)
        throw std::runtime_error("step: |R| fell below r_floor");

    const double shift = c.b0 / c.tau;
    Field q = solve_shifted_poisson(shift, c.diffusion, c.gamma);
    Field phi2 = solve_shifted_poisson(shift, c.diffusion, c.rhs);

    // s2 = (gamma, A^{-1} gamma) >= 0 since the solve operator is SPD.
    const double s2 = inner(c.gamma, q);
    const double sigma = s2 / c.denom;
    Field d2(state.phi.grid);
    for (std::size_t i = 0; i < d2.size(); ++i)
        d2[i] = phi2[i] - state.phi[i];
    const double gd2 = inner(c.gamma, d2);

    // Effective coefficient rho multiplying gamma in the field equation:
    // rho = R'/R for the pointwise scheme, (R'+R)/(2R*) for the CN-type
    // schemes.  Eliminating R' gives a closed form whose numerator and
    // denominator stay bounded even as R* -> 0.
    double rho, R_next;
    if (c.cn) {
        rho = (4.0 * c.R_star * state.R + gd2) / (c.denom + s2);
        R_next = 2.0 * rho * c.R_star - state.R;
    } else {
        rho = (c.denom + gd2) / (c.denom + s2);
        R_next = rho * state.R;
    }
    Field phi_next = std::move(phi2);
    kernels::axpy(phi_next.values, -rho, q.values);

    state.last = eval_residual(state, c, cfg, phi_next, R_next, sigma);
    advance(state, cfg, std::move(phi_next), R_next);
    return state.last;
}

double residual(const SchemeState& state_before, const Field& phi_next,
                double R_next, const SchemeConfig& config) {
    StepContext c = make_context(state_before, config);
    StepDiagnostics d =
        eval_residual(state_before, c, config, phi_next, R_next, 0.0);
    return std::max(d.field_residual, d.scalar_residual);
}

}  // namespace fracac
