#pragma once

#include <functional>
#include <optional>

#include "fracac/history.hpp"
#include "fracac/spectral.hpp"
#include "fracac/timegrid.hpp"

namespace fracac {

enum class HistoryMode { Direct, Soe };

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::L1;
    double alpha = 0.5;        // fractional order in (0,1); see `classical`
    bool classical = false;    // alpha = 1 path: local weight 1, no history
    double eps2 = 1.0;
    double theta2 = 0.0;       // requires theta2 <= eps2
    double C0 = 0.0;
    HistoryMode history_mode = HistoryMode::Direct;
    double soe_tol = 1e-10;
    double r_floor = 1e-12;
    // Optional explicit source s(x, y, t); evaluated at the scheme's own
    // time point (t_{n+1} for L1, t_{n+1/2} for L1-CN, trapezoid for L1+).
    std::function<double(double, double, double)> source;

    void validate() const;
};

struct StepDiagnostics {
    double sigma = 0.0;            // >= 0 by positive-definiteness of A^-1
    double field_residual = 0.0;   // relative residual of the phi equation
    double scalar_residual = 0.0;  // relative residual of the R equation
};

struct SchemeState {
    std::size_t n = 0;
    Field phi;
    Field phi_prev;  // valid for n >= 1
    double R = 0.0;
    double R_prev = 0.0;
    TimeMesh mesh;
    std::optional<HistoryBuffer> direct;
    std::optional<FastHistory> fast;
    StepDiagnostics last;

    double time() const { return mesh.points[n]; }
    bool done() const { return n >= mesh.steps(); }
};

/// R^0 = sqrt(E_theta(phi0) + C0).  Throws if the radicand is nonpositive,
/// naming the C0 required to fix it.
SchemeState init_state(const Field& phi0, const SchemeConfig& config,
                       const TimeMesh& mesh);

/// Advance one step with the configured scheme; returns the step diagnostics
/// (also stored in state.last).
StepDiagnostics step(SchemeState& state, const SchemeConfig& config);

/// Relative residual of the scheme's defining equations when the candidate
/// pair (phi_next, R_next) is substituted for the step state.n -> state.n+1.
/// An accepted step satisfies residual <= 1e-10.
double residual(const SchemeState& state_before, const Field& phi_next,
                double R_next, const SchemeConfig& config);

}  // namespace fracac
