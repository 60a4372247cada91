#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fracac/energy.hpp"
#include "fracac/scheme.hpp"
#include "fracac/spectral.hpp"
#include "fracac/timegrid.hpp"

namespace fracac {

enum class Experiment { Converge1, Converge2, SelfConv, EnergyStudy, Circle,
                        Coarsen };

struct RunConfig {
    Experiment experiment = Experiment::Converge1;
    SchemeKind scheme = SchemeKind::L1Plus;
    double alpha = 0.5;
    bool classical = false;  // alpha = 1 mode (circle benchmark)
    double eps2 = 1.0;
    double theta2 = 0.0;
    double C0 = 0.0;
    std::size_t M = 64;  // steps of the (graded) mesh, or of [0,1] if composite
    double r = 1.0;
    double T = 1.0;
    double dt = 0.0;  // > 0 selects a composite mesh: graded [0,1], uniform after
    std::size_t nx = 16, ny = 16;
    Bc bc = Bc::Periodic;
    HistoryMode history_mode = HistoryMode::Direct;
    double soe_tol = 1e-10;
    double mu = 0.5;  // regularity exponent of the second manufactured solution
    std::uint64_t seed = 12345;
    std::string out_dir;
    std::size_t levels = 4;  // mesh doublings in a convergence study
    std::vector<double> snapshot_times = {0.0, 5.0, 20.0, 50.0, 100.0};

    SchemeConfig scheme_config() const;
    TimeMesh make_time_mesh(std::size_t steps) const;
    GridPtr make_grid() const;
};

/// Exact Caputo derivative of t^mu: Gamma(mu+1)/Gamma(mu+1-alpha) t^{mu-alpha}.
double caputo_power(double mu, double alpha, double t);

/// Fabricated source of the two manufactured solutions
/// (1: 0.2 t^5 sin(x)cos(y) periodic; 2: 0.2(t^mu+1)cos(pi x)cos(pi y) Neumann).
double manufactured_source(int example, double x, double y, double t,
                           const RunConfig& config);

struct ConvergenceRow {
    std::size_t M;
    double tau_max;
    double error;
    double order;  // vs the previous row; NaN on the first
};

std::vector<ConvergenceRow> run_convergence(const RunConfig& config);
void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           std::ostream& os);

/// Long-time composite-mesh run; aborts if the scheme-appropriate modified
/// energy ever increases beyond roundoff.
EnergyReport run_energy_study(const RunConfig& config);

struct CircleRow {
    double t;
    double R2;      // (area where phi > 0) / pi
    double energy;  // E(phi)
};

std::vector<CircleRow> run_circle(const RunConfig& config);
void write_circle_csv(const std::vector<CircleRow>& rows, std::ostream& os);

/// Random-data coarsening run; writes snapshots at the configured times into
/// out_dir (when set) and returns the energy report.
EnergyReport run_coarsening(const RunConfig& config);

/// Seeded uniform values in [-0.1, 0.1]; fixed bit-level mapping so runs are
/// reproducible across platforms.
Field random_initial_data(const GridPtr& grid, std::uint64_t seed);

struct Snapshot {
    std::size_t nx = 0, ny = 0;
    Bc bc = Bc::Periodic;
    std::vector<double> data;  // row-major
};

// Text header "FRACPHASE1 ny nx bc" then ny*nx little-endian doubles.
void write_snapshot(const Field& field, const std::string& path);
Snapshot read_snapshot(const std::string& path);

}  // namespace fracac
