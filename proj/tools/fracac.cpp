// Command-line front end: convergence studies, long-time energy runs, the
// shrinking-circle benchmark, and random-data coarsening.
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "fracac/experiments.hpp"

namespace {

using fracac::Bc;
using fracac::Experiment;
using fracac::HistoryMode;
using fracac::RunConfig;
using fracac::SchemeKind;

std::ofstream open_out(const RunConfig& rc, const std::string& name) {
    std::filesystem::create_directories(rc.out_dir);
    const auto path = std::filesystem::path(rc.out_dir) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path.string());
    return os;
}

template <class Rows, class Writer>
void emit(const RunConfig& rc, const std::string& name, const Rows& rows,
          Writer&& write) {
    if (rc.out_dir.empty()) {
        write(rows, std::cout);
    } else {
        auto os = open_out(rc, name);
        write(rows, os);
        std::cerr << "wrote " << rc.out_dir << "/" << name << "\n";
    }
}

void add_common(CLI::App& sub, RunConfig& rc, double& alpha_in) {
    static const std::map<std::string, SchemeKind> schemes{
        {"l1", SchemeKind::L1},
        {"l1cn", SchemeKind::L1CN},
        {"l1plus", SchemeKind::L1Plus}};
    static const std::map<std::string, Bc> bcs{{"periodic", Bc::Periodic},
                                               {"neumann", Bc::Neumann}};
    static const std::map<std::string, HistoryMode> histories{
        {"direct", HistoryMode::Direct}, {"soe", HistoryMode::Soe}};

    sub.add_option("--scheme", rc.scheme, "time stepping scheme")
        ->transform(CLI::CheckedTransformer(schemes, CLI::ignore_case));
    sub.add_option("--alpha", alpha_in,
                   "fractional order in (0,1); 1 selects the classical limit");
    sub.add_option("--eps2", rc.eps2, "interface parameter epsilon^2");
    sub.add_option("--theta2", rc.theta2, "stabilization split theta^2");
    sub.add_option("--c0", rc.C0, "energy shift inside the auxiliary scalar");
    sub.add_option("--M", rc.M, "steps of the (graded) initial mesh");
    sub.add_option("--r", rc.r, "mesh grading exponent");
    sub.add_option("--T", rc.T, "final time");
    sub.add_option("--dt", rc.dt,
                   "uniform step after t=1 (composite mesh); 0 disables");
    sub.add_option("--nx", rc.nx, "grid points in x");
    sub.add_option("--ny", rc.ny, "grid points in y");
    sub.add_option("--bc", rc.bc, "boundary condition")
        ->transform(CLI::CheckedTransformer(bcs, CLI::ignore_case));
    sub.add_option("--history", rc.history_mode, "history evaluation mode")
        ->transform(CLI::CheckedTransformer(histories, CLI::ignore_case));
    sub.add_option("--soe-tol", rc.soe_tol,
                   "relative kernel tolerance of the fast history");
    sub.add_option("--mu", rc.mu, "regularity exponent of the second "
                                  "manufactured solution");
    sub.add_option("--seed", rc.seed, "random seed for coarsening data");
    sub.add_option("--out", rc.out_dir, "output directory (default: stdout)");
    sub.set_config("--config", "", "key=value option file; flags override it");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Energy-stable solvers for the time-fractional "
                 "Allen-Cahn equation"};
    app.require_subcommand(1);

    RunConfig rc;
    double alpha_in = rc.alpha;
    std::string example = "1";
    std::size_t levels = rc.levels;

    auto* converge = app.add_subcommand(
        "converge", "temporal convergence study on doubling meshes");
    add_common(*converge, rc, alpha_in);
    converge->add_option("--example", example,
                         "1: smooth periodic, 2: t^mu Neumann, self: "
                         "self-convergence without a source")
        ->check(CLI::IsMember({"1", "2", "self"}));
    converge->add_option("--levels", levels, "number of mesh doublings");

    auto* energy = app.add_subcommand(
        "energy", "long-time run checking decay of the modified energy");
    add_common(*energy, rc, alpha_in);

    auto* circle = app.add_subcommand(
        "circle", "shrinking-circle benchmark against R^2 = 64 - 2t");
    add_common(*circle, rc, alpha_in);

    auto* coarsen = app.add_subcommand(
        "coarsen", "coarsening dynamics from seeded random data");
    add_common(*coarsen, rc, alpha_in);

    CLI11_PARSE(app, argc, argv);

    try {
        rc.levels = levels;
        rc.classical = alpha_in >= 1.0;
        rc.alpha = rc.classical ? 0.5 : alpha_in;  // placeholder when classical

        if (converge->parsed()) {
            if (example == "self") {
                rc.experiment = Experiment::SelfConv;
            } else if (example == "2") {
                rc.experiment = Experiment::Converge2;
            } else {
                rc.experiment = Experiment::Converge1;
            }
            if (rc.experiment != Experiment::Converge1 &&
                !converge->count("--bc"))
                rc.bc = Bc::Neumann;
            auto rows = fracac::run_convergence(rc);
            emit(rc, "convergence.csv", rows,
                 [](const auto& r, std::ostream& os) {
                     fracac::write_convergence_csv(r, os);
                 });
        } else if (energy->parsed()) {
            rc.experiment = Experiment::EnergyStudy;
            if (!energy->count("--bc")) rc.bc = Bc::Neumann;
            if (!energy->count("--dt")) rc.dt = 1.0;
            if (!energy->count("--T")) rc.T = 50.0;
            if (!energy->count("--eps2")) rc.eps2 = 0.001;
            auto report = fracac::run_energy_study(rc);
            emit(rc, "energy.csv", report,
                 [](const auto& r, std::ostream& os) { r.write_csv(os); });
        } else if (circle->parsed()) {
            rc.experiment = Experiment::Circle;
            if (!circle->count("--alpha")) rc.classical = true;
            if (!circle->count("--dt")) rc.dt = 0.01;
            if (!circle->count("--T")) rc.T = 32.0;
            if (!circle->count("--c0")) rc.C0 = 1000.0;
            if (!circle->count("--nx")) rc.nx = 128;
            if (!circle->count("--ny")) rc.ny = 128;
            auto rows = fracac::run_circle(rc);
            emit(rc, "circle.csv", rows, [](const auto& r, std::ostream& os) {
                fracac::write_circle_csv(r, os);
            });
        } else if (coarsen->parsed()) {
            rc.experiment = Experiment::Coarsen;
            if (!coarsen->count("--bc")) rc.bc = Bc::Neumann;
            if (!coarsen->count("--dt")) rc.dt = 0.01;
            if (!coarsen->count("--T")) rc.T = 100.0;
            if (!coarsen->count("--M")) rc.M = 100;
            if (!coarsen->count("--r")) rc.r = 2.0 / rc.alpha;
            if (!coarsen->count("--nx")) rc.nx = 128;
            if (!coarsen->count("--ny")) rc.ny = 128;
            if (!coarsen->count("--c0")) rc.C0 = 1.0;
            if (!coarsen->count("--eps2")) rc.eps2 = 0.01;
            if (!coarsen->count("--history")) rc.history_mode = HistoryMode::Soe;
            auto report = fracac::run_coarsening(rc);
            emit(rc, "energy.csv", report,
                 [](const auto& r, std::ostream& os) { r.write_csv(os); });
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
