#include "fracac/experiments.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace fracac {

namespace {

constexpr double kPi = std::numbers::pi;

Domain experiment_domain(Experiment e) {
    switch (e) {
        case Experiment::Converge1: return {0.0, 2.0 * kPi, 0.0, 2.0 * kPi};
        case Experiment::Circle: return {-32.0, 32.0, -32.0, 32.0};
        default: return {-1.0, 1.0, -1.0, 1.0};
    }
}

void check_energy_decay(const EnergyReport& report) {
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const double prev = report.rows[i - 1].modified;
        const double cur = report.rows[i].modified;
        if (cur > prev + 1e-10 * (1.0 + std::abs(prev))) {
            std::ostringstream msg;
            msg << "modified energy increased at step " << report.rows[i].n
                << ": " << prev << " -> " << cur;
            throw std::runtime_error(msg.str());
        }
    }
}

}  // namespace

SchemeConfig RunConfig::scheme_config() const {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.alpha = alpha;
    cfg.classical = classical;
    cfg.eps2 = eps2;
    cfg.theta2 = theta2;
    cfg.C0 = C0;
    cfg.history_mode = history_mode;
    cfg.soe_tol = soe_tol;
    return cfg;
}

TimeMesh RunConfig::make_time_mesh(std::size_t steps) const {
    if (dt > 0.0) return build_composite_mesh(steps, r, 1.0, dt, T);
    return build_mesh(steps, r, T);
}

GridPtr RunConfig::make_grid() const {
    if (experiment == Experiment::Converge1 && bc != Bc::Periodic)
        throw std::invalid_argument(
            "the periodic manufactured solution requires bc=periodic");
    return SpatialGrid::create(nx, ny, experiment_domain(experiment), bc);
}

double caputo_power(double mu, double alpha, double t) {
    if (mu <= 0.0) throw std::invalid_argument("caputo_power: mu must be > 0");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("caputo_power: alpha must be in (0,1)");
    const double shifted = mu + 1.0 - alpha;
    if (shifted <= 0.0 && shifted == std::floor(shifted))
        throw std::invalid_argument("caputo_power: gamma pole at mu+1-alpha");
    const double coeff = std::tgamma(mu + 1.0) / std::tgamma(shifted);
    const double expo = mu - alpha;
    if (t == 0.0) return expo > 0.0 ? 0.0 : (expo == 0.0 ? coeff : std::numeric_limits<double>::infinity());
    return coeff * std::pow(t, expo);
}

double manufactured_source(int example, double x, double y, double t,
                           const RunConfig& config) {
    if (example == 1) {
        const double shape = std::sin(x) * std::cos(y);
        const double phi = 0.2 * std::pow(t, 5.0) * shape;
        const double dalpha =
            t == 0.0 ? 0.0
                     : 0.2 * caputo_power(5.0, config.alpha, t) * shape;
        // Laplacian of the shape is -2 * shape.
        return dalpha + 2.0 * config.eps2 * phi - phi + phi * phi * phi;
    }
    if (example == 2) {
        const double shape = std::cos(kPi * x) * std::cos(kPi * y);
        const double phi = 0.2 * (std::pow(t, config.mu) + 1.0) * shape;
        const double dalpha =
            0.2 * caputo_power(config.mu, config.alpha, t) * shape;
        return dalpha + 2.0 * kPi * kPi * config.eps2 * phi - phi +
               phi * phi * phi;
    }
    throw std::invalid_argument("manufactured_source: example must be 1 or 2");
}

namespace {

// Runs one full trajectory; visit(state) is called after every step.
template <class Visit>
SchemeState run_trajectory(const RunConfig& rc, const TimeMesh& mesh,
                           const GridPtr& grid, const Field& phi0,
                           Visit&& visit) {
    SchemeConfig cfg = rc.scheme_config();
    if (rc.experiment == Experiment::Converge1 ||
        rc.experiment == Experiment::Converge2) {
        const int example = rc.experiment == Experiment::Converge1 ? 1 : 2;
        cfg.source = [example, rc](double x, double y, double t) {
            return manufactured_source(example, x, y, t, rc);
        };
    }
    SchemeState state = init_state(phi0, cfg, mesh);
    while (!state.done()) {
        step(state, cfg);
        visit(state);
    }
    return state;
}

Field exact_solution(const RunConfig& rc, const GridPtr& grid, double t) {
    if (rc.experiment == Experiment::Converge1)
        return make_field(grid, [t](double x, double y) {
            return 0.2 * std::pow(t, 5.0) * std::sin(x) * std::cos(y);
        });
    return make_field(grid, [t, mu = rc.mu](double x, double y) {
        return 0.2 * (std::pow(t, mu) + 1.0) * std::cos(kPi * x) *
               std::cos(kPi * y);
    });
}

double exact_error_run(const RunConfig& rc, std::size_t M) {
    const GridPtr grid = rc.make_grid();
    const TimeMesh mesh = rc.make_time_mesh(M);
    const Field phi0 = exact_solution(rc, grid, 0.0);
    double err = 0.0;
    run_trajectory(rc, mesh, grid, phi0, [&](const SchemeState& s) {
        Field ex = exact_solution(rc, grid, s.time());
        double e = 0.0;
        for (std::size_t i = 0; i < ex.size(); ++i)
            e = std::max(e, std::abs(ex[i] - s.phi[i]));
        err = std::max(err, e);
    });
    return err;
}

double self_error_run(const RunConfig& rc, std::size_t M) {
    const GridPtr grid = rc.make_grid();
    const Field phi0 = make_field(grid, [](double x, double y) {
        return std::cos(4.0 * kPi * x) * std::cos(4.0 * kPi * y);
    });
    std::vector<Field> coarse;
    coarse.reserve(M);
    run_trajectory(rc, rc.make_time_mesh(M), grid, phi0,
                   [&](const SchemeState& s) { coarse.push_back(s.phi); });
    double err = 0.0;
    run_trajectory(rc, rc.make_time_mesh(2 * M), grid, phi0,
                   [&](const SchemeState& s) {
                       if (s.n % 2 != 0) return;
                       const Field& c = coarse[s.n / 2 - 1];
                       double e = 0.0;
                       for (std::size_t i = 0; i < c.size(); ++i)
                           e = std::max(e, std::abs(c[i] - s.phi[i]));
                       err = std::max(err, e);
                   });
    return err;
}

}  // namespace

std::vector<ConvergenceRow> run_convergence(const RunConfig& config) {
    std::vector<ConvergenceRow> rows;
    for (std::size_t k = 0; k < config.levels; ++k) {
        const std::size_t M = config.M << k;
        ConvergenceRow row;
        row.M = M;
        row.tau_max = config.make_time_mesh(M).max_tau();
        row.error = config.experiment == Experiment::SelfConv
                        ? self_error_run(config, M)
                        : exact_error_run(config, M);
        row.order = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty())
            row.order = std::log(rows.back().error / row.error) /
                        std::log(rows.back().tau_max / row.tau_max);
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(const std::vector<ConvergenceRow>& rows,
                           std::ostream& os) {
    os << "M,tau_max,error,order\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.M << ',' << r.tau_max << ',' << r.error << ',' << r.order
           << '\n';
}

EnergyReport run_energy_study(const RunConfig& config) {
    if (config.dt <= 0.0)
        throw std::invalid_argument("energy study needs a composite mesh (dt > 0)");
    const GridPtr grid = config.make_grid();
    const Field phi0 = make_field(grid, [](double x, double y) {
        return std::cos(4.0 * kPi * x) * std::cos(4.0 * kPi * y);
    });
    const SchemeConfig cfg = config.scheme_config();
    EnergyReport report;
    SchemeState state = init_state(phi0, cfg, config.make_time_mesh(config.M));
    report.record(state, cfg);
    while (!state.done()) {
        step(state, cfg);
        report.record(state, cfg);
    }
    check_energy_decay(report);
    return report;
}

std::vector<CircleRow> run_circle(const RunConfig& config) {
    const GridPtr grid = config.make_grid();
    const double eps = std::sqrt(config.eps2);
    const Field phi0 = make_field(grid, [eps](double x, double y) {
        const double rad = std::sqrt(x * x + y * y);
        return std::tanh((8.0 - rad) / (std::numbers::sqrt2 * eps));
    });
    TimeMesh mesh;
    if (config.classical) {
        const std::size_t M =
            std::size_t(std::llround(config.T / config.dt));
        mesh = build_mesh(M, 1.0, config.T);
    } else {
        mesh = config.make_time_mesh(config.M);
    }
    const SchemeConfig cfg = config.scheme_config();
    std::vector<CircleRow> rows;
    auto record = [&](const SchemeState& s) {
        // Smooth area of the +1 phase; (phi+1)/2 is the phase indicator, so
        // the measure varies continuously as the interface moves between
        // grid cells (a raw cell count is quantized to one cell).
        double area = 0.0;
        for (double v : s.phi.values) area += 0.5 * (v + 1.0);
        rows.push_back({s.time(), area * grid->quad_weight() / kPi,
                        original_energy(s.phi, config.eps2)});
    };
    SchemeState state = init_state(phi0, cfg, mesh);
    record(state);
    while (!state.done()) {
        step(state, cfg);
        record(state);
    }
    return rows;
}

void write_circle_csv(const std::vector<CircleRow>& rows, std::ostream& os) {
    os << "t,R2,E\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.t << ',' << r.R2 << ',' << r.energy << '\n';
}

Field random_initial_data(const GridPtr& grid, std::uint64_t seed) {
    // splitmix64 stream; value mapping is pinned for reproducible runs.
    Field f(grid);
    std::uint64_t s = seed;
    for (auto& v : f.values) {
        s += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        const double u = double(z >> 11) * 0x1.0p-53;  // [0,1)
        v = 0.2 * u - 0.1;
    }
    return f;
}

EnergyReport run_coarsening(const RunConfig& config) {
    if (config.dt <= 0.0)
        throw std::invalid_argument("coarsening needs a composite mesh (dt > 0)");
    if (!config.out_dir.empty())
        std::filesystem::create_directories(config.out_dir);
    const GridPtr grid = config.make_grid();
    const Field phi0 = random_initial_data(grid, config.seed);
    const SchemeConfig cfg = config.scheme_config();
    EnergyReport report;

    std::vector<double> pending = config.snapshot_times;
    auto maybe_snapshot = [&](const SchemeState& s) {
        while (!pending.empty() && s.time() >= pending.front() - 1e-12) {
            if (!config.out_dir.empty()) {
                std::ostringstream name;
                name << config.out_dir << "/snap_t" << pending.front()
                     << ".bin";
                write_snapshot(s.phi, name.str());
            }
            pending.erase(pending.begin());
        }
    };

    SchemeState state = init_state(phi0, cfg, config.make_time_mesh(config.M));
    report.record(state, cfg);
    maybe_snapshot(state);
    while (!state.done()) {
        step(state, cfg);
        report.record(state, cfg);
        maybe_snapshot(state);
        const double amp = max_abs(state.phi);
        if (amp > 1.5) {
            std::ostringstream msg;
            msg << "phase amplitude " << amp << " exceeds sanity bound at t="
                << state.time();
            throw std::runtime_error(msg.str());
        }
    }
    check_energy_decay(report);
    return report;
}

void write_snapshot(const Field& field, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
    const auto& g = *field.grid;
    os << "FRACPHASE1 " << g.ny() << ' ' << g.nx() << ' '
       << (g.bc() == Bc::Periodic ? "periodic" : "neumann") << '\n';
    os.write(reinterpret_cast<const char*>(field.values.data()),
             std::streamsize(field.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write_snapshot: short write to " + path);
}

Snapshot read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("read_snapshot: missing header");
    std::istringstream hdr(line);
    std::string magic, bc;
    Snapshot snap;
    hdr >> magic >> snap.ny >> snap.nx >> bc;
    if (magic != "FRACPHASE1" || hdr.fail() || snap.nx == 0 || snap.ny == 0)
        throw std::runtime_error("read_snapshot: bad header in " + path);
    if (bc == "periodic")
        snap.bc = Bc::Periodic;
    else if (bc == "neumann")
        snap.bc = Bc::Neumann;
    else
        throw std::runtime_error("read_snapshot: unknown bc '" + bc + "'");
    snap.data.resize(snap.nx * snap.ny);
    is.read(reinterpret_cast<char*>(snap.data.data()),
            std::streamsize(snap.data.size() * sizeof(double)));
    if (std::size_t(is.gcount()) != snap.data.size() * sizeof(double))
        throw std::runtime_error("read_snapshot: truncated payload in " + path);
    char extra;
    if (is.read(&extra, 1))
        throw std::runtime_error("read_snapshot: trailing bytes in " + path);
    return snap;
}

}  // namespace fracac
