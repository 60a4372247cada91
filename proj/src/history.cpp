#include "fracac/history.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fracac/kernels.hpp"

namespace fracac {

void HistoryBuffer::push(const Field& phi_new, const Field& phi_old,
                         double tau) {
    Field d(grid);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = (phi_new[i] - phi_old[i]) / tau;
    diffs.push_back(std::move(d));
}

Field direct_history(const HistoryBuffer& buffer, const QuadWeights& weights) {
    const std::size_t n = buffer.size();
    if (weights.n != n)
        throw std::invalid_argument("direct_history: buffer/weights mismatch");
    Field out(buffer.grid, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        kernels::axpy(out.values, weights.b[n - k], buffer.diffs[k].values);
    return out;
}

double SOEApprox::kernel_eval(double t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        s += weights[i] * std::exp(-nodes[i] * t);
    return s;
}

namespace {

// Max relative kernel error over a geometric sample of [delta, T].
double soe_rel_error(const SOEApprox& a, std::size_t samples) {
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t =
            a.delta * std::pow(a.horizon / a.delta,
                               double(i) / double(samples - 1));
        const double exact = std::pow(t, -a.alpha);
        worst = std::max(worst, std::abs(a.kernel_eval(t) - exact) / exact);
    }
    return worst;
}

SOEApprox build_candidate(double alpha, double delta, double T, double tol,
                          double h, double margin) {
    const double ga = std::tgamma(alpha);
    // Left tail: int_{-inf}^{xmin} e^{ax} dx / Gamma(a) <= tol/8 * T^{-a}.
    const double xmin =
        std::log(0.125 * tol * std::pow(T, -alpha) * alpha * ga) / alpha -
        margin;
    // Right tail: integrand decays like exp(-delta e^x) once e^x >> 1/delta.
    const double xmax =
        std::log((std::log(8.0 / tol) + alpha * std::log(1.0 / delta) + 10.0) /
                 delta) +
        margin * h;
    SOEApprox a;
    a.alpha = alpha;
    a.delta = delta;
    a.horizon = T;
    a.tol = tol;
    for (double x = xmin; x <= xmax; x += h) {
        a.nodes.push_back(std::exp(x));
        a.weights.push_back(h * std::exp(alpha * x) / ga);
    }
    return a;
}

}  // namespace

SOEApprox fit_soe(double alpha, double delta, double T, double tol,
                  std::size_t max_modes) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("fit_soe: alpha must be in (0,1)");
    if (!(delta > 0.0 && delta < T))
        throw std::invalid_argument("fit_soe: need 0 < delta < T");
    if (!(tol > 1e-14 && tol < 1e-2))
        throw std::invalid_argument("fit_soe: tol out of range");

    double h = 2.0 * std::numbers::pi / (std::log(1.0 / tol) + 8.0);
    double margin = 0.0;
    double achieved = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt < 8; ++attempt) {
        SOEApprox a = build_candidate(alpha, delta, T, tol, h, margin);
        if (a.mode_count() > max_modes) break;
        achieved = soe_rel_error(a, 400);
        if (achieved <= 0.5 * tol) return a;
        h *= 0.8;
        margin += 2.0;
    }
    std::ostringstream msg;
    msg << "fit_soe: could not reach tol=" << tol << " within " << max_modes
        << " modes (achieved " << achieved << ")";
    throw std::runtime_error(msg.str());
}

FastHistory::FastHistory(SOEApprox soe, GridPtr grid, double alpha)
    : soe_(std::move(soe)), grid_(std::move(grid)), last_diff_(grid_) {
    if (soe_.alpha != alpha)
        throw std::invalid_argument("FastHistory: alpha mismatch with SOE");
    modes_.assign(soe_.mode_count(),
                  std::vector<double>(grid_->size(), 0.0));
}

void FastHistory::push(const Field& phi_new, const Field& phi_old,
                       double tau) {
    if (phi_new.grid != grid_ || phi_old.grid != grid_)
        throw std::invalid_argument("FastHistory::push: grid mismatch");
    // Fold the previously stored interval into the exponential modes and
    // advance the anchor from t_n to t_{n+1}:
    //   z_i <- exp(-s_i tau) * (z_i + d_{n-1} * (1 - exp(-s_i tau_prev))/s_i)
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double s = soe_.nodes[i];
        const double decay = std::exp(-s * tau);
        const double c = n_ >= 1 ? -std::expm1(-s * last_tau_) / s : 0.0;
        kernels::soe_fold(modes_[i], decay, c, last_diff_.values);
    }
    Field d(grid_);
    for (std::size_t i = 0; i < d.size(); ++i)
        d[i] = (phi_new[i] - phi_old[i]) / tau;
    last_diff_ = std::move(d);
    last_tau_ = tau;
    ++n_;
}

Field FastHistory::eval(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
                        double alpha) const {
    if (n != n_)
        throw std::invalid_argument("FastHistory::eval: step index mismatch");
    Field out(grid_, 0.0);
    if (n == 0) return out;
    // Exact contribution of the most recent interval [t_{n-1}, t_n].
    out = last_diff_;
    kernels::scale(out.values, single_weight(scheme, mesh, n, n - 1, alpha));
    if (n == 1) return out;
    // Surrogate contribution of the older intervals, reconstructed from the
    // per-exponential states.  The scheme-dependent factor carries the
    // kernel from the anchor t_n to the scheme's evaluation point.
    const double tau = mesh.tau(n + 1);
    const double g1 = std::tgamma(1.0 - alpha);
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        const double s = soe_.nodes[i];
        double factor = 0.0;
        switch (scheme) {
            case SchemeKind::L1: factor = std::exp(-s * tau); break;
            case SchemeKind::L1CN: factor = std::exp(-s * 0.5 * tau); break;
            case SchemeKind::L1Plus:
                factor = -std::expm1(-s * tau) / (s * tau);
                break;
        }
        kernels::axpy(out.values, soe_.weights[i] * factor / g1, modes_[i]);
    }
    return out;
}

}  // namespace fracac
