#include "fracac/timegrid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracac {

double TimeMesh::min_tau() const {
    double m = points[1] - points[0];
    for (std::size_t n = 2; n < points.size(); ++n)
        m = std::min(m, points[n] - points[n - 1]);
    return m;
}

double TimeMesh::max_tau() const {
    double m = points[1] - points[0];
    for (std::size_t n = 2; n < points.size(); ++n)
        m = std::max(m, points[n] - points[n - 1]);
    return m;
}

double pow_diff(double a, double b, double p) {
    if (b <= 0.0) return std::pow(a, p);
    // a^p - b^p = b^p * expm1(p * log1p((a-b)/b))
    return std::pow(b, p) * std::expm1(p * std::log1p((a - b) / b));
}

TimeMesh build_mesh(std::size_t M, double r, double T) {
    if (M == 0) throw std::invalid_argument("build_mesh: M must be >= 1");
    if (r < 1.0) throw std::invalid_argument("build_mesh: r must be >= 1");
    if (T <= 0.0) throw std::invalid_argument("build_mesh: T must be > 0");
    TimeMesh mesh;
    mesh.kind = (r == 1.0) ? MeshKind::Uniform : MeshKind::Graded;
    mesh.grading = r;
    mesh.points.resize(M + 1);
    for (std::size_t n = 0; n <= M; ++n)
        mesh.points[n] = std::pow(double(n) / double(M), r) * T;
    mesh.points[M] = T;
    return mesh;
}

TimeMesh build_composite_mesh(std::size_t M1, double r, double T1, double dt,
                              double T) {
    if (T1 >= T)
        throw std::invalid_argument("build_composite_mesh: T1 must be < T");
    if (dt <= 0.0)
        throw std::invalid_argument("build_composite_mesh: dt must be > 0");
    TimeMesh mesh = build_mesh(M1, r, T1);
    mesh.kind = MeshKind::Composite;
    double t = T1;
    while (t + dt < T - 1e-12 * T) {
        t += dt;
        mesh.points.push_back(t);
    }
    mesh.points.push_back(T);
    for (std::size_t n = 1; n < mesh.points.size(); ++n)
        if (mesh.points[n] <= mesh.points[n - 1])
            throw std::invalid_argument(
                "build_composite_mesh: points not strictly increasing");
    return mesh;
}

namespace {

void check_weight_args(const TimeMesh& mesh, std::size_t n, double alpha) {
    if (n >= mesh.steps())
        throw std::invalid_argument("weights: step index out of range");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("weights: alpha must be in (0,1)");
}

}  // namespace

QuadWeights l1_weights(const TimeMesh& mesh, std::size_t n, double alpha) {
    check_weight_args(mesh, n, alpha);
    const auto& t = mesh.points;
    const double g2 = std::tgamma(2.0 - alpha);
    QuadWeights w{SchemeKind::L1, n, std::vector<double>(n + 1)};
    // b[n-k] = [(t_{n+1}-t_k)^{1-a} - (t_{n+1}-t_{k+1})^{1-a}] / Gamma(2-a)
    for (std::size_t k = 0; k <= n; ++k)
        w.b[n - k] = pow_diff(t[n + 1] - t[k], t[n + 1] - t[k + 1], 1.0 - alpha) / g2;
    return w;
}

QuadWeights l1cn_weights(const TimeMesh& mesh, std::size_t n, double alpha) {
    check_weight_args(mesh, n, alpha);
    const auto& t = mesh.points;
    const double g2 = std::tgamma(2.0 - alpha);
    const double thalf = 0.5 * (t[n] + t[n + 1]);
    QuadWeights w{SchemeKind::L1CN, n, std::vector<double>(n + 1)};
    w.b[0] = std::pow(mesh.tau(n + 1), 1.0 - alpha) /
             (g2 * std::pow(2.0, 1.0 - alpha));
    for (std::size_t k = 0; k < n; ++k)
        w.b[n - k] = pow_diff(thalf - t[k], thalf - t[k + 1], 1.0 - alpha) / g2;
    return w;
}

QuadWeights l1plus_weights(const TimeMesh& mesh, std::size_t n, double alpha) {
    check_weight_args(mesh, n, alpha);
    const auto& t = mesh.points;
    const double tau = mesh.tau(n + 1);
    const double g3 = std::tgamma(3.0 - alpha);
    const double p = 2.0 - alpha;
    QuadWeights w{SchemeKind::L1Plus, n, std::vector<double>(n + 1)};
    w.b[0] = std::pow(tau, 1.0 - alpha) / g3;
    // Closed form of the double integral over [t_n,t_{n+1}] x [t_k,t_{k+1}].
    for (std::size_t k = 0; k < n; ++k)
        w.b[n - k] = (pow_diff(t[n + 1] - t[k], t[n] - t[k], p) -
                      pow_diff(t[n + 1] - t[k + 1], t[n] - t[k + 1], p)) /
                     (g3 * tau);
    return w;
}

QuadWeights weights_for(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
                        double alpha) {
    switch (scheme) {
        case SchemeKind::L1: return l1_weights(mesh, n, alpha);
        case SchemeKind::L1CN: return l1cn_weights(mesh, n, alpha);
        case SchemeKind::L1Plus: return l1plus_weights(mesh, n, alpha);
    }
    throw std::logic_error("weights_for: unknown scheme");
}

double single_weight(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
                     std::size_t k, double alpha) {
    check_weight_args(mesh, n, alpha);
    if (k > n) throw std::invalid_argument("single_weight: k out of range");
    const auto& t = mesh.points;
    if (k == n) return local_weight(scheme, mesh.tau(n + 1), alpha);
    switch (scheme) {
        case SchemeKind::L1:
            return pow_diff(t[n + 1] - t[k], t[n + 1] - t[k + 1], 1.0 - alpha) /
                   std::tgamma(2.0 - alpha);
        case SchemeKind::L1CN: {
            const double thalf = 0.5 * (t[n] + t[n + 1]);
            return pow_diff(thalf - t[k], thalf - t[k + 1], 1.0 - alpha) /
                   std::tgamma(2.0 - alpha);
        }
        case SchemeKind::L1Plus: {
            const double p = 2.0 - alpha;
            return (pow_diff(t[n + 1] - t[k], t[n] - t[k], p) -
                    pow_diff(t[n + 1] - t[k + 1], t[n] - t[k + 1], p)) /
                   (std::tgamma(3.0 - alpha) * mesh.tau(n + 1));
        }
    }
    throw std::logic_error("single_weight: unknown scheme");
}

double local_weight(SchemeKind scheme, double tau, double alpha) {
    switch (scheme) {
        case SchemeKind::L1:
            return std::pow(tau, 1.0 - alpha) / std::tgamma(2.0 - alpha);
        case SchemeKind::L1CN:
            return std::pow(tau, 1.0 - alpha) /
                   (std::tgamma(2.0 - alpha) * std::pow(2.0, 1.0 - alpha));
        case SchemeKind::L1Plus:
            return std::pow(tau, 1.0 - alpha) / std::tgamma(3.0 - alpha);
    }
    throw std::logic_error("local_weight: unknown scheme");
}

}  // namespace fracac
