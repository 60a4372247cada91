#pragma once

#include <cstddef>
#include <vector>

#include "fracac/spectral.hpp"
#include "fracac/timegrid.hpp"

namespace fracac {

/// Stored difference quotients (phi^{k+1} - phi^k) / tau_{k+1}, k = 0..n-1.
/// Exact history evaluation in O(n) per step; grows linearly with n.
struct HistoryBuffer {
    GridPtr grid;
    std::vector<Field> diffs;

    explicit HistoryBuffer(GridPtr g) : grid(std::move(g)) {}
    std::size_t size() const { return diffs.size(); }
    void push(const Field& phi_new, const Field& phi_old, double tau);
};

/// sum_{k=0}^{n-1} b[n-k] * diffs[k].
Field direct_history(const HistoryBuffer& buffer, const QuadWeights& weights);

/// Sum-of-exponentials surrogate of the kernel t^{-alpha}:
///   |t^{-alpha} - sum_i w_i exp(-s_i t)| <= tol * t^{-alpha},  t in [delta, T].
struct SOEApprox {
    double alpha = 0.0;
    double delta = 0.0;
    double horizon = 0.0;
    double tol = 0.0;
    std::vector<double> nodes;    // s_i > 0
    std::vector<double> weights;  // w_i > 0

    std::size_t mode_count() const { return nodes.size(); }
    double kernel_eval(double t) const;  // sum_i w_i exp(-s_i t)
};

/// Builds the surrogate from the integral representation
/// t^{-alpha} = (1/Gamma(alpha)) int_0^inf exp(-t s) s^{alpha-1} ds,
/// discretized by the trapezoid rule on s = exp(x).  Throws if the bound
/// cannot be met within max_modes (the message reports the achieved error).
SOEApprox fit_soe(double alpha, double delta, double T, double tol,
                  std::size_t max_modes = 512);

/// Running fast-history state.  Holds one field per exponential; per-step
/// cost is O(mode_count), independent of the step index.  The most recent
/// history interval is kept exact (its kernel argument can drop below
/// delta), so the surrogate only ever sees arguments >= the smallest step.
class FastHistory {
public:
    FastHistory(SOEApprox soe, GridPtr grid, double alpha);

    std::size_t step_count() const { return n_; }
    std::size_t mode_count() const { return soe_.mode_count(); }
    const SOEApprox& soe() const { return soe_; }

    /// Fold in the difference quotient of the step just completed.
    /// Must be called exactly once per step, in order.
    void push(const Field& phi_new, const Field& phi_old, double tau);

    /// History term of the given scheme for advancing step n -> n+1.
    /// Requires n == step_count().
    Field eval(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
               double alpha) const;

private:
    SOEApprox soe_;
    GridPtr grid_;
    std::vector<std::vector<double>> modes_;  // z_i, history through step n-1
    Field last_diff_;
    double last_tau_ = 0.0;
    std::size_t n_ = 0;
};

}  // namespace fracac
