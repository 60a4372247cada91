#pragma once

#include <cmath>
#include <cstddef>
#include <span>

// Element-wise field kernels.  fracac::kernels holds the OpenMP versions
// used by the library; fracac::kernels::serial holds plain-loop reference
// implementations kept for testing and benchmarking.

namespace fracac::kernels {

namespace serial {

inline void fill(std::span<double> y, double v) {
    for (auto& e : y) e = v;
}

// y += a*x
inline void axpy(std::span<double> y, double a, std::span<const double> x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// y = a*x + b*y
inline void axpby(double a, std::span<const double> x, double b,
                  std::span<double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = a * x[i] + b * y[i];
}

inline void scale(std::span<double> y, double a) {
    for (auto& e : y) e *= a;
}

// out = phi^3 - phi  (derivative of the double-well potential)
inline void double_well_deriv(std::span<const double> phi,
                              std::span<double> out) {
    for (std::size_t i = 0; i < phi.size(); ++i)
        out[i] = phi[i] * (phi[i] * phi[i] - 1.0);
}

inline double dot(std::span<const double> f, std::span<const double> g) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
    return s;
}

inline double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
}

// z = decay*(z + c*d); the per-exponential history recurrence.
inline void soe_fold(std::span<double> z, double decay, double c,
                     std::span<const double> d) {
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = decay * (z[i] + c * d[i]);
}

}  // namespace serial

inline void fill(std::span<double> y, double v) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(y.size()); ++i) y[i] = v;
}

inline void axpy(std::span<double> y, double a, std::span<const double> x) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(y.size()); ++i)
        y[i] += a * x[i];
}

inline void axpby(double a, std::span<const double> x, double b,
                  std::span<double> y) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(y.size()); ++i)
        y[i] = a * x[i] + b * y[i];
}

inline void scale(std::span<double> y, double a) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(y.size()); ++i) y[i] *= a;
}

inline void double_well_deriv(std::span<const double> phi,
                              std::span<double> out) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(phi.size()); ++i)
        out[i] = phi[i] * (phi[i] * phi[i] - 1.0);
}

inline double dot(std::span<const double> f, std::span<const double> g) {
    double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(f.size()); ++i)
        s += f[i] * g[i];
    return s;
}

inline double max_abs(std::span<const double> f) {
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(f.size()); ++i)
        m = std::max(m, std::abs(f[i]));
    return m;
}

inline void soe_fold(std::span<double> z, double decay, double c,
                     std::span<const double> d) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(z.size()); ++i)
        z[i] = decay * (z[i] + c * d[i]);
}

}  // namespace fracac::kernels
