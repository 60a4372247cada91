#pragma once

#include <functional>

namespace fracac {

/// Tanh-sinh (double-exponential) quadrature on [a, b].  Handles integrable
/// endpoint singularities such as (b - s)^{-alpha}, which is what the
/// fractional kernels produce.  Refines until two successive levels agree to
/// rel_tol or max_level is reached.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13, int max_level = 12);

/// Nested tanh-sinh for double integrals over [ax,bx] x [ay,by].
double tanh_sinh_2d(const std::function<double(double, double)>& f, double ax,
                    double bx, double ay, double by, double rel_tol = 1e-11);

}  // namespace fracac
