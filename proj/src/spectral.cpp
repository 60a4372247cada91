#include "fracac/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "fracac/kernels.hpp"

namespace fracac {

namespace {

// FFTW plan creation is not thread-safe; execution with new-array calls is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

void check_same_grid(const Field& f, const Field& g) {
    if (f.grid != g.grid) throw std::invalid_argument("fields on different grids");
}

}  // namespace

std::shared_ptr<const SpatialGrid> SpatialGrid::create(std::size_t nx,
                                                       std::size_t ny,
                                                       Domain domain, Bc bc) {
    return std::shared_ptr<const SpatialGrid>(
        new SpatialGrid(nx, ny, domain, bc));
}

SpatialGrid::SpatialGrid(std::size_t nx, std::size_t ny, Domain domain, Bc bc)
    : nx_(nx), ny_(ny), domain_(domain), bc_(bc) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("grid too small");
    if (domain.lx() <= 0.0 || domain.ly() <= 0.0)
        throw std::invalid_argument("degenerate domain");
    hx_ = domain.lx() / double(nx);
    hy_ = domain.ly() / double(ny);

    const double pi = std::numbers::pi;
    std::lock_guard lock(plan_mutex());
    if (bc == Bc::Periodic) {
        const std::size_t ncx = nx / 2 + 1;
        eig_.resize(ny * ncx);
        mult_.resize(ny * ncx);
        for (std::size_t q = 0; q < ny; ++q) {
            const double qs =
                q <= ny / 2 ? double(q) : double(q) - double(ny);
            const double kq = 2.0 * pi * qs / domain.ly();
            for (std::size_t p = 0; p < ncx; ++p) {
                const double kp = 2.0 * pi * double(p) / domain.lx();
                eig_[q * ncx + p] = kp * kp + kq * kq;
                mult_[q * ncx + p] =
                    (p == 0 || (nx % 2 == 0 && p == nx / 2)) ? 1.0 : 2.0;
            }
        }
        std::vector<double> rbuf(nx * ny);
        std::vector<fftw_complex> cbuf(ny * ncx);
        fwd_plan_ = fftw_plan_dft_r2c_2d(int(ny), int(nx), rbuf.data(),
                                         cbuf.data(),
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_plan_ = fftw_plan_dft_c2r_2d(int(ny), int(nx), cbuf.data(),
                                         rbuf.data(),
                                         FFTW_ESTIMATE | FFTW_UNALIGNED);
    } else {
        eig_.resize(ny * nx);
        mult_.resize(ny * nx);
        for (std::size_t l = 0; l < ny; ++l) {
            const double kl = pi * double(l) / domain.ly();
            for (std::size_t k = 0; k < nx; ++k) {
                const double kk = pi * double(k) / domain.lx();
                eig_[l * nx + k] = kk * kk + kl * kl;
                mult_[l * nx + k] =
                    (k == 0 ? 1.0 : 2.0) * (l == 0 ? 1.0 : 2.0);
            }
        }
        std::vector<double> in(nx * ny), out(nx * ny);
        fwd_plan_ = fftw_plan_r2r_2d(int(ny), int(nx), in.data(), out.data(),
                                     FFTW_REDFT10, FFTW_REDFT10,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
        inv_plan_ = fftw_plan_r2r_2d(int(ny), int(nx), in.data(), out.data(),
                                     FFTW_REDFT01, FFTW_REDFT01,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (!fwd_plan_ || !inv_plan_)
        throw std::runtime_error("fftw plan creation failed");
}

SpatialGrid::~SpatialGrid() {
    std::lock_guard lock(plan_mutex());
    if (fwd_plan_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_plan_));
    if (inv_plan_) fftw_destroy_plan(static_cast<fftw_plan>(inv_plan_));
}

double SpatialGrid::node_x(std::size_t i) const {
    return bc_ == Bc::Periodic ? domain_.ax + double(i) * hx_
                               : domain_.ax + (double(i) + 0.5) * hx_;
}

double SpatialGrid::node_y(std::size_t j) const {
    return bc_ == Bc::Periodic ? domain_.ay + double(j) * hy_
                               : domain_.ay + (double(j) + 0.5) * hy_;
}

std::size_t SpatialGrid::coeff_size() const {
    return bc_ == Bc::Periodic ? 2 * ny_ * (nx_ / 2 + 1) : nx_ * ny_;
}

void SpatialGrid::transform(std::span<const double> values,
                            std::span<double> coeffs) const {
    if (values.size() != size() || coeffs.size() != coeff_size())
        throw std::invalid_argument("transform: size mismatch");
    std::vector<double> in(values.begin(), values.end());
    if (bc_ == Bc::Periodic) {
        fftw_execute_dft_r2c(static_cast<fftw_plan>(fwd_plan_), in.data(),
                             reinterpret_cast<fftw_complex*>(coeffs.data()));
        // Normalize so that the zero mode carries the domain mean.
        kernels::scale(coeffs, 1.0 / double(size()));
    } else {
        fftw_execute_r2r(static_cast<fftw_plan>(fwd_plan_), in.data(),
                         coeffs.data());
        kernels::scale(coeffs, 1.0 / (4.0 * double(size())));
    }
}

void SpatialGrid::inverse_transform(std::span<const double> coeffs,
                                    std::span<double> values) const {
    if (values.size() != size() || coeffs.size() != coeff_size())
        throw std::invalid_argument("inverse_transform: size mismatch");
    std::vector<double> in(coeffs.begin(), coeffs.end());
    if (bc_ == Bc::Periodic) {
        fftw_execute_dft_c2r(static_cast<fftw_plan>(inv_plan_),
                             reinterpret_cast<fftw_complex*>(in.data()),
                             values.data());
    } else {
        fftw_execute_r2r(static_cast<fftw_plan>(inv_plan_), in.data(),
                         values.data());
    }
}

Field make_field(const GridPtr& grid,
                 const std::function<double(double, double)>& f) {
    Field out(grid);
    for (std::size_t j = 0; j < grid->ny(); ++j)
        for (std::size_t i = 0; i < grid->nx(); ++i)
            out.values[j * grid->nx() + i] = f(grid->node_x(i), grid->node_y(j));
    return out;
}

double inner(const Field& f, const Field& g) {
    check_same_grid(f, g);
    return f.grid->quad_weight() * kernels::dot(f.values, g.values);
}

double norm_l2_sq(const Field& f) { return inner(f, f); }

double max_abs(const Field& f) { return kernels::max_abs(f.values); }

double grad_norm_sq(const Field& f) {
    const auto& g = *f.grid;
    std::vector<double> c(g.coeff_size());
    g.transform(f.values, c);
    const auto& eig = g.eigenvalues();
    const auto& mult = g.parseval_mult();
    double s = 0.0;
    if (g.bc() == Bc::Periodic) {
#pragma omp parallel for schedule(static) reduction(+ : s)
        for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(eig.size()); ++k)
            s += mult[k] * eig[k] *
                 (c[2 * k] * c[2 * k] + c[2 * k + 1] * c[2 * k + 1]);
    } else {
#pragma omp parallel for schedule(static) reduction(+ : s)
        for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(eig.size()); ++k)
            s += mult[k] * eig[k] * c[k] * c[k];
    }
    return g.domain().area() * s;
}

namespace {

// Apply u_hat = factor(lambda) * f_hat mode-wise.
template <class F>
Field modewise(const Field& f, F&& factor) {
    const auto& g = *f.grid;
    std::vector<double> c(g.coeff_size());
    g.transform(f.values, c);
    const auto& eig = g.eigenvalues();
    if (g.bc() == Bc::Periodic) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(eig.size()); ++k) {
            const double a = factor(eig[k]);
            c[2 * k] *= a;
            c[2 * k + 1] *= a;
        }
    } else {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t k = 0; k < std::ptrdiff_t(eig.size()); ++k)
            c[k] *= factor(eig[k]);
    }
    Field out(f.grid);
    g.inverse_transform(c, out.values);
    return out;
}

}  // namespace

Field laplacian(const Field& f) {
    return modewise(f, [](double lam) { return -lam; });
}

Field solve_shifted_poisson(double c, double eps2, const Field& f) {
    if (c <= 0.0)
        throw std::invalid_argument("solve_shifted_poisson: c must be > 0");
    if (eps2 < 0.0)
        throw std::invalid_argument("solve_shifted_poisson: eps2 must be >= 0");
    return modewise(f,
                    [c, eps2](double lam) { return 1.0 / (c + eps2 * lam); });
}

}  // namespace fracac
