#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace fracac {

enum class Bc { Periodic, Neumann };

struct Domain {
    double ax, bx, ay, by;
    double lx() const { return bx - ax; }
    double ly() const { return by - ay; }
    double area() const { return lx() * ly(); }
};

/// Tensor-product spectral grid.  Periodic grids use equispaced nodes
/// excluding the right endpoint (Fourier basis); Neumann grids use cell
/// midpoints (cosine basis, exact under the DCT-II).  Immutable after
/// construction; transform execution is thread-safe.
class SpatialGrid : public std::enable_shared_from_this<SpatialGrid> {
public:
    static std::shared_ptr<const SpatialGrid> create(std::size_t nx,
                                                     std::size_t ny,
                                                     Domain domain, Bc bc);
    ~SpatialGrid();
    SpatialGrid(const SpatialGrid&) = delete;
    SpatialGrid& operator=(const SpatialGrid&) = delete;

    std::size_t nx() const { return nx_; }
    std::size_t ny() const { return ny_; }
    std::size_t size() const { return nx_ * ny_; }
    Bc bc() const { return bc_; }
    const Domain& domain() const { return domain_; }

    double node_x(std::size_t i) const;
    double node_y(std::size_t j) const;
    /// Constant quadrature weight per node; sums to |Omega| exactly.
    double quad_weight() const { return hx_ * hy_; }

    /// Number of doubles in a coefficient buffer (complex interleaved for
    /// the periodic basis).
    std::size_t coeff_size() const;

    void transform(std::span<const double> values,
                   std::span<double> coeffs) const;
    void inverse_transform(std::span<const double> coeffs,
                           std::span<double> values) const;

    /// Eigenvalues of -Laplacian per coefficient slot (one entry per
    /// complex pair for the periodic basis), with lambda_0 = 0.
    const std::vector<double>& eigenvalues() const { return eig_; }
    /// Parseval multiplicity per coefficient slot, chosen so that
    /// integral(f^2) = area * sum(mult * |c|^2).
    const std::vector<double>& parseval_mult() const { return mult_; }

private:
    SpatialGrid(std::size_t nx, std::size_t ny, Domain domain, Bc bc);

    std::size_t nx_, ny_;
    Domain domain_;
    Bc bc_;
    double hx_, hy_;
    std::vector<double> eig_;
    std::vector<double> mult_;
    void* fwd_plan_ = nullptr;
    void* inv_plan_ = nullptr;
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

/// Real-valued nodal field on a grid, row-major (y rows, x columns).
struct Field {
    GridPtr grid;
    std::vector<double> values;

    Field() = default;
    explicit Field(GridPtr g, double v = 0.0)
        : grid(std::move(g)), values(grid->size(), v) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

Field make_field(const GridPtr& grid,
                 const std::function<double(double, double)>& f);

// L2(Omega) inner product via nodal quadrature.
double inner(const Field& f, const Field& g);
double norm_l2_sq(const Field& f);
double max_abs(const Field& f);

// integral(|grad f|^2) via the spectral coefficients.
double grad_norm_sq(const Field& f);

Field laplacian(const Field& f);

// Solve (c I - eps2 * Laplacian) u = f mode-wise; requires c > 0.
Field solve_shifted_poisson(double c, double eps2, const Field& f);

}  // namespace fracac
