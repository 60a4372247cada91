#pragma once

#include <cstddef>
#include <vector>

namespace fracac {

enum class SchemeKind { L1, L1CN, L1Plus };

enum class MeshKind { Uniform, Graded, Composite };

/// Strictly increasing time grid 0 = t_0 < t_1 < ... < t_M = T.
struct TimeMesh {
    std::vector<double> points;
    MeshKind kind = MeshKind::Uniform;
    double grading = 1.0;  // r for graded meshes, 1 for uniform

    std::size_t steps() const { return points.size() - 1; }
    double horizon() const { return points.back(); }
    double tau(std::size_t n) const { return points[n] - points[n - 1]; }
    double min_tau() const;
    double max_tau() const;
};

/// Quadrature weights of one discrete fractional operator for the step
/// t_n -> t_{n+1}.  b[0] is the local weight; b[j], j = 1..n, multiplies the
/// difference quotient on [t_{n-j}, t_{n-j+1}].
struct QuadWeights {
    SchemeKind scheme;
    std::size_t n;
    std::vector<double> b;
};

// Graded mesh t_n = (n/M)^r * T; r = 1 gives the uniform mesh.
TimeMesh build_mesh(std::size_t M, double r, double T);

// Graded points on [0, T1] followed by uniform steps of size dt up to T.
// A trailing step shorter than dt is kept if dt does not divide T - T1.
TimeMesh build_composite_mesh(std::size_t M1, double r, double T1, double dt,
                              double T);

QuadWeights l1_weights(const TimeMesh& mesh, std::size_t n, double alpha);
QuadWeights l1cn_weights(const TimeMesh& mesh, std::size_t n, double alpha);
QuadWeights l1plus_weights(const TimeMesh& mesh, std::size_t n, double alpha);

QuadWeights weights_for(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
                        double alpha);

// Local weight b[0] without building the whole vector.
double local_weight(SchemeKind scheme, double tau, double alpha);

// Single history weight b[n-k] for 0 <= k <= n.
double single_weight(SchemeKind scheme, const TimeMesh& mesh, std::size_t n,
                     std::size_t k, double alpha);

// Cancellation-safe a^p - b^p for a >= b > 0.  The naive difference loses
// all precision once a/b -> 1, which happens for far-history weights on
// fine meshes.
double pow_diff(double a, double b, double p);

}  // namespace fracac
