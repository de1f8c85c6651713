#pragma once

#include <ostream>
#include <vector>

#include "siclab/heisenberg.hpp"
#include "siclab/overlap.hpp"

namespace siclab {

using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kAdmissibleTol = 1e-9;
inline constexpr double kSimplexTol = 1e-12;

/// Orthonormal eigenvectors of D_p (p the generator of C) as columns, column j
/// having eigenvalue omega^j. Each column has its first nonzero entry real positive.
struct TorusEigenbasis {
    CyclicSubgroup subgroup;
    CMatrix vectors;
};

TorusEigenbasis torus_eigenbasis(const Dimension& dim, const CyclicSubgroup& c);

/// V_{ij} = omega^{ij}.
CMatrix dft_matrix(const Dimension& dim);

/// (|<e_j, z>|^2)_j.
RVector moment_map(const Dimension& dim, const TorusEigenbasis& basis, const CVector& z);

/// max_k |Phi_z(k p) - (V mu)_k|.
double dft_relation_check(const Dimension& dim, const CVector& z, const CyclicSubgroup& c);

/// True if x sums to 1 and has no entry below -kSimplexTol.
bool in_simplex(const RVector& x, double tol = kSimplexTol);

/// f_j = sum_i x_i x_{i+j} (cyclic) for j = 0..floor(d/2).
RVector quadric_values(const RVector& x);

/// |f_0 - 2/(d+1)| <= tol and |f_j - 1/(d+1)| <= tol for 1 <= j <= n.
bool is_admissible_image(const Dimension& dim, const RVector& x, double tol = kAdmissibleTol);

struct AdmissibleGeometry {
    double sphere_radius;
    int torus_dim;
    double torus_radius;
    int components;
};

AdmissibleGeometry admissible_geometry(const Dimension& dim);

/// Euclidean distance from x to the barycenter (1/d, ..., 1/d).
double distance_to_barycenter(const RVector& x);

/// sum_i (-1)^i x_i.
double alternating_sum(const RVector& x);

/// Number of free angles taken by admissible_parametrize: n for odd d, n - 1 for even d.
int free_angle_count(const Dimension& dim);

struct AdmissiblePoint {
    RVector x;
    bool inside;
};

/// Point of the admissible set whose restricted overlaps are
/// alpha_k = e^{i theta_k} / sqrt(d+1) for 1 <= k <= free_angle_count, and
/// alpha_n = branch / sqrt(d+1) for even d.
AdmissiblePoint admissible_parametrize(const Dimension& dim, const std::vector<double>& angles,
                                       int branch = 1);

/// Real matrix with rows sqrt(2)*1, 2cos(2 pi jk/d), 2sin(2 pi jk/d) for 1 <= k <= n
/// (the sine row dropped at k = n for even d, where the cosine row is scaled by
/// 1/sqrt(2)). (1/sqrt(2d)) P is orthogonal.
RMatrix real_fourier_matrix(const Dimension& dim);

/// Writes header x_0..x_{d-1},inside_delta then one row per point.
void write_points_csv(std::ostream& os, const std::vector<AdmissiblePoint>& points);

}  // namespace siclab
