#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siclab/heisenberg.hpp"
#include "siclab/momentmap.hpp"
#include "siclab/overlap.hpp"

namespace siclab {

struct FiducialRecord {
    int d = 0;
    CVector vector;
    std::string source;  // "exact-family", "exact-catalog" or "numerical"
    double residual = 0.0;
    std::optional<double> t;              // exact-family parameter
    std::optional<std::uint64_t> seed;    // numerical search seed
    std::optional<double> loss;           // numerical search loss
};

/// Unit vector in C^2 whose Heisenberg orbit is a regular tetrahedron.
FiducialRecord exact_fiducial_d2();

/// (0, 1, -e^{it}) / sqrt(2).
FiducialRecord exact_fiducial_d3(double t);

/// Normalized d = 4 fiducial built from rho = 1 + sqrt(2), x = sqrt(2 + sqrt(5)).
/// This is the complex conjugate of [2rho, 1+rho x+i(rho+x), 2i, 1-rho x+i(rho-x)],
/// which is the member whose overlap table equals d4_closed_form_overlaps and is
/// invariant under the order-6 Zauner matrix for the displacement convention used here.
FiducialRecord exact_fiducial_d4();

/// The unnormalized d = 4 vector [2rho, 1+rho x+i(rho+x), 2i, 1-rho x+i(rho-x)].
CVector d4_closed_form_vector();

/// Closed-form d = 4 overlap values on Z_4^2, indexed [p1][p2]:
/// (1/sqrt(5)) times a matrix in u = (psi + i sqrt(phi)) / sqrt(2).
CMatrix d4_closed_form_overlaps();

/// Looks up an exact fiducial by catalog id: "d2", "d3" (t = 0) or "bengtsson".
std::optional<FiducialRecord> catalog_fiducial(const std::string& id);

/// sum_{p in Z_d^2, p != 0} (|Phi_z(p)|^2 - 1/(d+1))^2, with Phi_z(p) = z^* D_p z
/// evaluated on z as given (no renormalization).
double sic_loss(const Dimension& dim, const CVector& z);

/// Gradient of sic_loss with respect to (Re z, Im z), returned as the complex
/// vector dL/dRe z_j + i dL/dIm z_j.
CVector sic_loss_gradient(const Dimension& dim, const CVector& z);

struct SearchConfig {
    int d = 3;
    int restarts = 64;
    int max_iters = 400;
    std::uint64_t seed = 1;
    double tol = kSicTol;
    int workers = 0;             // 0 selects std::thread::hardware_concurrency
    bool stop_on_success = true;
    double initial_damping = 1e-3;
    double gradient_tol = 1e-12;  // stop when |J^T r| < gradient_tol * |r|
};

struct RestartOutcome {
    int index = 0;
    double loss = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool success = false;
};

struct SearchResult {
    bool success = false;
    FiducialRecord best;
    int best_restart = -1;
    int restarts_run = 0;
    int successes = 0;
    std::vector<RestartOutcome> outcomes;  // ordered by restart index, only those that ran
};

/// Deterministic unit start vector for restart i of a search with the given seed.
CVector random_start(int d, std::uint64_t seed, int restart);

/// One local Levenberg-Marquardt minimization of sic_loss starting at z0.
RestartOutcome minimize_from(const Dimension& dim, const CVector& z0, const SearchConfig& config,
                             CVector& z_out);

/// Runs the restarts and returns the best record. With stop_on_success the
/// result is the successful restart of smallest index; otherwise the minimum
/// loss over all restarts, ties broken by index. Never throws on non-convergence.
SearchResult search_fiducial(const SearchConfig& config);

/// Orbit of z has d^2 distinct projective points (pairwise overlap <= 1 - 1e-9).
bool orbit_points_distinct(const Dimension& dim, const CVector& z);

/// Moment image of z for the torus diagonalizing the subgroup generated by (0,1).
RVector standard_moment_image(const Dimension& dim, const CVector& z);

}  // namespace siclab
