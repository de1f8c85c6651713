#include "siclab/fiducials.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include <Eigen/QR>

namespace siclab {

namespace {

FiducialRecord make_record(const Dimension& dim, CVector z, std::string source) {
    z.normalize();
    FiducialRecord rec;
    rec.d = dim.d();
    rec.vector = std::move(z);
    rec.source = std::move(source);
    rec.residual = is_sic_fiducial(dim, rec.vector).worst_residual;
    return rec;
}

// Residuals |Phi_p|^2 / |z|^4 - 1/(d+1) for p in Z_d^2 minus 0, and their
// Jacobian with respect to (Re z, Im z), evaluated at a unit vector z.
void residuals_and_jacobian(const Dimension& dim, const CVector& z, Eigen::VectorXd& r,
                            Eigen::MatrixXd& jac) {
    const int d = dim.d();
    const double lambda = 1.0 / (d + 1);
    const int m = d * d - 1;
    r.resize(m);
    jac.resize(m, 2 * d);
    int row = 0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            if (a == 0 && b == 0) continue;
            const DisplacementIndex p(dim, a, b);
            const CVector dz = apply_displacement(dim, p, z);
            const CVector dsz = apply_displacement_adjoint(dim, p, z);
            const Complex phi = z.dot(dz);
            const double g = std::norm(phi);
            r(row) = g - lambda;
            const CVector grad = 2.0 * (std::conj(phi) * dz + phi * dsz) - 4.0 * g * z;
            jac.row(row).head(d) = grad.real().transpose();
            jac.row(row).tail(d) = grad.imag().transpose();
            ++row;
        }
    }
}

}  // namespace

FiducialRecord exact_fiducial_d2() {
    const Dimension dim(2);
    // Bloch vector (1,1,1)/sqrt(3) up to the signs fixed by D_p.
    const double theta = std::acos(1.0 / std::sqrt(3.0));
    CVector z(2);
    z << std::cos(theta / 2), std::polar(std::sin(theta / 2), std::numbers::pi / 4);
    return make_record(dim, z, "exact-catalog");
}

FiducialRecord exact_fiducial_d3(double t) {
    const Dimension dim(3);
    CVector z(3);
    z << 0.0, 1.0, -std::polar(1.0, t);
    FiducialRecord rec = make_record(dim, z, "exact-family");
    rec.t = t;
    return rec;
}

CVector d4_closed_form_vector() {
    const double rho = 1.0 + std::numbers::sqrt2;
    const double x = std::sqrt(2.0 + std::sqrt(5.0));
    CVector z(4);
    z << 2.0 * rho, Complex(1.0 + rho * x, rho + x), Complex(0.0, 2.0),
        Complex(1.0 - rho * x, rho - x);
    return z;
}

FiducialRecord exact_fiducial_d4() {
    return make_record(Dimension(4), d4_closed_form_vector().conjugate(), "exact-catalog");
}

CMatrix d4_closed_form_overlaps() {
    const double s5 = std::sqrt(5.0);
    const double phi = (s5 + 1.0) / 2.0;
    const double psi = (s5 - 1.0) / 2.0;
    const Complex u = Complex(psi, std::sqrt(phi)) / std::numbers::sqrt2;
    const Complex ub = std::conj(u);
    CMatrix m(4, 4);
    m << s5, u, -1.0, ub,
         u, ub, -ub, ub,
         -1.0, -u, -1.0, ub,
         ub, u, u, u;
    return m / s5;
}

std::optional<FiducialRecord> catalog_fiducial(const std::string& id) {
    if (id == "d2") return exact_fiducial_d2();
    if (id == "d3") return exact_fiducial_d3(0.0);
    if (id == "bengtsson" || id == "d4") return exact_fiducial_d4();
    return std::nullopt;
}

double sic_loss(const Dimension& dim, const CVector& z) {
    const int d = dim.d();
    const double lambda = 1.0 / (d + 1);
    double loss = 0.0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            if (a == 0 && b == 0) continue;
            const Complex phi = z.dot(apply_displacement(dim, DisplacementIndex(dim, a, b), z));
            const double e = std::norm(phi) - lambda;
            loss += e * e;
        }
    }
    return loss;
}

CVector sic_loss_gradient(const Dimension& dim, const CVector& z) {
    const int d = dim.d();
    const double lambda = 1.0 / (d + 1);
    CVector grad = CVector::Zero(d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            if (a == 0 && b == 0) continue;
            const DisplacementIndex p(dim, a, b);
            const CVector dz = apply_displacement(dim, p, z);
            const CVector dsz = apply_displacement_adjoint(dim, p, z);
            const Complex phi = z.dot(dz);
            const double e = std::norm(phi) - lambda;
            grad += 4.0 * e * (std::conj(phi) * dz + phi * dsz);
        }
    }
    return grad;
}

CVector random_start(int d, std::uint64_t seed, int restart) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    CVector z(d);
    for (int i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        z(i) = Complex(re, im);
    }
    return z.normalized();
}

RestartOutcome minimize_from(const Dimension& dim, const CVector& z0, const SearchConfig& config,
                             CVector& z_out) {
    const int d = dim.d();
    CVector z = z0.normalized();
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    residuals_and_jacobian(dim, z, r, jac);
    double loss = r.squaredNorm();
    double mu = config.initial_damping;
    RestartOutcome out;
    int iter = 0;
    for (; iter < config.max_iters; ++iter) {
        const Eigen::VectorXd g = jac.transpose() * r;
        if (loss < 1e-30 || g.norm() < config.gradient_tol * std::sqrt(loss)) break;
        // Damped step as the least-squares solution of [J; sqrt(mu) I] s = [-r; 0],
        // solved by QR so a rank-deficient J keeps full working precision.
        const Eigen::Index m = jac.rows();
        Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(m + 2 * d, 2 * d);
        aug.topRows(m) = jac;
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 2 * d);
        rhs.head(m) = -r;
        bool accepted = false;
        while (mu < 1e12) {
            aug.bottomRows(2 * d) = std::sqrt(mu) * Eigen::MatrixXd::Identity(2 * d, 2 * d);
            const Eigen::VectorXd step = aug.householderQr().solve(rhs);
            CVector trial(d);
            for (int i = 0; i < d; ++i) trial(i) = z(i) + Complex(step(i), step(d + i));
            trial.normalize();
            Eigen::VectorXd r_trial;
            Eigen::MatrixXd jac_trial;
            residuals_and_jacobian(dim, trial, r_trial, jac_trial);
            const double trial_loss = r_trial.squaredNorm();
            if (trial_loss < loss) {
                z = trial;
                r = std::move(r_trial);
                jac = std::move(jac_trial);
                loss = trial_loss;
                mu = std::max(mu / 3.0, 1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if (!accepted) break;
    }
    z_out = z;
    out.loss = loss;
    out.iterations = iter;
    out.residual = is_sic_fiducial(dim, z, config.tol).worst_residual;
    out.success = out.residual <= config.tol;
    return out;
}

SearchResult search_fiducial(const SearchConfig& config) {
    if (config.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
    if (!(config.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (config.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    const Dimension dim(config.d);

    int workers = config.workers > 0 ? config.workers
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, config.restarts);

    std::vector<std::optional<RestartOutcome>> outcomes(config.restarts);
    std::vector<CVector> vectors(config.restarts);
    std::atomic<int> next{0};
    std::atomic<int> first_success{std::numeric_limits<int>::max()};

    auto work = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= config.restarts) return;
            if (config.stop_on_success && i > first_success.load()) return;
            CVector z;
            RestartOutcome o = minimize_from(dim, random_start(config.d, config.seed, i), config, z);
            o.index = i;
            outcomes[i] = o;
            vectors[i] = std::move(z);
            if (o.success) {
                int cur = first_success.load();
                while (i < cur && !first_success.compare_exchange_weak(cur, i)) {
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    SearchResult result;
    const int limit = config.stop_on_success
                          ? std::min(config.restarts - 1, first_success.load())
                          : config.restarts - 1;
    for (int i = 0; i <= limit; ++i) {
        if (!outcomes[i]) continue;
        result.outcomes.push_back(*outcomes[i]);
        ++result.restarts_run;
        if (outcomes[i]->success) ++result.successes;
    }
    int best = -1;
    if (config.stop_on_success && first_success.load() < config.restarts) {
        best = first_success.load();
    } else {
        for (const auto& o : result.outcomes) {
            if (best < 0 || o.loss < outcomes[best]->loss) best = o.index;
        }
    }
    result.best_restart = best;
    result.success = outcomes[best]->success;
    result.best.d = config.d;
    result.best.vector = vectors[best];
    result.best.source = "numerical";
    result.best.residual = outcomes[best]->residual;
    result.best.seed = config.seed;
    result.best.loss = outcomes[best]->loss;
    return result;
}

bool orbit_points_distinct(const Dimension& dim, const CVector& z) {
    const auto orbit = heisenberg_orbit(dim, z);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        for (std::size_t j = i + 1; j < orbit.size(); ++j) {
            if (pairwise_overlap(orbit[i], orbit[j]) > 1.0 - 1e-9) return false;
        }
    }
    return true;
}

RVector standard_moment_image(const Dimension& dim, const CVector& z) {
    if (z.size() != dim.d()) throw std::invalid_argument("vector length does not match d");
    return z.cwiseAbs2() / z.squaredNorm();
}

}  // namespace siclab
