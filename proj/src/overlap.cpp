#include "siclab/overlap.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace siclab {

namespace {

// Rank-one test threshold on the second eigenvalue.
constexpr double kRankTol = 1e-8;

CVector fix_phase(CVector v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            v *= std::conj(v(i)) / std::abs(v(i));
            v(i) = std::abs(v(i));
            break;
        }
    }
    return v;
}

}  // namespace

OverlapTable::OverlapTable(const Dimension& dim)
    : dim_(dim), values_(static_cast<std::size_t>(dim.dbar()) * dim.dbar()) {}

void require_normalized(const Dimension& dim, const CVector& z) {
    if (z.size() != dim.d()) {
        throw std::invalid_argument("vector length " + std::to_string(z.size()) +
                                    " does not match d = " + std::to_string(dim.d()));
    }
    const double n = z.norm();
    if (std::abs(n - 1.0) > kNormTol) {
        throw std::invalid_argument("vector is not normalized (norm " + std::to_string(n) + ")");
    }
}

OverlapTable overlap_map(const Dimension& dim, const CVector& z) {
    require_normalized(dim, z);
    OverlapTable table(dim);
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            const DisplacementIndex p(dim, a, b);
            table(p) = z.dot(apply_displacement(dim, p, z));
        }
    }
    return table;
}

OverlapTable extend_from_zd(const Dimension& dim, const CMatrix& zd_values) {
    const int d = dim.d();
    if (zd_values.rows() != d || zd_values.cols() != d) {
        throw std::invalid_argument("overlap values on Z_d^2 must form a d x d matrix");
    }
    OverlapTable table(dim);
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            const DisplacementIndex p(dim, a % d, b % d);
            Complex v = zd_values(a % d, b % d);
            if (dim.even()) {
                const DisplacementIndex q(dim, a / d, b / d);
                v *= even_periodicity_sign(dim, p, q);
            }
            table(DisplacementIndex(dim, a, b)) = v;
        }
    }
    return table;
}

SicReport is_sic_fiducial(const OverlapTable& table, double tol) {
    const Dimension& dim = table.dim();
    const double target = 1.0 / (dim.d() + 1);
    SicReport report{true, 0.0, DisplacementIndex(dim, 0, 0)};
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            if (a % dim.d() == 0 && b % dim.d() == 0) continue;
            const DisplacementIndex p(dim, a, b);
            const double r = std::abs(std::norm(table(p)) - target);
            if (r > report.worst_residual) {
                report.worst_residual = r;
                report.worst_index = p;
            }
        }
    }
    report.pass = report.worst_residual <= tol;
    return report;
}

SicReport is_sic_fiducial(const Dimension& dim, const CVector& z, double tol) {
    return is_sic_fiducial(overlap_map(dim, z), tol);
}

double pairwise_overlap(const CVector& w, const CVector& z) {
    const double nw = w.squaredNorm();
    const double nz = z.squaredNorm();
    if (nw == 0.0 || nz == 0.0) {
        throw std::invalid_argument("pairwise_overlap requires nonzero vectors");
    }
    if (w.size() != z.size()) {
        throw std::invalid_argument("pairwise_overlap requires vectors of equal length");
    }
    return std::norm(w.dot(z)) / (nw * nz);
}

std::vector<CVector> heisenberg_orbit(const Dimension& dim, const CVector& z) {
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(dim.d()) * dim.d());
    for (int a = 0; a < dim.d(); ++a) {
        for (int b = 0; b < dim.d(); ++b) {
            out.push_back(apply_displacement(dim, DisplacementIndex(dim, a, b), z));
        }
    }
    return out;
}

ProjectorReconstruction reconstruct_projector(const OverlapTable& table, double tol) {
    const Dimension& dim = table.dim();
    const int d = dim.d();
    ProjectorReconstruction out;
    out.projector = CMatrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const DisplacementIndex p(dim, a, b);
            out.projector += table(p) * displacement(dim, p).adjoint();
        }
    }
    out.projector /= static_cast<double>(d);
    out.hermitian = (out.projector - out.projector.adjoint()).norm() <= tol;
    out.trace = out.projector.trace().real();

    const CMatrix herm = (out.projector + out.projector.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
    const auto& evals = solver.eigenvalues();
    out.lambda1 = evals(d - 1);
    out.lambda2 = d > 1 ? evals(d - 2) : 0.0;
    out.vector = fix_phase(solver.eigenvectors().col(d - 1));
    out.rank_one = out.hermitian && std::abs(out.lambda2) <= kRankTol &&
                   std::abs(out.lambda1 - out.trace) <= kRankTol;
    return out;
}

std::int64_t cyclic_subgroup_count(int n) {
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    std::int64_t count = 1;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        std::int64_t pk1 = 1;
        for (int i = 1; i < k; ++i) pk1 *= p;
        count *= pk1 * (p + 1);
    }
    if (m > 1) count *= m + 1;
    return count;
}

std::vector<std::pair<int, int>> cyclic_subgroup_generators(int n) {
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    std::vector<int> units;
    for (int k = 1; k <= n; ++k) {
        if (std::gcd(k, n) == 1) units.push_back(k % n);
    }
    std::set<std::pair<int, int>> canon;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (std::gcd(std::gcd(a, b), n) != 1) continue;
            std::pair<int, int> best{n, n};
            for (int u : units) {
                best = std::min(best, std::pair<int, int>{(u * a) % n, (u * b) % n});
            }
            canon.insert(best);
        }
    }
    return {canon.begin(), canon.end()};
}

std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(const Dimension& dim) {
    std::vector<CyclicSubgroup> out;
    for (const auto& [a, b] : cyclic_subgroup_generators(dim.dbar())) {
        out.push_back({DisplacementIndex(dim, a, b), dim.dbar()});
    }
    return out;
}

CyclicSubgroup make_cyclic_subgroup(const Dimension& dim, const DisplacementIndex& p) {
    if (std::gcd(std::gcd(p.p1(), p.p2()), dim.dbar()) != 1) {
        throw std::invalid_argument("generator (" + std::to_string(p.p1()) + "," +
                                    std::to_string(p.p2()) + ") does not have order " +
                                    std::to_string(dim.dbar()));
    }
    return {p, dim.dbar()};
}

CVector restricted_overlap(const Dimension& dim, const CVector& z, const CyclicSubgroup& c) {
    require_normalized(dim, z);
    CVector out(dim.d());
    for (int k = 0; k < dim.d(); ++k) {
        const DisplacementIndex kp = c.generator.scaled(k);
        out(k) = z.dot(apply_displacement(dim, kp, z));
    }
    return out;
}

}  // namespace siclab
