#include "siclab/momentmap.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <stdexcept>
#include <string>

namespace siclab {

TorusEigenbasis torus_eigenbasis(const Dimension& dim, const CyclicSubgroup& c) {
    const int d = dim.d();
    const CMatrix dp = displacement(dim, c.generator);
    std::vector<CMatrix> powers;
    powers.reserve(d);
    powers.push_back(identity_matrix(dim));
    for (int k = 1; k < d; ++k) powers.push_back(dp * powers.back());
    if ((dp * powers.back() - identity_matrix(dim)).norm() > 1e-8) {
        throw std::runtime_error("generator does not satisfy D_p^d = I");
    }

    TorusEigenbasis basis{c, CMatrix::Zero(d, d)};
    for (int j = 0; j < d; ++j) {
        // Spectral projector onto the omega^j eigenspace.
        CMatrix proj = CMatrix::Zero(d, d);
        for (int k = 0; k < d; ++k) proj += omega_pow(dim, -static_cast<std::int64_t>(j) * k) * powers[k];
        proj /= static_cast<double>(d);
        if (std::abs(proj.trace() - 1.0) > 1e-8) {
            throw std::runtime_error("eigenvalue omega^" + std::to_string(j) +
                                     " does not have multiplicity one");
        }
        Eigen::Index col = 0;
        proj.colwise().norm().maxCoeff(&col);
        CVector e = proj.col(col);
        e.normalize();
        for (int i = 0; i < d; ++i) {
            if (std::abs(e(i)) > 1e-12) {
                e *= std::conj(e(i)) / std::abs(e(i));
                e(i) = std::abs(e(i));
                break;
            }
        }
        if ((dp * e - omega_pow(dim, j) * e).norm() > 1e-10) {
            throw std::runtime_error("eigenvector check failed for omega^" + std::to_string(j));
        }
        basis.vectors.col(j) = e;
    }
    if ((basis.vectors.adjoint() * basis.vectors - identity_matrix(dim)).norm() > 1e-10) {
        throw std::runtime_error("torus eigenbasis is not orthonormal");
    }
    return basis;
}

CMatrix dft_matrix(const Dimension& dim) {
    const int d = dim.d();
    CMatrix v(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) v(i, j) = omega_pow(dim, static_cast<std::int64_t>(i) * j);
    }
    return v;
}

RVector moment_map(const Dimension& dim, const TorusEigenbasis& basis, const CVector& z) {
    require_normalized(dim, z);
    return (basis.vectors.adjoint() * z).cwiseAbs2();
}

double dft_relation_check(const Dimension& dim, const CVector& z, const CyclicSubgroup& c) {
    const TorusEigenbasis basis = torus_eigenbasis(dim, c);
    const CVector mu = moment_map(dim, basis, z).cast<Complex>();
    return (restricted_overlap(dim, z, c) - dft_matrix(dim) * mu).cwiseAbs().maxCoeff();
}

bool in_simplex(const RVector& x, double tol) {
    return std::abs(x.sum() - 1.0) <= tol && x.minCoeff() >= -tol;
}

RVector quadric_values(const RVector& x) {
    const Eigen::Index d = x.size();
    const Eigen::Index n = d / 2;
    RVector f = RVector::Zero(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) f(j) += x(i) * x((i + j) % d);
    }
    return f;
}

bool is_admissible_image(const Dimension& dim, const RVector& x, double tol) {
    if (x.size() != dim.d()) {
        throw std::invalid_argument("simplex point length does not match d");
    }
    const RVector f = quadric_values(x);
    const double lambda = 1.0 / (dim.d() + 1);
    if (std::abs(f(0) - 2.0 * lambda) > tol) return false;
    for (Eigen::Index j = 1; j < f.size(); ++j) {
        if (std::abs(f(j) - lambda) > tol) return false;
    }
    return true;
}

AdmissibleGeometry admissible_geometry(const Dimension& dim) {
    const int d = dim.d();
    if (d < 3) throw std::invalid_argument("admissible geometry requires d >= 3");
    const double dd = d;
    AdmissibleGeometry g;
    g.sphere_radius = std::sqrt((dd - 1.0) / (dd * (dd + 1.0)));
    g.torus_radius = std::sqrt(2.0 / (dd * (dd + 1.0)));
    g.torus_dim = dim.even() ? dim.half() - 1 : dim.half();
    g.components = dim.even() ? 2 : 1;
    return g;
}

double distance_to_barycenter(const RVector& x) {
    return (x.array() - 1.0 / static_cast<double>(x.size())).matrix().norm();
}

double alternating_sum(const RVector& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += (i % 2 == 0 ? 1.0 : -1.0) * x(i);
    return s;
}

int free_angle_count(const Dimension& dim) {
    return dim.even() ? dim.half() - 1 : dim.half();
}

AdmissiblePoint admissible_parametrize(const Dimension& dim, const std::vector<double>& angles,
                                       int branch) {
    const int d = dim.d();
    const int n = dim.half();
    if (static_cast<int>(angles.size()) != free_angle_count(dim)) {
        throw std::invalid_argument("expected " + std::to_string(free_angle_count(dim)) +
                                    " angles for d = " + std::to_string(d));
    }
    if (dim.even() && branch != 1 && branch != -1) {
        throw std::invalid_argument("branch must be +1 or -1");
    }
    const double s = 1.0 / std::sqrt(d + 1.0);
    CVector alpha = CVector::Zero(d);
    alpha(0) = 1.0;
    for (int k = 1; k <= static_cast<int>(angles.size()); ++k) {
        alpha(k) = std::polar(s, angles[k - 1]);
        alpha(d - k) = std::conj(alpha(k));
    }
    if (dim.even()) alpha(n) = branch * s;

    const CVector mu = dft_matrix(dim).adjoint() * alpha / static_cast<double>(d);
    AdmissiblePoint out{mu.real(), false};
    out.inside = in_simplex(out.x);
    return out;
}

RMatrix real_fourier_matrix(const Dimension& dim) {
    const int d = dim.d();
    const int n = dim.half();
    RMatrix p(d, d);
    int row = 0;
    for (int j = 0; j < d; ++j) p(row, j) = std::numbers::sqrt2;
    ++row;
    for (int k = 1; k <= n; ++k) {
        const bool last_even = dim.even() && k == n;
        for (int j = 0; j < d; ++j) {
            const double a = 2.0 * std::numbers::pi * j * k / d;
            p(row, j) = last_even ? std::numbers::sqrt2 * std::cos(a) : 2.0 * std::cos(a);
        }
        ++row;
        if (last_even) continue;
        for (int j = 0; j < d; ++j) p(row, j) = 2.0 * std::sin(2.0 * std::numbers::pi * j * k / d);
        ++row;
    }
    return p;
}

void write_points_csv(std::ostream& os, const std::vector<AdmissiblePoint>& points) {
    if (points.empty()) return;
    const Eigen::Index d = points.front().x.size();
    for (Eigen::Index i = 0; i < d; ++i) os << "x_" << i << ',';
    os << "inside_delta\n";
    os << std::setprecision(17);
    for (const auto& pt : points) {
        for (Eigen::Index i = 0; i < d; ++i) os << pt.x(i) << ',';
        os << (pt.inside ? 1 : 0) << '\n';
    }
}

}  // namespace siclab
