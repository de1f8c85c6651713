#include "siclab/heisenberg.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace siclab {

Dimension::Dimension(int d) : d_(d), dbar_(d % 2 == 0 ? 2 * d : d) {
    if (d < 2 || d > kMaxDimension) {
        throw std::invalid_argument("dimension must lie in [2, " + std::to_string(kMaxDimension) +
                                    "], got " + std::to_string(d));
    }
}

Complex root_of_unity_2d(const Dimension& dim, std::int64_t k) {
    const std::int64_t two_d = 2 * dim.d();
    const std::int64_t r = mod(k, two_d);
    // Exact values at the quarter turns.
    if (r == 0) return {1.0, 0.0};
    if (2 * r == two_d) return {-1.0, 0.0};
    if (4 * r == two_d) return {0.0, 1.0};
    if (4 * r == 3 * two_d) return {0.0, -1.0};
    const double angle = std::numbers::pi * static_cast<double>(r) / dim.d();
    return {std::cos(angle), std::sin(angle)};
}

Complex omega_pow(const Dimension& dim, std::int64_t k) {
    return root_of_unity_2d(dim, 2 * mod(k, dim.d()));
}

Complex tau_pow(const Dimension& dim, std::int64_t k) {
    // tau = e^{i pi (d+1)/d}
    return root_of_unity_2d(dim, mod(k, 2 * dim.d()) * (dim.d() + 1));
}

DisplacementIndex::DisplacementIndex(const Dimension& dim, std::int64_t p1, std::int64_t p2)
    : p1_(static_cast<int>(mod(p1, dim.dbar()))),
      p2_(static_cast<int>(mod(p2, dim.dbar()))),
      n_(dim.dbar()) {}

DisplacementIndex DisplacementIndex::operator+(const DisplacementIndex& o) const {
    return {n_, (p1_ + o.p1_) % n_, (p2_ + o.p2_) % n_};
}

DisplacementIndex DisplacementIndex::operator-() const {
    return {n_, (n_ - p1_) % n_, (n_ - p2_) % n_};
}

DisplacementIndex DisplacementIndex::scaled(std::int64_t k) const {
    return {n_, static_cast<int>(mod(k * p1_, n_)), static_cast<int>(mod(k * p2_, n_))};
}

DisplacementIndex IntMatrix2::apply(const Dimension& dim, const DisplacementIndex& p) const {
    return {dim, m[0] * p.p1() + m[1] * p.p2(), m[2] * p.p1() + m[3] * p.p2()};
}

CMatrix identity_matrix(const Dimension& dim) {
    return CMatrix::Identity(dim.d(), dim.d());
}

double unitarity_defect(const CMatrix& u) {
    return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).norm();
}

bool is_unitary(const CMatrix& u, double tol) {
    return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

std::pair<CMatrix, CMatrix> shift_and_clock(const Dimension& dim) {
    const int d = dim.d();
    CMatrix w = CMatrix::Zero(d, d);
    CMatrix h = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        w((j + 1) % d, j) = 1.0;
        h(j, j) = omega_pow(dim, j);
    }
    return {w, h};
}

namespace {

// Exponent of e^{i pi / d} for the (j + p1, j) entry of D_p.
std::int64_t entry_exponent(const Dimension& dim, const DisplacementIndex& p, int j) {
    const std::int64_t p1 = p.p1();
    const std::int64_t p2 = p.p2();
    return p1 * p2 * (dim.d() + 1) + 2 * p2 * j;
}

}  // namespace

CMatrix displacement(const Dimension& dim, const DisplacementIndex& p) {
    const int d = dim.d();
    CMatrix out = CMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        out((j + p.p1()) % d, j) = root_of_unity_2d(dim, entry_exponent(dim, p, j));
    }
    return out;
}

CVector apply_displacement(const Dimension& dim, const DisplacementIndex& p, const CVector& z) {
    const int d = dim.d();
    CVector out(d);
    for (int j = 0; j < d; ++j) {
        out((j + p.p1()) % d) = root_of_unity_2d(dim, entry_exponent(dim, p, j)) * z(j);
    }
    return out;
}

CVector apply_displacement_adjoint(const Dimension& dim, const DisplacementIndex& p,
                                   const CVector& z) {
    const int d = dim.d();
    CVector out(d);
    for (int j = 0; j < d; ++j) {
        out(j) = std::conj(root_of_unity_2d(dim, entry_exponent(dim, p, j))) * z((j + p.p1()) % d);
    }
    return out;
}

int symplectic_pairing(const Dimension& dim, const DisplacementIndex& p,
                       const DisplacementIndex& q) {
    const std::int64_t v = static_cast<std::int64_t>(q.p1()) * p.p2() -
                           static_cast<std::int64_t>(q.p2()) * p.p1();
    return static_cast<int>(mod(v, dim.dbar()));
}

int even_periodicity_sign(const Dimension& dim, const DisplacementIndex& p,
                          const DisplacementIndex& q) {
    if (!dim.even()) {
        throw std::invalid_argument("even_periodicity_sign requires even d (odd d is d-periodic)");
    }
    return symplectic_pairing(dim, p, q) % 2 == 0 ? 1 : -1;
}

CliffordImage clifford_conjugate(const Dimension& dim, const IntMatrix2& f,
                                 const DisplacementIndex& q, const DisplacementIndex& p) {
    const DisplacementIndex fp = f.apply(dim, p);
    return {omega_pow(dim, symplectic_pairing(dim, q, fp)), fp};
}

CliffordCheck verify_clifford(const Dimension& dim, const IntMatrix2& f, const DisplacementIndex& q,
                              const CMatrix& u, double tol) {
    CliffordCheck check;
    const CMatrix u_adj = u.adjoint();
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            const DisplacementIndex p(dim, a, b);
            const CliffordImage img = clifford_conjugate(dim, f, q, p);
            const double r =
                (u * displacement(dim, p) * u_adj - img.phase * displacement(dim, img.index)).norm();
            if (r > check.worst_residual) {
                check.worst_residual = r;
                if (r > tol) check.offending = p;
            }
        }
    }
    check.ok = check.worst_residual <= tol;
    if (check.ok) check.offending.reset();
    return check;
}

namespace {

// All r with U D_p U^* proportional to D_r.
std::vector<DisplacementIndex> conjugate_images(const Dimension& dim, const CMatrix& conj,
                                                double tol) {
    std::vector<DisplacementIndex> out;
    const int d = dim.d();
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            const DisplacementIndex r(dim, a, b);
            const CMatrix dr = displacement(dim, r);
            const Complex c = (dr.adjoint() * conj).trace() / static_cast<double>(d);
            if (std::abs(std::abs(c) - 1.0) < 1e-8 && (conj - c * dr).norm() < tol) {
                out.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace

std::optional<CliffordIdentification> identify_clifford(const Dimension& dim, const CMatrix& u,
                                                        double tol) {
    if (!is_unitary(u, tol)) return std::nullopt;
    const CMatrix u_adj = u.adjoint();
    const auto img1 =
        conjugate_images(dim, u * displacement(dim, DisplacementIndex(dim, 1, 0)) * u_adj, tol);
    const auto img2 =
        conjugate_images(dim, u * displacement(dim, DisplacementIndex(dim, 0, 1)) * u_adj, tol);
    for (const auto& c1 : img1) {
        for (const auto& c2 : img2) {
            IntMatrix2 f{{c1.p1(), c2.p1(), c1.p2(), c2.p2()}};
            for (int q1 = 0; q1 < dim.d(); ++q1) {
                for (int q2 = 0; q2 < dim.d(); ++q2) {
                    const DisplacementIndex q(dim, q1, q2);
                    CliffordCheck check = verify_clifford(dim, f, q, u, tol);
                    if (check.ok) return CliffordIdentification{f, q, check};
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace siclab
