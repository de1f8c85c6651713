#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <utility>

#include <Eigen/Dense>

namespace siclab {

using Complex = std::complex<double>;
using CMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

inline constexpr double kUnitaryTol = 1e-10;
inline constexpr int kMaxDimension = 256;

/// Hilbert-space dimension d together with the index modulus dbar
/// (d for odd d, 2d for even d).
class Dimension {
public:
    explicit Dimension(int d);

    int d() const noexcept { return d_; }
    int dbar() const noexcept { return dbar_; }
    bool even() const noexcept { return d_ % 2 == 0; }
    /// floor(d/2)
    int half() const noexcept { return d_ / 2; }

    friend bool operator==(const Dimension&, const Dimension&) = default;

private:
    int d_;
    int dbar_;
};

/// Non-negative residue of a mod n.
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
    std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

/// e^{i pi k / d}; k is reduced mod 2d first so equal exponents give
/// bit-identical values.
Complex root_of_unity_2d(const Dimension& dim, std::int64_t k);

/// omega^k with omega = e^{2 pi i / d}.
Complex omega_pow(const Dimension& dim, std::int64_t k);

/// tau^k with tau = -e^{pi i / d}.
Complex tau_pow(const Dimension& dim, std::int64_t k);

/// Index p = (p1, p2) in Z_dbar^2, always stored reduced to [0, dbar).
class DisplacementIndex {
public:
    DisplacementIndex(const Dimension& dim, std::int64_t p1, std::int64_t p2);

    int p1() const noexcept { return p1_; }
    int p2() const noexcept { return p2_; }
    int modulus() const noexcept { return n_; }

    DisplacementIndex operator+(const DisplacementIndex& o) const;
    DisplacementIndex operator-() const;
    DisplacementIndex scaled(std::int64_t k) const;

    friend bool operator==(const DisplacementIndex&, const DisplacementIndex&) = default;
    friend auto operator<=>(const DisplacementIndex&, const DisplacementIndex&) = default;

private:
    DisplacementIndex(int n, int p1, int p2) : p1_(p1), p2_(p2), n_(n) {}
    int p1_;
    int p2_;
    int n_;
};

/// Integer 2x2 matrix acting on column vectors p, entries reduced mod dbar.
struct IntMatrix2 {
    std::array<std::int64_t, 4> m{1, 0, 0, 1};  // row-major [[m0, m1], [m2, m3]]

    DisplacementIndex apply(const Dimension& dim, const DisplacementIndex& p) const;
};

CMatrix identity_matrix(const Dimension& dim);

/// Frobenius norm of U U* - I.
double unitarity_defect(const CMatrix& u);
bool is_unitary(const CMatrix& u, double tol = kUnitaryTol);

/// Shift w (e_j -> e_{j+1}) and clock h = diag(1, omega, ..., omega^{d-1}).
std::pair<CMatrix, CMatrix> shift_and_clock(const Dimension& dim);

/// D_p = tau^{p1 p2} w^{p1} h^{p2}.
CMatrix displacement(const Dimension& dim, const DisplacementIndex& p);

/// D_p z without materializing D_p.
CVector apply_displacement(const Dimension& dim, const DisplacementIndex& p, const CVector& z);

/// D_p^* z.
CVector apply_displacement_adjoint(const Dimension& dim, const DisplacementIndex& p,
                                   const CVector& z);

/// <p, q> = q1 p2 - q2 p1 mod dbar.
int symplectic_pairing(const Dimension& dim, const DisplacementIndex& p, const DisplacementIndex& q);

/// (-1)^{<p,q>}, the sign in D_{p + d q} = (-1)^{<p,q>} D_p. Even d only.
int even_periodicity_sign(const Dimension& dim, const DisplacementIndex& p,
                          const DisplacementIndex& q);

struct CliffordImage {
    Complex phase;
    DisplacementIndex index;
};

/// Predicted right-hand side of U(F,q) D_p U(F,q)^{-1} = omega^{<q,Fp>} D_{Fp}.
CliffordImage clifford_conjugate(const Dimension& dim, const IntMatrix2& f,
                                 const DisplacementIndex& q, const DisplacementIndex& p);

struct CliffordCheck {
    bool ok = true;
    double worst_residual = 0.0;
    std::optional<DisplacementIndex> offending;
};

/// Checks U D_p U^* == omega^{<q,Fp>} D_{Fp} (up to one global phase of U,
/// which cancels) for every p in Z_dbar^2.
CliffordCheck verify_clifford(const Dimension& dim, const IntMatrix2& f, const DisplacementIndex& q,
                              const CMatrix& u, double tol = kUnitaryTol);

struct CliffordIdentification {
    IntMatrix2 f;
    DisplacementIndex q;
    CliffordCheck check;
};

/// Recovers (F, q) for a Clifford unitary by locating the images of D_{(1,0)}
/// and D_{(0,1)}, then searching q in Z_d^2 for the phases. Returns nullopt if
/// U does not normalize the Heisenberg group in this form.
std::optional<CliffordIdentification> identify_clifford(const Dimension& dim, const CMatrix& u,
                                                        double tol = kUnitaryTol);

}  // namespace siclab
