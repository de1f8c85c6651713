#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "siclab/heisenberg.hpp"

namespace siclab {

inline constexpr double kNormTol = 1e-9;
inline constexpr double kSicTol = 1e-9;

/// Full dbar x dbar table of Phi_z(p) = <z, D_p z>, row-major over p1 then p2.
class OverlapTable {
public:
    explicit OverlapTable(const Dimension& dim);

    const Dimension& dim() const noexcept { return dim_; }
    Complex operator()(const DisplacementIndex& p) const { return values_[flat(p)]; }
    Complex& operator()(const DisplacementIndex& p) { return values_[flat(p)]; }
    Complex at(std::int64_t p1, std::int64_t p2) const {
        return (*this)(DisplacementIndex(dim_, p1, p2));
    }
    const std::vector<Complex>& values() const noexcept { return values_; }

private:
    std::size_t flat(const DisplacementIndex& p) const {
        return static_cast<std::size_t>(p.p1()) * dim_.dbar() + p.p2();
    }
    Dimension dim_;
    std::vector<Complex> values_;
};

/// Throws std::invalid_argument unless z has length d and unit norm within kNormTol.
void require_normalized(const Dimension& dim, const CVector& z);

OverlapTable overlap_map(const Dimension& dim, const CVector& z);

/// Builds the full table from values on Z_d^2 (a d x d matrix indexed [p1][p2])
/// using D_{p + d q} = (-1)^{<p,q>} D_p for even d.
OverlapTable extend_from_zd(const Dimension& dim, const CMatrix& zd_values);

struct SicReport {
    bool pass = false;
    double worst_residual = 0.0;
    DisplacementIndex worst_index;
};

/// Residual | |Phi(p)|^2 - 1/(d+1) | over every p not congruent to 0 mod d.
SicReport is_sic_fiducial(const OverlapTable& table, double tol = kSicTol);
SicReport is_sic_fiducial(const Dimension& dim, const CVector& z, double tol = kSicTol);

/// Fubini-Study transition probability |<w,z>|^2 / (|w|^2 |z|^2).
double pairwise_overlap(const CVector& w, const CVector& z);

/// The d^2 vectors D_p z, p in Z_d^2.
std::vector<CVector> heisenberg_orbit(const Dimension& dim, const CVector& z);

struct ProjectorReconstruction {
    CMatrix projector;
    bool hermitian = false;
    bool rank_one = false;
    double trace = 0.0;
    double lambda1 = 0.0;  // two largest eigenvalues
    double lambda2 = 0.0;
    CVector vector;        // unit eigenvector for lambda1, first nonzero entry real positive
};

/// (1/d) sum_{p in Z_d^2} Phi(p) D_p^*.
ProjectorReconstruction reconstruct_projector(const OverlapTable& table, double tol = 1e-10);

struct CyclicSubgroup {
    DisplacementIndex generator;
    int order;
};

/// Number of cyclic subgroups of order n in Z_n^2: prod over p^k || n of p^{k-1}(p+1).
std::int64_t cyclic_subgroup_count(int n);

/// Canonical (lexicographically smallest) generators of every order-n cyclic
/// subgroup of Z_n^2.
std::vector<std::pair<int, int>> cyclic_subgroup_generators(int n);

std::vector<CyclicSubgroup> enumerate_cyclic_subgroups(const Dimension& dim);

/// Throws std::invalid_argument if p does not have order dbar.
CyclicSubgroup make_cyclic_subgroup(const Dimension& dim, const DisplacementIndex& p);

/// (Phi_z(k p))_{k=0..d-1} for the generator p of C.
CVector restricted_overlap(const Dimension& dim, const CVector& z, const CyclicSubgroup& c);

}  // namespace siclab
