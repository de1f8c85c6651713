#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "siclab/heisenberg.hpp"
#include "siclab/overlap.hpp"
#include "siclab/quadfield.hpp"

namespace siclab {

inline constexpr int kExhaustiveDbarLimit = 40;
inline constexpr double kSymmetryTol = 1e-8;

/// 2x2 integer matrix with entries reduced mod n, row-major.
struct Mat2Residue {
    std::array<std::int64_t, 4> m{1, 0, 0, 1};
    std::int64_t n = 1;

    static Mat2Residue identity(std::int64_t n);
    static Mat2Residue scalar(std::int64_t a, std::int64_t n);
    static Mat2Residue from(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                            std::int64_t n);

    std::int64_t det() const;
    std::int64_t trace() const;
    bool invertible() const;
    Mat2Residue operator*(const Mat2Residue& o) const;
    Mat2Residue operator+(const Mat2Residue& o) const;
    Mat2Residue scaled(std::int64_t k) const;
    Mat2Residue pow(std::int64_t e) const;
    /// Smallest k >= 1 with G^k = I, or 0 if none up to n^4.
    std::int64_t order() const;
    std::pair<std::int64_t, std::int64_t> apply(std::int64_t p1, std::int64_t p2) const;
    DisplacementIndex apply(const Dimension& dim, const DisplacementIndex& p) const;
    IntMatrix2 to_int_matrix() const { return {m}; }

    friend bool operator==(const Mat2Residue&, const Mat2Residue&) = default;
    friend auto operator<=>(const Mat2Residue&, const Mat2Residue&) = default;
};

std::string to_string(const Mat2Residue& g);

struct ZaunerMatrices {
    Mat2Residue f_z;      // [[0,-1],[1,-1]]
    Mat2Residue f_hat_z;  // [[0,d-1],[d+1,d-1]]
};

ZaunerMatrices zauner_matrix(const Dimension& dim);

struct SymmetryGroup {
    std::vector<Mat2Residue> elements;  // sorted
    bool closed = false;
};

/// All G in GL_2(Z_dbar) with max_p |Phi(Gp) - Phi(p)| <= tol. Throws
/// std::length_error when dbar exceeds kExhaustiveDbarLimit.
SymmetryGroup overlap_symmetry_group(const OverlapTable& table, double tol = kSymmetryTol);

/// {aI + bF : gcd(det, n) = 1}. Rejects F without F^3 = I and tr F = -1.
std::vector<Mat2Residue> build_M(const Mat2Residue& f);

/// Units of Z_n[G] for any 2x2 G (no order condition), used for the mod-3
/// factor of the algebraic model.
std::vector<Mat2Residue> unit_group_of_algebra(const Mat2Residue& g);

enum class FiducialType { Z, A4, A6, A8 };

std::string to_string(FiducialType t);

FiducialType classify_type(int d);

/// gcd(d,3) = 1, or 3 | D and d != 3 mod 27.
bool j_isomorphism_criteria(int d);

struct SplitLabel {
    std::int64_t p;
    int e1;
    int e2;
};

struct Orbit {
    std::pair<int, int> rep;  // lexicographically smallest member
    std::int64_t size;
    std::int64_t gcd_level;   // gcd(p1, p2, dbar)
    std::vector<SplitLabel> split_labels;
};

struct OrbitReport {
    int dbar = 0;
    std::vector<Orbit> orbits;
    std::int64_t group_order = 0;
};

/// Orbits of Z_n^2 under p -> G p for G in the group (union-find).
/// split_labels are filled when zauner_split is set: for each prime p = 1 mod 3
/// dividing n they give the valuations of the two eigen-components of F_z.
OrbitReport m_orbits(int n, const std::vector<Mat2Residue>& group, bool zauner_split = false);

struct ModelCounts {
    std::int64_t orbit_count;
    std::int64_t divisor_count;
    std::int64_t group_order;
    bool match;
};

struct CorrespondenceReport {
    int d = 0;
    int dbar = 0;
    FiducialType type = FiducialType::Z;
    bool j_criteria = true;
    bool treat3_as_ramified = false;
    Mat2Residue f;                       // order-3 witness for the predicted type
    OrbitReport orbits;                  // M = Z_dbar[I,F_z]^x
    std::int64_t orbit_count = 0;
    std::int64_t divisor_count = 0;
    bool match = false;
    std::optional<ModelCounts> algebraic;  // type-a: mod-3 factor (O_K/3)^x
};

/// Order-3, trace -1 matrix with F = I mod 3 and F = F_z mod dbar/3 (requires 9 not dividing dbar).
Mat2Residue type_a_witness(const Dimension& dim);

/// Throws std::length_error beyond kExhaustiveDbarLimit.
CorrespondenceReport orbit_divisor_correspondence(int d);

bool one_orbit_predicate(int d);

/// Orbit sizes of M/Z on the p+1 lines of Z_p^2, sorted descending.
std::vector<std::int64_t> projective_orbit_sizes(std::int64_t p, const Mat2Residue& f);

struct LevelOrders {
    std::int64_t n;
    std::int64_t order_OK_units;
    std::int64_t order_uf_subgroup;
    std::int64_t quotient_order;
};

struct RayClassOrders {
    std::int64_t order_OK_units = 0;
    std::int64_t order_uf_subgroup = 0;
    std::int64_t quotient_order = 0;
    std::vector<LevelOrders> per_divisor;  // every n | dbar, n > 1
};

/// |<[-1],[u]>| in (O_K/(n))^x.
std::int64_t sign_unit_subgroup_order(const FieldData& fd, const QuadInt& u, std::int64_t n);

RayClassOrders ray_class_group_orders(int d);

}  // namespace siclab
