#include "siclab/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "siclab/fiducials.hpp"
#include "siclab/galois.hpp"
#include "siclab/heisenberg.hpp"
#include "siclab/momentmap.hpp"
#include "siclab/overlap.hpp"
#include "siclab/quadfield.hpp"

namespace siclab {

namespace {

CVector random_unit(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> normal;
    CVector z(d);
    for (int i = 0; i < d; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        z(i) = Complex(re, im);
    }
    return z.normalized();
}

// max over p, q of |D_p D_q - tau^{<p,q>} D_{p+q}|, columnwise.
double dd_relation_residual(const Dimension& dim) {
    std::vector<CMatrix> ds;
    for (int a = 0; a < dim.dbar(); ++a)
        for (int b = 0; b < dim.dbar(); ++b) ds.push_back(displacement(dim, DisplacementIndex(dim, a, b)));
    double worst = 0.0;
    for (int a = 0; a < dim.dbar(); ++a) {
        for (int b = 0; b < dim.dbar(); ++b) {
            const DisplacementIndex p(dim, a, b);
            for (int c = 0; c < dim.dbar(); ++c) {
                for (int e = 0; e < dim.dbar(); ++e) {
                    const DisplacementIndex q(dim, c, e);
                    const DisplacementIndex s = p + q;
                    const CMatrix& dq = ds[static_cast<std::size_t>(c) * dim.dbar() + e];
                    const CMatrix& dsum = ds[static_cast<std::size_t>(s.p1()) * dim.dbar() + s.p2()];
                    const Complex ph = tau_pow(dim, symplectic_pairing(dim, p, q));
                    double r = 0.0;
                    for (int j = 0; j < dim.d(); ++j) {
                        r += (apply_displacement(dim, p, dq.col(j)) - ph * dsum.col(j)).squaredNorm();
                    }
                    worst = std::max(worst, std::sqrt(r));
                }
            }
        }
    }
    return worst;
}

}  // namespace

SelftestResult run_selftest(int dmin, int dmax, std::ostream* log) {
    SelftestResult result;
    auto check = [&](bool ok, const std::string& what) {
        ++result.checks;
        if (!ok) {
            ++result.failures;
            result.failed.push_back(what);
        }
        if (log) *log << (ok ? "ok   " : "FAIL ") << what << '\n';
    };
    auto guarded = [&](const std::string& what, const std::function<bool()>& fn) {
        try {
            check(fn(), what);
        } catch (const std::exception& e) {
            check(false, what + " (exception: " + e.what() + ")");
        }
    };

    std::mt19937_64 rng(20240601);
    for (int d = std::max(dmin, 2); d <= dmax; ++d) {
        const Dimension dim(d);
        const std::string tag = "d=" + std::to_string(d) + " ";

        guarded(tag + "D_p D_q = tau^<p,q> D_{p+q}", [&] { return dd_relation_residual(dim) < 1e-10; });

        guarded(tag + "periodicity of D", [&] {
            for (int a = 0; a < dim.dbar(); ++a) {
                for (int b = 0; b < dim.dbar(); ++b) {
                    const DisplacementIndex p(dim, a, b);
                    for (const auto& q : {DisplacementIndex(dim, 1, 0), DisplacementIndex(dim, 0, 1)}) {
                        const double sign = dim.even() ? even_periodicity_sign(dim, p, q) : 1.0;
                        const CMatrix lhs = displacement(dim, p + q.scaled(d));
                        if ((lhs - sign * displacement(dim, p)).norm() > 1e-12) return false;
                    }
                }
            }
            return true;
        });

        guarded(tag + "unitary operator basis", [&] {
            for (int a = 0; a < d * d; ++a) {
                const CMatrix da = displacement(dim, DisplacementIndex(dim, a / d, a % d));
                if (!is_unitary(da)) return false;
                for (int b = 0; b < d * d; ++b) {
                    const CMatrix db = displacement(dim, DisplacementIndex(dim, b / d, b % d));
                    const Complex t = (da.adjoint() * db).trace();
                    if (std::abs(t - (a == b ? Complex(d) : Complex(0))) > 1e-10) return false;
                }
            }
            return true;
        });

        guarded(tag + "overlap roundtrip and Hermitian symmetry", [&] {
            for (int trial = 0; trial < 5; ++trial) {
                const CVector z = random_unit(rng, d);
                const OverlapTable t = overlap_map(dim, z);
                const auto rec = reconstruct_projector(t);
                if ((rec.projector - z * z.adjoint()).norm() > 1e-10 || !rec.rank_one) return false;
                for (int a = 0; a < dim.dbar(); ++a) {
                    for (int b = 0; b < dim.dbar(); ++b) {
                        const DisplacementIndex p(dim, a, b);
                        if (std::abs(t(-p) - std::conj(t(p))) > 1e-12) return false;
                    }
                }
            }
            return true;
        });

        guarded(tag + "cyclic subgroup count", [&] {
            return static_cast<std::int64_t>(enumerate_cyclic_subgroups(dim).size()) ==
                   cyclic_subgroup_count(dim.dbar());
        });

        guarded(tag + "DFT relation on every cyclic subgroup", [&] {
            const CVector z = random_unit(rng, d);
            for (const auto& c : enumerate_cyclic_subgroups(dim)) {
                if (dft_relation_check(dim, z, c) > 1e-10) return false;
            }
            return true;
        });

        if (d >= 3) {
            guarded(tag + "admissible parametrization lies on the sphere", [&] {
                const AdmissibleGeometry g = admissible_geometry(dim);
                std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
                for (int trial = 0; trial < 20; ++trial) {
                    std::vector<double> th(free_angle_count(dim));
                    for (auto& x : th) x = angle(rng);
                    const auto pt = admissible_parametrize(dim, th, trial % 2 == 0 ? 1 : -1);
                    if (std::abs(distance_to_barycenter(pt.x) - g.sphere_radius) > 1e-10) return false;
                    if (!is_admissible_image(dim, pt.x, 1e-10)) return false;
                    const RVector f = quadric_values(pt.x);
                    double full = 0.0;
                    for (int j = 0; j < d; ++j) full += f(std::min(j, d - j));
                    if (std::abs(full - 1.0) > 1e-12) return false;
                }
                return true;
            });
            guarded(tag + "real Fourier matrix orthogonal", [&] {
                const RMatrix p = real_fourier_matrix(dim) / std::sqrt(2.0 * d);
                return (p * p.transpose() - RMatrix::Identity(d, d)).norm() < 1e-10;
            });
        }

        if (d == 2) guarded(tag + "exact fiducial", [] { return exact_fiducial_d2().residual < 1e-12; });
        if (d == 3) guarded(tag + "exact family", [] { return exact_fiducial_d3(0.2).residual < 1e-12; });
        if (d == 4) guarded(tag + "exact fiducial", [] { return exact_fiducial_d4().residual < 1e-12; });

        if (d >= 4) {
            guarded(tag + "dimension tower keeps D", [&] { return dimension_tower_check(d); });
            guarded(tag + "order of u_D mod dbar is 3 iota r", [&] {
                return norm_one_unit_and_r(field_data(d)).order_matches;
            });
            guarded(tag + "prime splitting agrees with minimal polynomial", [&] {
                const FieldData fd = field_data(d);
                for (const auto& [p, k] : factorize(dim.dbar())) {
                    if (prime_splitting(fd, p) != splitting_by_minimal_polynomial(fd, p)) return false;
                }
                return true;
            });
            if (dim.dbar() <= kExhaustiveDbarLimit) {
                guarded(tag + "orbit count equals ideal divisor count", [&] {
                    const auto rep = orbit_divisor_correspondence(d);
                    return rep.match && (!rep.algebraic || rep.algebraic->match);
                });
            }
        }
    }
    return result;
}

}  // namespace siclab
