#include "siclab/galois.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/pending/disjoint_sets.hpp>

namespace siclab {

namespace {

std::int64_t md(std::int64_t a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t crt(std::int64_t a, std::int64_t m, std::int64_t b, std::int64_t n) {
    for (std::int64_t x = md(a, m); x < m * n; x += m) {
        if (x % n == md(b, n)) return x;
    }
    throw std::invalid_argument("moduli are not coprime");
}

Mat2Residue crt(const Mat2Residue& g, const Mat2Residue& h) {
    Mat2Residue out;
    out.n = g.n * h.n;
    for (int i = 0; i < 4; ++i) out.m[i] = crt(g.m[i], g.n, h.m[i], h.n);
    return out;
}

Mat2Residue reduce(const Mat2Residue& g, std::int64_t n) {
    return Mat2Residue::from(g.m[0], g.m[1], g.m[2], g.m[3], n);
}

int valuation(std::int64_t x, std::int64_t p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

std::int64_t dbar_of(int d) { return d % 2 == 0 ? 2 * static_cast<std::int64_t>(d) : d; }

}  // namespace

Mat2Residue Mat2Residue::identity(std::int64_t n) { return scalar(1, n); }

Mat2Residue Mat2Residue::scalar(std::int64_t a, std::int64_t n) { return from(a, 0, 0, a, n); }

Mat2Residue Mat2Residue::from(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
                              std::int64_t n) {
    if (n < 1) throw std::invalid_argument("modulus must be positive");
    return {{md(a, n), md(b, n), md(c, n), md(d, n)}, n};
}

std::int64_t Mat2Residue::det() const { return md(m[0] * m[3] - m[1] * m[2], n); }

std::int64_t Mat2Residue::trace() const { return md(m[0] + m[3], n); }

bool Mat2Residue::invertible() const { return std::gcd(det(), n) == 1; }

Mat2Residue Mat2Residue::operator*(const Mat2Residue& o) const {
    if (n != o.n) throw std::invalid_argument("matrices with different moduli");
    return from(m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3], n);
}

Mat2Residue Mat2Residue::operator+(const Mat2Residue& o) const {
    if (n != o.n) throw std::invalid_argument("matrices with different moduli");
    return from(m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3], n);
}

Mat2Residue Mat2Residue::scaled(std::int64_t k) const {
    return from(k * m[0], k * m[1], k * m[2], k * m[3], n);
}

Mat2Residue Mat2Residue::pow(std::int64_t e) const {
    Mat2Residue r = identity(n);
    for (std::int64_t i = 0; i < e; ++i) r = r * *this;
    return r;
}

std::int64_t Mat2Residue::order() const {
    const Mat2Residue id = identity(n);
    Mat2Residue cur = *this;
    const std::int64_t bound = n * n * n * n;
    for (std::int64_t k = 1; k <= bound; ++k) {
        if (cur == id) return k;
        cur = cur * *this;
    }
    return 0;
}

std::pair<std::int64_t, std::int64_t> Mat2Residue::apply(std::int64_t p1, std::int64_t p2) const {
    return {md(m[0] * p1 + m[1] * p2, n), md(m[2] * p1 + m[3] * p2, n)};
}

DisplacementIndex Mat2Residue::apply(const Dimension& dim, const DisplacementIndex& p) const {
    const auto [a, b] = apply(p.p1(), p.p2());
    return {dim, a, b};
}

std::string to_string(const Mat2Residue& g) {
    return "[[" + std::to_string(g.m[0]) + "," + std::to_string(g.m[1]) + "],[" +
           std::to_string(g.m[2]) + "," + std::to_string(g.m[3]) + "]] mod " + std::to_string(g.n);
}

ZaunerMatrices zauner_matrix(const Dimension& dim) {
    const std::int64_t n = dim.dbar();
    const std::int64_t d = dim.d();
    return {Mat2Residue::from(0, -1, 1, -1, n), Mat2Residue::from(0, d - 1, d + 1, d - 1, n)};
}

SymmetryGroup overlap_symmetry_group(const OverlapTable& table, double tol) {
    const Dimension& dim = table.dim();
    const int n = dim.dbar();
    if (n > kExhaustiveDbarLimit) {
        throw std::length_error("exhaustive GL2 scan limited to dbar <= " +
                                std::to_string(kExhaustiveDbarLimit));
    }
    SymmetryGroup group;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                for (int e = 0; e < n; ++e) {
                    const Mat2Residue g = Mat2Residue::from(a, b, c, e, n);
                    if (!g.invertible()) continue;
                    bool ok = true;
                    for (int p1 = 0; p1 < n && ok; ++p1) {
                        for (int p2 = 0; p2 < n && ok; ++p2) {
                            const auto [q1, q2] = g.apply(p1, p2);
                            ok = std::abs(table.at(q1, q2) - table.at(p1, p2)) <= tol;
                        }
                    }
                    if (ok) group.elements.push_back(g);
                }
            }
        }
    }
    std::sort(group.elements.begin(), group.elements.end());
    group.closed = true;
    for (const auto& g : group.elements) {
        for (const auto& h : group.elements) {
            if (!std::binary_search(group.elements.begin(), group.elements.end(), g * h)) {
                group.closed = false;
                return group;
            }
        }
    }
    return group;
}

std::vector<Mat2Residue> unit_group_of_algebra(const Mat2Residue& g) {
    const std::int64_t n = g.n;
    std::vector<Mat2Residue> out;
    const Mat2Residue id = Mat2Residue::identity(n);
    std::set<Mat2Residue> seen;
    for (std::int64_t a = 0; a < n; ++a) {
        for (std::int64_t b = 0; b < n; ++b) {
            const Mat2Residue x = id.scaled(a) + g.scaled(b);
            if (x.invertible() && seen.insert(x).second) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Mat2Residue> build_M(const Mat2Residue& f) {
    const std::int64_t minus_one = md(-1, f.n);
    if (f.pow(3) != Mat2Residue::identity(f.n) || f.trace() != minus_one) {
        throw std::invalid_argument("F must satisfy F^3 = I and tr F = -1: " + to_string(f));
    }
    return unit_group_of_algebra(f);
}

std::string to_string(FiducialType t) {
    switch (t) {
        case FiducialType::Z: return "z";
        case FiducialType::A4: return "a4";
        case FiducialType::A6: return "a6";
        case FiducialType::A8: return "a8";
    }
    return "?";
}

FiducialType classify_type(int d) {
    const FieldData fd = field_data(d);
    if (d % 3 == 0 && fd.D % 3 == 1) return FiducialType::A4;
    if (d % 3 == 0 && fd.D % 3 == 2) return FiducialType::A8;
    if (d % 27 == 3) return FiducialType::A6;
    return FiducialType::Z;
}

bool j_isomorphism_criteria(int d) {
    const FieldData fd = field_data(d);
    return d % 3 != 0 || (fd.D % 3 == 0 && d % 27 != 3);
}

OrbitReport m_orbits(int n, const std::vector<Mat2Residue>& group, bool zauner_split) {
    const std::size_t size = static_cast<std::size_t>(n) * n;
    boost::disjoint_sets_with_storage<> ds(size);
    for (const auto& g : group) {
        if (g.n != n) throw std::invalid_argument("group element modulus does not match");
        for (int p1 = 0; p1 < n; ++p1) {
            for (int p2 = 0; p2 < n; ++p2) {
                const auto [q1, q2] = g.apply(p1, p2);
                ds.union_set(static_cast<std::size_t>(p1) * n + p2,
                             static_cast<std::size_t>(q1) * n + q2);
            }
        }
    }

    // Eigenvalues of F_z (roots of x^2 + x + 1) mod each split prime power.
    struct SplitData {
        std::int64_t p;
        int r;
        std::int64_t pr;
        std::int64_t l1;
        std::int64_t l2;
    };
    std::vector<SplitData> split;
    if (zauner_split) {
        for (const auto& [p, r] : factorize(n)) {
            if (p % 3 != 1) continue;
            std::int64_t pr = 1;
            for (int i = 0; i < r; ++i) pr *= p;
            std::vector<std::int64_t> roots;
            for (std::int64_t x = 0; x < pr; ++x) {
                if ((x * x + x + 1) % pr == 0) roots.push_back(x);
            }
            if (roots.size() != 2) throw std::logic_error("expected two eigenvalues of F_z");
            split.push_back({p, r, pr, roots[0], roots[1]});
        }
    }

    std::map<std::size_t, Orbit> by_root;
    for (int p1 = 0; p1 < n; ++p1) {
        for (int p2 = 0; p2 < n; ++p2) {
            const std::size_t idx = static_cast<std::size_t>(p1) * n + p2;
            auto [it, inserted] = by_root.try_emplace(ds.find_set(idx));
            Orbit& orb = it->second;
            if (inserted) {
                orb.rep = {p1, p2};
                orb.size = 0;
                orb.gcd_level = std::gcd(std::gcd(p1, p2), n);
                for (const auto& s : split) {
                    // (F_z - l_j) v lies in the l_i eigenline.
                    const std::int64_t a = p1 % s.pr;
                    const std::int64_t b = p2 % s.pr;
                    auto comp = [&](std::int64_t l) {
                        const std::int64_t x = md(-l * a - b, s.pr);
                        const std::int64_t y = md(a - b - l * b, s.pr);
                        return std::min(valuation(x, s.p, s.r), valuation(y, s.p, s.r));
                    };
                    orb.split_labels.push_back({s.p, comp(s.l2), comp(s.l1)});
                }
            }
            ++orb.size;
        }
    }

    OrbitReport report;
    report.dbar = n;
    report.group_order = static_cast<std::int64_t>(group.size());
    for (auto& [root, orb] : by_root) report.orbits.push_back(std::move(orb));
    std::sort(report.orbits.begin(), report.orbits.end(),
              [](const Orbit& x, const Orbit& y) { return x.rep < y.rep; });
    return report;
}

Mat2Residue type_a_witness(const Dimension& dim) {
    const std::int64_t n = dim.dbar();
    if (n % 3 != 0 || (n / 3) % 3 == 0) {
        throw std::invalid_argument("type-a witness requires 3 || dbar");
    }
    const std::int64_t rest = n / 3;
    if (rest == 1) return Mat2Residue::identity(3);
    return crt(Mat2Residue::identity(3), Mat2Residue::from(0, -1, 1, -1, rest));
}

CorrespondenceReport orbit_divisor_correspondence(int d) {
    const Dimension dim(d);
    if (dim.dbar() > kExhaustiveDbarLimit) {
        throw std::length_error("orbit enumeration limited to dbar <= " +
                                std::to_string(kExhaustiveDbarLimit));
    }
    const FieldData fd = field_data(d);
    CorrespondenceReport rep;
    rep.d = d;
    rep.dbar = dim.dbar();
    rep.type = classify_type(d);
    rep.j_criteria = j_isomorphism_criteria(d);
    rep.treat3_as_ramified = !rep.j_criteria;
    const Mat2Residue f_z = zauner_matrix(dim).f_z;
    rep.f = rep.type == FiducialType::Z ? f_z : type_a_witness(dim);

    rep.orbits = m_orbits(dim.dbar(), build_M(f_z), true);
    rep.orbit_count = static_cast<std::int64_t>(rep.orbits.orbits.size());
    rep.divisor_count = ideal_divisors(fd, rep.treat3_as_ramified).count;
    rep.match = rep.orbit_count == rep.divisor_count;

    if (rep.type != FiducialType::Z) {
        // (O_K/3)^x realized as units of Z_3[G], G the companion matrix of omega.
        const Mat2Residue g = Mat2Residue::from(0, -fd.omega_norm(), 1, fd.omega_trace(), 3);
        const auto m3 = unit_group_of_algebra(g);
        const std::int64_t rest = dim.dbar() / 3;
        std::vector<Mat2Residue> group;
        if (rest == 1) {
            group = m3;
        } else {
            const auto m_rest = build_M(reduce(f_z, rest));
            for (const auto& a : m3)
                for (const auto& b : m_rest) group.push_back(crt(a, b));
        }
        const OrbitReport alg = m_orbits(dim.dbar(), group);
        ModelCounts mc;
        mc.orbit_count = static_cast<std::int64_t>(alg.orbits.size());
        mc.divisor_count = ideal_divisors(fd, false).count;
        mc.group_order = alg.group_order;
        mc.match = mc.orbit_count == mc.divisor_count;
        rep.algebraic = mc;
    }
    return rep;
}

bool one_orbit_predicate(int d) {
    if (d < 4) throw std::invalid_argument("one_orbit_predicate requires d >= 4");
    return d % 2 == 1 && is_prime(d) && d % 3 == 2;
}

std::vector<std::int64_t> projective_orbit_sizes(std::int64_t p, const Mat2Residue& f) {
    const Mat2Residue fp = reduce(f, p);
    const auto group = build_M(fp);
    const auto lines = cyclic_subgroup_generators(static_cast<int>(p));
    auto canon = [&](std::int64_t a, std::int64_t b) {
        std::pair<std::int64_t, std::int64_t> best{p, p};
        for (std::int64_t u = 1; u < p; ++u) best = std::min(best, {u * a % p, u * b % p});
        return best;
    };
    std::map<std::pair<std::int64_t, std::int64_t>, bool> visited;
    for (const auto& [a, b] : lines) visited[{a, b}] = false;
    std::vector<std::int64_t> sizes;
    for (const auto& [a, b] : lines) {
        if (visited[{a, b}]) continue;
        std::set<std::pair<std::int64_t, std::int64_t>> orbit;
        for (const auto& g : group) {
            const auto [x, y] = g.apply(a, b);
            orbit.insert(canon(x, y));
        }
        for (const auto& l : orbit) visited[l] = true;
        sizes.push_back(static_cast<std::int64_t>(orbit.size()));
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return sizes;
}

std::int64_t sign_unit_subgroup_order(const FieldData& fd, const QuadInt& u, std::int64_t n) {
    const QuadIntResidue x = reduce(u, n);
    const std::int64_t k = residue_order(fd, x);
    const QuadIntResidue minus_one{md(-1, n), 0, n};
    QuadIntResidue cur{n == 1 ? 0 : 1, 0, n};
    for (std::int64_t i = 0; i < k; ++i) {
        if (cur == minus_one) return k;
        cur = mul(fd, cur, x);
    }
    return 2 * k;
}

RayClassOrders ray_class_group_orders(int d) {
    const FieldData fd = field_data(d);
    const std::int64_t dbar = dbar_of(d);
    const QuadInt uf = fundamental_unit(fd);
    RayClassOrders out;
    for (std::int64_t n = 2; n <= dbar; ++n) {
        if (dbar % n != 0) continue;
        LevelOrders lv;
        lv.n = n;
        lv.order_OK_units = unit_group_order(fd, n);
        lv.order_uf_subgroup = sign_unit_subgroup_order(fd, uf, n);
        lv.quotient_order = lv.order_OK_units / lv.order_uf_subgroup;
        out.per_divisor.push_back(lv);
    }
    const LevelOrders& top = out.per_divisor.back();
    out.order_OK_units = top.order_OK_units;
    out.order_uf_subgroup = top.order_uf_subgroup;
    out.quotient_order = top.quotient_order;
    return out;
}

}  // namespace siclab
