#include "siclab/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace siclab {

namespace {

std::int64_t mod_n(std::int64_t a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t n) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % n);
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t isqrt(std::int64_t n) {
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s;
}

std::int64_t dbar_of(int d) { return d % 2 == 0 ? 2 * static_cast<std::int64_t>(d) : d; }

}  // namespace

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("factorize requires n >= 1");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int k = 0;
        while (n % p == 0) {
            n /= p;
            ++k;
        }
        out.emplace_back(p, k);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::int64_t squarefree_part(std::int64_t n) {
    std::int64_t s = 1;
    for (const auto& [p, k] : factorize(n)) {
        if (k % 2 == 1) s *= p;
    }
    return s;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) return false;
    }
    return true;
}

std::string to_string(OmegaKind kind) {
    return kind == OmegaKind::Half ? "half" : "sqrtD";
}

std::string to_string(Splitting s) {
    switch (s) {
        case Splitting::Split: return "split";
        case Splitting::Inert: return "inert";
        case Splitting::Ramified: return "ramified";
    }
    return "?";
}

FieldData field_for_discriminant_root(std::int64_t D) {
    if (D < 2 || squarefree_part(D) != D) {
        throw std::invalid_argument("D must be a square-free integer > 1");
    }
    return {0, D, D % 4 == 1 ? OmegaKind::Half : OmegaKind::SqrtD};
}

FieldData field_data(int d) {
    if (d <= 3) throw std::invalid_argument("field data requires d >= 4");
    const std::int64_t v = static_cast<std::int64_t>(d - 3) * (d + 1);
    FieldData fd = field_for_discriminant_root(squarefree_part(v));
    fd.d = d;
    return fd;
}

QuadInt mul(const FieldData& fd, const QuadInt& x, const QuadInt& y) {
    // omega^2 = tr omega - nrm
    const BigInt be = x.b * y.b;
    return {x.a * y.a - be * fd.omega_norm(), x.a * y.b + x.b * y.a + be * fd.omega_trace()};
}

QuadInt pow(const FieldData& fd, const QuadInt& x, std::int64_t e) {
    if (e < 0) throw std::invalid_argument("negative exponent");
    QuadInt result{1, 0};
    QuadInt base = x;
    while (e > 0) {
        if (e & 1) result = mul(fd, result, base);
        base = mul(fd, base, base);
        e >>= 1;
    }
    return result;
}

BigInt norm(const FieldData& fd, const QuadInt& x) {
    return x.a * x.a + x.a * x.b * fd.omega_trace() + x.b * x.b * fd.omega_norm();
}

BigInt trace(const FieldData& fd, const QuadInt& x) {
    return 2 * x.a + x.b * fd.omega_trace();
}

std::pair<BigInt, BigInt> half_integer_form(const FieldData& fd, const QuadInt& x) {
    if (fd.kind == OmegaKind::Half) return {2 * x.a + x.b, x.b};
    return {2 * x.a, 2 * x.b};
}

double to_double(const FieldData& fd, const QuadInt& x) {
    const double s = std::sqrt(static_cast<double>(fd.D));
    const double w = fd.kind == OmegaKind::Half ? (1.0 + s) / 2.0 : s;
    return x.a.convert_to<double>() + x.b.convert_to<double>() * w;
}

QuadInt fundamental_unit(const FieldData& fd) {
    const std::int64_t D = fd.D;
    const std::int64_t s = isqrt(D);
    // omega = (P + sqrt(D)) / Q
    std::int64_t P = fd.kind == OmegaKind::Half ? 1 : 0;
    std::int64_t Q = fd.kind == OmegaKind::Half ? 2 : 1;
    BigInt p_prev = 1, p_prev2 = 0;
    BigInt q_prev = 0, q_prev2 = 1;
    for (;;) {
        const std::int64_t a = (P + s) / Q;
        const BigInt p = a * p_prev + p_prev2;
        const BigInt q = a * q_prev + q_prev2;
        const BigInt n = p * p - p * q * fd.omega_trace() + q * q * fd.omega_norm();
        if (n == 1 || n == -1) return {p - q * fd.omega_trace(), q};
        p_prev2 = p_prev;
        p_prev = p;
        q_prev2 = q_prev;
        q_prev = q;
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

NormOneUnit norm_one_unit_and_r(const FieldData& fd) {
    if (fd.d < 4) throw std::invalid_argument("norm_one_unit_and_r requires d >= 4");
    NormOneUnit out;
    out.u_f = fundamental_unit(fd);
    out.u_D = norm(fd, out.u_f) == 1 ? out.u_f : mul(fd, out.u_f, out.u_f);
    const std::int64_t dbar = dbar_of(fd.d);
    out.iota = static_cast<int>(dbar / fd.d);
    out.order_mod_dbar = residue_order(fd, reduce(out.u_D, dbar));
    // T(u_D^k) = u_D^k + u_D^{-k} is strictly increasing in k.
    const BigInt target = fd.d - 1;
    const std::int64_t bound = 4 * out.order_mod_dbar;
    QuadInt power{1, 0};
    for (std::int64_t k = 1; k <= bound; ++k) {
        power = mul(fd, power, out.u_D);
        const BigInt t = half_integer_form(fd, power).first;
        if (t == target) {
            out.r = static_cast<int>(k);
            break;
        }
        if (t > target) break;
    }
    out.order_matches = out.r && out.order_mod_dbar == 3LL * out.iota * *out.r;
    return out;
}

Splitting prime_splitting(const FieldData& fd, std::int64_t p) {
    const std::int64_t dbar = dbar_of(fd.d);
    if (!is_prime(p) || dbar % p != 0) {
        throw std::invalid_argument("p = " + std::to_string(p) + " is not a prime dividing dbar = " +
                                    std::to_string(dbar));
    }
    if (p % 3 == 1) return Splitting::Split;
    if (p % 3 == 2) return Splitting::Inert;
    switch (mod_n(fd.D, 3)) {
        case 1: return Splitting::Split;
        case 0: return Splitting::Ramified;
        default: return Splitting::Inert;
    }
}

Splitting splitting_by_minimal_polynomial(const FieldData& fd, std::int64_t p) {
    // x^2 - tr x + nrm
    int roots = 0;
    for (std::int64_t x = 0; x < p; ++x) {
        const std::int64_t v =
            mod_n(mulmod(x, x, p) - mulmod(fd.omega_trace(), x, p) + mod_n(fd.omega_norm(), p), p);
        if (v == 0) ++roots;
    }
    if (roots == 0) return Splitting::Inert;
    if (roots == 1) return Splitting::Ramified;
    return Splitting::Split;
}

DivisorReport ideal_divisors(const FieldData& fd, bool treat3_as_ramified) {
    if (fd.d < 4) throw std::invalid_argument("ideal_divisors requires d >= 4");
    std::vector<std::vector<PrimeComponent>> options;
    for (const auto& [p, r] : factorize(dbar_of(fd.d))) {
        const Splitting type =
            (p == 3 && treat3_as_ramified) ? Splitting::Ramified : prime_splitting(fd, p);
        std::vector<PrimeComponent> opts;
        if (type == Splitting::Split) {
            for (int e1 = 0; e1 <= r; ++e1)
                for (int e2 = 0; e2 <= r; ++e2) opts.push_back({p, type, r, e1, e2});
        } else {
            const int top = type == Splitting::Ramified ? 2 * r : r;
            for (int e = 0; e <= top; ++e) opts.push_back({p, type, r, e, 0});
        }
        options.push_back(std::move(opts));
    }
    DivisorReport report;
    IdealDivisor current;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == options.size()) {
            report.divisors.push_back(current);
            return;
        }
        for (const auto& c : options[i]) {
            current.push_back(c);
            rec(i + 1);
            current.pop_back();
        }
    };
    rec(0);
    report.count = static_cast<std::int64_t>(report.divisors.size());
    return report;
}

std::vector<std::int64_t> unit_group_structure(const FieldData& fd, std::int64_t p, int k) {
    if (!is_prime(p) || k < 1) throw std::invalid_argument("p must be prime and k >= 1");
    const Splitting s = splitting_by_minimal_polynomial(fd, p);
    std::vector<std::int64_t> out;
    const std::int64_t pk1 = ipow(p, k - 1);
    if (p == 2) {
        if (k < 2) throw std::invalid_argument("p = 2 requires k >= 2");
        if (s != Splitting::Inert) throw std::invalid_argument("p = 2 case requires 2 inert");
        out = {6, ipow(2, k - 1), ipow(2, k - 2)};
    } else if (s == Splitting::Split) {
        out = {p - 1, p - 1, pk1, pk1};
    } else if (s == Splitting::Inert) {
        out = {p * p - 1, pk1, pk1};
    } else {
        if (p != 3) throw std::invalid_argument("ramified primes other than 3 have no closed-form structure here");
        if (mod_n(fd.D, 3) != 0) throw std::invalid_argument("3 ramified requires D = 0 mod 3");
        if (k >= 2 && mod_n(fd.D, 9) == 3) {
            throw std::invalid_argument("3 ramified with D = 3 mod 9 has no closed-form structure here");
        }
        out = {6, pk1, pk1};
    }
    out.erase(std::remove(out.begin(), out.end(), 1), out.end());
    return out;
}

std::vector<std::int64_t> canonical_invariant_factors(const std::vector<std::int64_t>& cyclic) {
    std::map<std::int64_t, std::vector<int>> primary;
    for (std::int64_t n : cyclic) {
        if (n < 1) throw std::invalid_argument("cyclic factor orders must be positive");
        if (n == 1) continue;
        for (const auto& [p, e] : factorize(n)) primary[p].push_back(e);
    }
    std::size_t len = 0;
    for (auto& [p, es] : primary) {
        std::sort(es.begin(), es.end(), std::greater<>());
        len = std::max(len, es.size());
    }
    std::vector<std::int64_t> out(len, 1);
    for (const auto& [p, es] : primary) {
        for (std::size_t i = 0; i < es.size(); ++i) out[i] *= ipow(p, es[i]);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::int64_t unit_group_order(const FieldData& fd, std::int64_t n) {
    std::int64_t order = 1;
    for (const auto& [p, k] : factorize(n)) {
        const std::int64_t scale = ipow(p, 2 * (k - 1));
        switch (splitting_by_minimal_polynomial(fd, p)) {
            case Splitting::Split: order *= scale * (p - 1) * (p - 1); break;
            case Splitting::Inert: order *= scale * (p * p - 1); break;
            case Splitting::Ramified: order *= scale * p * (p - 1); break;
        }
    }
    return order;
}

QuadIntResidue reduce(const QuadInt& x, std::int64_t n) {
    const BigInt bn = n;
    BigInt a = x.a % bn;
    BigInt b = x.b % bn;
    if (a < 0) a += bn;
    if (b < 0) b += bn;
    return {a.convert_to<std::int64_t>(), b.convert_to<std::int64_t>(), n};
}

QuadIntResidue mul(const FieldData& fd, const QuadIntResidue& x, const QuadIntResidue& y) {
    if (x.n != y.n) throw std::invalid_argument("residues with different moduli");
    const std::int64_t n = x.n;
    const std::int64_t be = mulmod(x.b, y.b, n);
    const std::int64_t a = mod_n(mulmod(x.a, y.a, n) - mulmod(be, mod_n(fd.omega_norm(), n), n), n);
    const std::int64_t b =
        mod_n(mulmod(x.a, y.b, n) + mulmod(x.b, y.a, n) + mulmod(be, fd.omega_trace(), n), n);
    return {a, b, n};
}

std::int64_t norm_mod(const FieldData& fd, const QuadIntResidue& x) {
    const std::int64_t n = x.n;
    return mod_n(mulmod(x.a, x.a, n) + mulmod(mulmod(x.a, x.b, n), fd.omega_trace(), n) +
                     mulmod(mulmod(x.b, x.b, n), mod_n(fd.omega_norm(), n), n),
                 n);
}

bool is_unit(const FieldData& fd, const QuadIntResidue& x) {
    return std::gcd(norm_mod(fd, x), x.n) == 1;
}

std::int64_t residue_order(const FieldData& fd, const QuadIntResidue& x) {
    if (!is_unit(fd, x)) throw std::invalid_argument("residue is not invertible");
    const QuadIntResidue one{x.n == 1 ? 0 : 1, 0, x.n};
    QuadIntResidue cur = x;
    const std::int64_t bound = x.n * x.n;
    for (std::int64_t k = 1; k <= bound; ++k) {
        if (cur == one) return k;
        cur = mul(fd, cur, x);
    }
    throw std::logic_error("residue order exceeds the group size bound");
}

bool dimension_tower_check(int d) {
    return field_data(d).D == field_data(d * (d - 2)).D;
}

bool nine_d_constraint_check(int d) {
    if (d % 9 != 0) throw std::invalid_argument("nine_d_constraint_check requires 9 | d");
    return field_data(d).D % 9 != 3;
}

}  // namespace siclab
