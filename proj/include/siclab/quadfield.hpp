#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace siclab {

using BigInt = boost::multiprecision::cpp_int;

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Largest square-free divisor s of n with n / s a perfect square (n > 0).
std::int64_t squarefree_part(std::int64_t n);

bool is_prime(std::int64_t n);

/// omega = sqrt(D) when D != 1 mod 4, omega = (1 + sqrt(D)) / 2 when D = 1 mod 4.
enum class OmegaKind { SqrtD, Half };

std::string to_string(OmegaKind kind);

struct FieldData {
    int d = 0;
    std::int64_t D = 0;
    OmegaKind kind = OmegaKind::SqrtD;

    /// omega + omega' and omega * omega'.
    std::int64_t omega_trace() const { return kind == OmegaKind::Half ? 1 : 0; }
    std::int64_t omega_norm() const { return kind == OmegaKind::Half ? (1 - D) / 4 : -D; }
};

/// D = square-free part of (d-3)(d+1). Rejects d <= 3.
FieldData field_data(int d);

/// Field data for an arbitrary square-free D > 1 (d left as 0).
FieldData field_for_discriminant_root(std::int64_t D);

/// a + b omega with exact integers.
struct QuadInt {
    BigInt a;
    BigInt b;
    friend bool operator==(const QuadInt&, const QuadInt&) = default;
};

QuadInt mul(const FieldData& fd, const QuadInt& x, const QuadInt& y);
QuadInt pow(const FieldData& fd, const QuadInt& x, std::int64_t e);
BigInt norm(const FieldData& fd, const QuadInt& x);
BigInt trace(const FieldData& fd, const QuadInt& x);

/// (T, U) with x = (T + U sqrt(D)) / 2.
std::pair<BigInt, BigInt> half_integer_form(const FieldData& fd, const QuadInt& x);

/// Real value under the embedding with sqrt(D) > 0.
double to_double(const FieldData& fd, const QuadInt& x);

/// Fundamental unit u_f > 1, from the continued fraction of omega: the first
/// convergent p/q with |N(p - q omega)| = 1 gives u_f = p - q omega'.
QuadInt fundamental_unit(const FieldData& fd);

struct NormOneUnit {
    QuadInt u_f;
    QuadInt u_D;                   // u_f if N(u_f) = 1, else u_f^2
    std::optional<int> r;          // least r with T(u_D^r) = d - 1
    std::int64_t order_mod_dbar;   // multiplicative order of u_D mod dbar
    int iota;                      // dbar / d
    bool order_matches;            // order_mod_dbar == 3 iota r
};

NormOneUnit norm_one_unit_and_r(const FieldData& fd);

enum class Splitting { Split, Inert, Ramified };

std::string to_string(Splitting s);

/// Splitting of a prime p dividing dbar, by the mod-3 rule. Rejects p not dividing dbar.
Splitting prime_splitting(const FieldData& fd, std::int64_t p);

/// Splitting from the number of roots of the minimal polynomial of omega mod p.
Splitting splitting_by_minimal_polynomial(const FieldData& fd, std::int64_t p);

struct PrimeComponent {
    std::int64_t p;
    Splitting type;
    int bound;  // p^bound || dbar
    int e1;     // exponent (first prime above p)
    int e2;     // second prime above p; split only
};

using IdealDivisor = std::vector<PrimeComponent>;

struct DivisorReport {
    std::vector<IdealDivisor> divisors;
    std::int64_t count = 0;
};

/// Ideal divisors of (dbar): split p^r gives (r+1)^2, inert r+1, ramified 2r+1.
DivisorReport ideal_divisors(const FieldData& fd, bool treat3_as_ramified);

/// Cyclic factors of (O_K/(p^k))^x from the closed forms for split, inert, ramified 3 and inert 2,
/// trivial factors dropped. Rejects (p=2, k=1), p=2 not inert, ramified p other
/// than 3, p=3 ramified with D != 0 mod 3, and D = 3 mod 9 with k >= 2.
std::vector<std::int64_t> unit_group_structure(const FieldData& fd, std::int64_t p, int k);

/// Invariant factors n_1 | n_2 | ... of a product of cyclic groups.
std::vector<std::int64_t> canonical_invariant_factors(const std::vector<std::int64_t>& cyclic);

/// |(O_K/(n))^x| from the splitting of each prime power of n.
std::int64_t unit_group_order(const FieldData& fd, std::int64_t n);

/// a + b omega mod n.
struct QuadIntResidue {
    std::int64_t a;
    std::int64_t b;
    std::int64_t n;
    friend bool operator==(const QuadIntResidue&, const QuadIntResidue&) = default;
};

QuadIntResidue reduce(const QuadInt& x, std::int64_t n);
QuadIntResidue mul(const FieldData& fd, const QuadIntResidue& x, const QuadIntResidue& y);
std::int64_t norm_mod(const FieldData& fd, const QuadIntResidue& x);
bool is_unit(const FieldData& fd, const QuadIntResidue& x);

/// Multiplicative order of x in (O_K/(n))^x. Rejects non-units.
std::int64_t residue_order(const FieldData& fd, const QuadIntResidue& x);

/// D(d) == D(d(d-2)).
bool dimension_tower_check(int d);

/// D mod 9 != 3. Rejects d not divisible by 9.
bool nine_d_constraint_check(int d);

}  // namespace siclab
