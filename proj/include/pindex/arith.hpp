#pragma once

// Integer primitives shared by the rest of the library: sieving,
// factorization, the classical multiplicative functions and multiplicative
// orders modulo primes. Everything here works on 64-bit values; arithmetic
// that could leave that range goes through the checked helpers.

#include <cstdint>
#include <span>
#include <vector>

namespace pindex {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

struct PrimePower {
    u64 prime;
    u32 exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization sorted by prime. The empty factorization is 1.
class Factorization {
public:
    Factorization() = default;
    explicit Factorization(std::vector<PrimePower> factors);

    const std::vector<PrimePower>& factors() const noexcept { return factors_; }
    auto begin() const noexcept { return factors_.begin(); }
    auto end() const noexcept { return factors_.end(); }
    std::size_t size() const noexcept { return factors_.size(); }
    bool empty() const noexcept { return factors_.empty(); }

    /// Exponent of `p` (0 when p does not divide the number).
    u32 exponent_of(u64 p) const noexcept;
    /// Reconstructs the number; throws on 64-bit overflow.
    u64 value() const;

    /// Product of two factorizations (exponents add).
    Factorization times(const Factorization& other) const;

    friend bool operator==(const Factorization&, const Factorization&) = default;

private:
    std::vector<PrimePower> factors_;
};

// --- checked 64-bit arithmetic ---------------------------------------------

u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);
u64 checked_pow(u64 base, u32 exp);
/// Stores a*b in `out` and returns true when it does not exceed `limit`.
bool mul_le(u64 a, u64 b, u64 limit, u64& out) noexcept;

u64 gcd(u64 a, u64 b) noexcept;
u64 lcm(u64 a, u64 b);

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}
u64 powmod(u64 base, u64 exp, u64 m) noexcept;
/// Inverse of a modulo m; requires gcd(a, m) = 1.
u64 invmod(u64 a, u64 m);
/// a reduced into [0, m).
u64 reduce_mod(i64 a, u64 m) noexcept;

/// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n) noexcept;

u32 valuation(u64 n, u64 p) noexcept;

// --- sieving ------------------------------------------------------------------

/// Largest x accepted by sieve_primes; the list of primes alone must fit in
/// the configured memory budget.
struct SieveLimits {
    u64 max_x = 4'000'000'000ULL;
    u64 memory_budget_bytes = 1ULL << 30;
};

SieveLimits& sieve_limits() noexcept;

/// All primes in [2, x] in ascending order (segmented, odd-only).
std::vector<u64> sieve_primes(u64 x);

/// Primes in [lo, hi] (inclusive). Used by the segmented scanners.
std::vector<u64> sieve_primes_range(u64 lo, u64 hi, std::span<const u64> base_primes);

// --- factorization and multiplicative functions --------------------------------

Factorization factorize(u64 n);

int moebius(u64 n);
int moebius(const Factorization& f) noexcept;
u64 euler_phi(u64 n);
u64 euler_phi(const Factorization& f);
u64 radical(u64 n);
u64 radical(const Factorization& f);
u32 omega(u64 n);

/// Distinct prime divisors of n, ascending.
std::vector<u64> prime_divisors(u64 n);

/// All divisors of the factored number, ascending.
std::vector<u64> divisors(const Factorization& f);

/// Least t >= 1 with a^t = 1 (mod p). Throws ErrorKind::Domain when p | a.
u64 multiplicative_order(i64 a, u64 p);

/// Same, for a residue already in [1, p) and the distinct primes of p - 1.
u64 multiplicative_order_residue(u64 a, u64 p, std::span<const u64> primes_of_p_minus_1) noexcept;

/// Jacobi symbol (a / n) for odd positive n.
int jacobi(i64 a, u64 n) noexcept;

}  // namespace pindex
