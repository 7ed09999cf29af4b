#pragma once

// Explicit truncation bounds for the density series. Every bound assumes a
// term bound |g(n) c(n) / [F_{n,n}:ℚ]| ≤ M / (φ(n) n^r), with M supplied by
// the caller.

#include <map>
#include <vector>

#include "pindex/arith.hpp"

namespace pindex {

/// Σ_{n>z} 1/(φ(n) n^r) ≤ √2 (r − 1/2)^{-1} z^{-(r−1/2)}, from φ(n) ≥ √(n/2).
double phi_power_tail(u32 r, double z);

/// Σ_{n>N} 1/(φ(n^k) n^{kr}) ≤ √2 (α − 1/2)^{-1} N^{-(α−1/2)}, α = k(r+1) − 1.
double kfree_tail(u32 k, u32 r, double n);

/// Σ_{n | Q^∞, n > T} 1/n ≤ T^{-1/2} ∏_{ℓ|Q} (1 − ℓ^{-1/2})^{-1}.
double smooth_tail(const std::vector<u64>& primes, double t);

/// Which valuations may carry g(n) ≠ 0, prime by prime.
struct SupportModel {
    /// Primes with their own list (0 included when allowed).
    std::map<u64, std::vector<u32>> special;
    /// Positive valuations allowed at every other prime (0 is always allowed there).
    std::vector<u32> generic;
};

/// Rankin bound Σ_{n>N, n in support} 1/(φ(n) n^r) ≤ N^{-σ} ∏_ℓ P_ℓ(σ),
/// minimized over a grid of σ. Returns +∞ when no σ > 0 makes the product converge.
double rankin_tail(const SupportModel& model, u32 r, double n, double* sigma_used = nullptr);

/// Smallest N (up to the grid) with multiplier · rankin_tail(N) ≤ target; +∞ if none.
double rankin_cutoff(const SupportModel& model, u32 r, double multiplier, double target);

/// Σ_{n > p} n^{-s} ≤ p^{1−s}/(s − 1) for s > 1; +∞ otherwise.
double prime_power_tail(double s, double p);

}  // namespace pindex
