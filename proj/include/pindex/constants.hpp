#pragma once

// Local densities E_{v,r}(ℓ), local factors A_{V,r}(ℓ) and the global
// constant A_{H,r} = ∏_ℓ A_{V_ℓ,r}(ℓ) with a certified bracket.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "pindex/index_sets.hpp"
#include "pindex/interval.hpp"

namespace pindex {

/// Density of primes with v_ℓ(ind) = v for a generic rank-r group.
mpq_class local_density(u32 v, u32 r, u64 ell);

/// Σ_{v∈V} E_{v,r}(ℓ), unbounded intervals summed in closed form.
mpq_class local_factor(const ValuationSet& v, u32 r, u64 ell);

/// The projection v_ℓ(H): the union of the box sets for ℓ | Q0, else V_ℓ.
ValuationSet local_vset(const IndexSetSpec& spec, u64 ell);

enum class TailMode {
    // Factors for ℓ > L are compared with (1 − ℓ^{-s})(1 − ℓ^{-s-1}), whose
    // infinite product is known through ζ(s)ζ(s+1).
    Sharpened,
    // Only 1 − 2ℓ^{-s} ≤ factor ≤ 1 is used.
    Plain,
};

const char* to_string(TailMode mode) noexcept;

struct ConstantOptions {
    bool allow_uncertified = false;
    u64 min_cutoff = 1000;
    u64 max_cutoff = 1ULL << 26;
    TailMode tail = TailMode::Sharpened;
};

struct ConstantResult {
    BoundedValue value;
    RealInterval interval;
    u64 cutoff = 0;  // 0 when the product is finite and exact
    TailMode tail = TailMode::Sharpened;
    bool certified = true;  // false when the set's density is not covered unconditionally
    std::string note;
    /// A_{V_ℓ,r}(ℓ) for the primes with an explicit local rule.
    std::vector<std::pair<u64, mpq_class>> special_factors;
};

/// A_{H,r} with the cutoff doubled from options.min_cutoff until the bracket
/// half-width is at most target_error.
ConstantResult global_constant(const IndexSetSpec& spec, u32 r, double target_error,
                               const ConstantOptions& options = {});

/// A_{H,r} truncated at a fixed prime cutoff L (with the tail bracket).
ConstantResult global_constant_at(const IndexSetSpec& spec, u32 r, u64 cutoff, const ConstantOptions& options = {});

/// ∏_{ℓ ∤ b} A_{V_ℓ,r}(ℓ), for the Euler-product density route.
ConstantResult global_constant_away_from(const IndexSetSpec& spec, u32 r, u64 b, double target_error,
                                         const ConstantOptions& options = {});

}  // namespace pindex
