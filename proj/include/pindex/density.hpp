#pragma once

// Densities of {p : ind_p(G) ∈ H, p mod f ∈ C} by the available formulas:
// truncated Möbius series, finite sums over Q-smooth indices, the almost-cut
// double sum, the Euler-product factorization and the limit over levels.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pindex/constants.hpp"
#include "pindex/index_sets.hpp"
#include "pindex/interval.hpp"
#include "pindex/kummer.hpp"

namespace pindex {

enum class Method { Auto, Series, KFree, FiniteQ, AlmostCut, Product, SinglePrime, Limit };

const char* to_string(Method m) noexcept;
/// Parses "auto", "series", "kfree", "finiteQ", "almostcut", "product", "single_prime", "limit".
Method parse_method(const std::string& name);

struct ValidationTally {
    u64 confirmed = 0;
    u64 mismatch = 0;
    u64 inconclusive = 0;
    u64 skipped = 0;

    void add(Validation v);
};

struct DensityResult {
    BoundedValue value;
    ConvergenceClass cls;
    Method method = Method::Series;
    /// Truncation parameters by name (e.g. "N", "terms", "L").
    std::map<std::string, double> cutoffs;
    bool certified = true;
    ValidationTally validation;
    std::optional<BoundedValue> d_factor;  // Product route: value = D · A
    std::optional<BoundedValue> a_factor;
    std::vector<std::string> notes;
    RealInterval interval;
    std::string subject;  // set by density(); see subject_key
};

struct DensityOptions {
    bool allow_uncertified = false;
    /// Confirm the non-generic degrees with the Monte-Carlo oracle.
    bool validate_degrees = true;
    u64 oracle_budget = 1'000'000;
    /// Largest truncation point for series routes.
    double max_cutoff = 1e13;
    ConstantOptions constant;
};

/// Evaluates terms c(n)/[F_{n,n}:ℚ] with degrees memoized by the part of n
/// supported on the entanglement primes.
class DensityContext {
public:
    DensityContext(RationalGroup group, FrobeniusCondition frob, DensityOptions options = {});

    const RationalGroup& group() const noexcept { return group_; }
    const FrobeniusCondition& frob() const noexcept { return frob_; }
    const DensityOptions& options() const noexcept { return options_; }
    DegreeCache& cache() noexcept { return cache_; }

    /// lcm of the group's entanglement bound and the conductor's primes.
    u64 bad_modulus() const noexcept { return bad_; }
    /// c(n)/[F_{n,n}:ℚ] for n = a·b with a | bad^∞ and gcd(b, bad) = 1.
    mpq_class term(u64 n);
    mpq_class term(u64 n, u64 phi_n);
    /// Same, through kummer_degree directly without the split.
    mpq_class term_direct(u64 n);
    /// Upper bound M with |term(n)| ≤ M/(φ(n) n^r) for every n.
    double term_multiplier() const noexcept { return multiplier_; }

    const ValidationTally& tally() const noexcept { return tally_; }

private:
    mpq_class bad_part_term(u64 a);

    RationalGroup group_;
    FrobeniusCondition frob_;
    DensityOptions options_;
    DegreeCache cache_;
    u64 bad_ = 1;
    double multiplier_ = 1;
    std::map<u64, mpq_class> memo_;
    ValidationTally tally_;
};

DensityResult density_series(const IndexSetSpec& spec, DensityContext& ctx, double eps);
/// k-free (kmap empty) or k(ℓ)-free: Σ_{n squarefree} μ(n) c(f_n)/[F_{f_n,f_n}:ℚ].
DensityResult density_kfree(u32 k, DensityContext& ctx, double eps);
DensityResult density_klfree(const std::map<u64, u32>& kmap, u32 default_k, DensityContext& ctx, double eps);
DensityResult density_finite_q(const IndexSetSpec& spec, DensityContext& ctx);
DensityResult density_single_prime(u64 ell, const ValuationSet& v, DensityContext& ctx);
DensityResult density_almostcut(const IndexSetSpec& spec, DensityContext& ctx, double eps);
DensityResult density_product(const IndexSetSpec& spec, DensityContext& ctx, double eps);
std::vector<DensityResult> density_limit_sequence(const IndexSetSpec& spec, DensityContext& ctx,
                                                  const std::vector<u64>& ladder);
/// Upper bound for |dens(H_Q) − dens(H)| from the primes not dividing Q.
double omitted_prime_tail(const IndexSetSpec& spec, DensityContext& ctx, u64 q);

/// Dispatches on the method (Auto picks from the set's class).
DensityResult density(const IndexSetSpec& spec, DensityContext& ctx, double eps, Method method = Method::Auto);

}  // namespace pindex
