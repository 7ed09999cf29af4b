#pragma once

// Direct computation of ind_p(G) over the primes p ≤ x, with set and
// Frobenius filters, valuation histograms and comparison with a density.

#include <map>
#include <optional>
#include <string>

#include "pindex/density.hpp"
#include "pindex/index_sets.hpp"
#include "pindex/kummer.hpp"

namespace pindex {

/// ind_p(G) = (p − 1)/ord, where ord is the order of the subgroup generated by
/// G mod p. (ℤ/pℤ)^× is cyclic, so that order is the lcm of the generator
/// orders. nullopt when p divides a numerator or denominator of a generator.
std::optional<u64> index_of(const RationalGroup& g, u64 p);

struct EmpiricalCount {
    u64 x = 0;
    u64 total = 0;     // primes considered
    u64 matched = 0;   // ind ∈ H and p mod f ∈ C
    u64 excluded = 0;  // p divides a generator or the conductor
    u64 frob_total = 0;  // considered primes with p mod f ∈ C
    u64 hist_prime = 0;  // ℓ of the histogram, 0 when absent
    std::map<u32, u64> histogram;
    std::string subject;

    void merge(const EmpiricalCount& other);
    double ratio() const noexcept;
    double std_error() const noexcept;

    friend bool operator==(const EmpiricalCount&, const EmpiricalCount&) = default;
};

/// Counts primes p ≤ x with ind_p(G) ∈ H and p mod f ∈ C. With hist_prime = ℓ
/// also tallies v_ℓ(ind_p(G)) over all considered primes.
EmpiricalCount count_index_in_set(const RationalGroup& g, const IndexSetSpec& spec, u64 x,
                                  const FrobeniusCondition& frob = {}, u64 hist_prime = 0);
/// Same, scanning only [lo, hi]; merging adjacent ranges gives the full count.
EmpiricalCount count_index_in_range(const RationalGroup& g, const IndexSetSpec& spec, u64 lo, u64 hi,
                                    const FrobeniusCondition& frob = {}, u64 hist_prime = 0);
EmpiricalCount count_divisible(const RationalGroup& g, u64 n, u64 x, const FrobeniusCondition& frob = {});
EmpiricalCount valuation_histogram(const RationalGroup& g, u64 ell, u64 x);

/// Logarithmic integral li(x) = Ei(log x).
double li(double x);

struct CompareReport {
    double empirical = 0;      // matched/total, or matched/frob_total with a Frobenius filter
    double theoretical = 0;    // density, rescaled by φ(f)/#C with a Frobenius filter
    double theory_error = 0;
    u64 sample = 0;
    double sigma = 0;          // sqrt(d(1−d)/sample)
    double band = 0;           // 3σ + theory_error
    double deviation = 0;      // empirical − theoretical
    double z = 0;              // deviation / σ
    double li_x = 0;
    double li_expected = 0;    // density · li(x)
    double li_deviation = 0;   // (matched − li_expected)/li_expected
    bool pass = false;
};

CompareReport compare(const EmpiricalCount& empirical, const DensityResult& theoretical,
                      const FrobeniusCondition& frob = {});

/// Stable description of a (group, set, Frobenius) triple used to match runs.
std::string subject_key(const RationalGroup& g, const IndexSetSpec& spec, const FrobeniusCondition& frob);

}  // namespace pindex
