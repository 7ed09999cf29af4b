#pragma once

// Finitely generated torsion-free subgroups of ℚ^× and the degrees of the
// cyclotomic-Kummer fields ℚ(ζ_m, G^{1/n}).

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "pindex/arith.hpp"

namespace pindex {

class RationalGroup {
public:
    /// Parses "a", "-a", "a/b" and validates independence and torsion-freeness.
    static RationalGroup from_strings(const std::vector<std::string>& generators);
    static RationalGroup from_rationals(std::vector<mpq_class> generators);

    u32 rank() const noexcept { return static_cast<u32>(generators_.size()); }
    const std::vector<mpq_class>& generators() const noexcept { return generators_; }
    std::vector<std::string> generator_strings() const;
    /// Stable textual key, e.g. "2,-3/5".
    std::string key() const;

    /// Primes dividing a numerator or denominator, ascending.
    const std::vector<u64>& support() const noexcept { return support_; }
    /// exponents()[i][j] = v_{support[j]}(generator i).
    const std::vector<std::vector<i64>>& exponents() const noexcept { return exponents_; }
    /// 1 when generator i is negative.
    const std::vector<int>& signs() const noexcept { return signs_; }

    /// Smith normal form data: a basis h_i of G with h_i = ±c_i^{d_i}, the
    /// c_i primitive and independent. basis_exponents()[i] is the exponent vector of h_i.
    const std::vector<u64>& elementary_divisors() const noexcept { return d_; }
    const std::vector<std::vector<i64>>& basis_exponents() const noexcept { return basis_; }
    const std::vector<int>& basis_signs() const noexcept { return basis_signs_; }

    /// True when p divides a numerator or denominator of some generator.
    bool is_bad_prime(u64 p) const noexcept;
    /// Generator i reduced mod p (p must not be bad).
    u64 residue(std::size_t i, u64 p) const noexcept;

    friend bool operator==(const RationalGroup& a, const RationalGroup& b) { return a.key() == b.key(); }

private:
    std::vector<mpq_class> generators_;
    std::vector<u64> num_, den_;  // absolute values
    std::vector<u64> support_;
    std::vector<std::vector<i64>> exponents_;
    std::vector<int> signs_;
    std::vector<u64> d_;
    std::vector<std::vector<i64>> basis_;
    std::vector<int> basis_signs_;
};

/// Frobenius condition for F = ℚ(ζ_f): p mod f must lie in C.
struct FrobeniusCondition {
    u64 conductor = 1;
    std::vector<u64> residues{0};

    static FrobeniusCondition trivial() { return {}; }
    static FrobeniusCondition make(u64 conductor, std::vector<u64> residues);

    bool is_trivial() const noexcept { return conductor == 1; }
    bool admits(u64 p) const noexcept { return std::binary_search(residues.begin(), residues.end(), p % conductor); }

    friend bool operator==(const FrobeniusCondition&, const FrobeniusCondition&) = default;
};

/// [ℚ(ζ_m, G^{1/n}) : ℚ] for n | m, any rank.
mpz_class kummer_degree(const RationalGroup& g, u64 m, u64 n);

/// φ(m) n^r / [ℚ(ζ_m, G^{1/n}) : ℚ].
mpz_class kummer_defect(const RationalGroup& g, u64 m, u64 n);

/// Closed form for ⟨a⟩ written as a = ±a0^h with a0 > 0 not a perfect power.
u64 degree_rank1(const mpq_class& a, u64 m, u64 n);

/// [F_{n,n} : ℚ] with F = ℚ(ζ_f): equals the degree at m = lcm(f, n).
mpz_class frobenius_degree(const FrobeniusCondition& frob, const RationalGroup& g, u64 n);

/// c(n) = #(C ∩ Gal(F / F ∩ K_{n,n})). Rank ≥ 2 with nontrivial F is unsupported.
u64 c_coefficient(const FrobeniusCondition& frob, const RationalGroup& g, u64 n);

/// Outside the primes of B every degree is generic and the fields are
/// independent: B = 2 · (primes with an odd valuation in some generator)
/// · (odd primes dividing an elementary divisor).
u64 entanglement_bound(const RationalGroup& g);

// --- Monte-Carlo degree oracle ---------------------------------------------

struct MonteCarloResult {
    mpz_class degree;
    u64 index = 1;         // n^r / defect, the inverse split fraction
    u64 entanglement = 1;  // φ(m) n^r / degree
    u64 samples = 0;
    u64 split = 0;
    double fraction = 0;
};

/// Recovers [ℚ(ζ_m, G^{1/n}):ℚ] from the proportion of primes p ≡ 1 (mod m),
/// p ≤ prime_budget, at which every generator is an n-th power. m = 0 means m = n.
MonteCarloResult degree_montecarlo(const RationalGroup& g, u64 n, u64 prime_budget, u64 m = 0);

enum class Validation { Confirmed, Mismatch, Inconclusive, Skipped };

const char* to_string(Validation v) noexcept;

/// Exact degrees with Monte-Carlo confirmation, shared across threads.
class DegreeCache {
public:
    explicit DegreeCache(u64 prime_budget = 1'000'000) : budget_(prime_budget) {}

    mpz_class degree(const RationalGroup& g, u64 m, u64 n);
    /// Confirms the exact degree against the oracle when the sample is large
    /// enough; Skipped when it is not.
    Validation validate(const RationalGroup& g, u64 m, u64 n);

    /// Persisted as {"group key": {"m,n": degree}}.
    std::string to_json() const;
    void load_json(const std::string& text);

private:
    using Key = std::pair<std::string, std::pair<u64, u64>>;
    u64 budget_;
    mutable std::shared_mutex mu_;
    std::map<Key, mpz_class> degrees_;
    std::map<Key, Validation> checks_;
};

}  // namespace pindex
