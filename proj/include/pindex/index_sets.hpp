#pragma once

// Sets of positive integers described by constraints on their valuations.
//
// H = H_{Q0} ∩ ⋂_{ℓ∤Q0} H_ℓ, where H_{Q0} restricts the joint valuation
// vector at the primes of Q0 to a finite union of boxes and H_ℓ restricts
// v_ℓ to a ValuationSet. Primes without an explicit exception use the
// default ValuationSet.

#include <gmpxx.h>

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pindex/arith.hpp"

namespace pindex {

inline constexpr u32 kInfinity = std::numeric_limits<u32>::max();

struct Interval {
    u32 lo;
    u32 hi;  // kInfinity for an unbounded interval

    bool bounded() const noexcept { return hi != kInfinity; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// A subset of ℤ_{≥0} stored as canonical disjoint intervals with strict gaps.
class ValuationSet {
public:
    /// The empty set.
    ValuationSet() = default;
    /// Canonicalizes (sorts, merges overlapping and adjacent intervals).
    static ValuationSet from_intervals(std::vector<Interval> intervals);

    static ValuationSet all() { return from_intervals({{0, kInfinity}}); }
    static ValuationSet single(u32 v) { return from_intervals({{v, v}}); }
    static ValuationSet range(u32 lo, u32 hi) { return from_intervals({{lo, hi}}); }
    static ValuationSet at_least(u32 lo) { return from_intervals({{lo, kInfinity}}); }

    const std::vector<Interval>& intervals() const noexcept { return intervals_; }
    bool contains(u32 v) const noexcept;
    bool empty() const noexcept { return intervals_.empty(); }
    bool is_all() const noexcept;

    /// χ(m) - χ(m-1) for m ≥ 1, and χ(0) for m = 0.
    int g(u32 m) const noexcept;
    /// The m ≥ 1 with g(m) ≠ 0, ascending.
    std::vector<u32> breakpoints() const;
    /// Number of bounded intervals (N_ℓ).
    u32 bounded_count() const noexcept;
    /// Upper end of the first interval; kInfinity when it is unbounded.
    /// Only meaningful when 0 is in the set.
    u32 b1() const noexcept;
    bool has_unbounded_tail() const noexcept;
    /// Smallest integer not in the set; kInfinity when the set is everything.
    u32 min_missing() const noexcept;
    /// Largest finite breakpoint (0 if none).
    u32 max_breakpoint() const noexcept;

    ValuationSet complement() const;
    bool subset_of(const ValuationSet& other) const;

    std::string to_string() const;

    friend bool operator==(const ValuationSet&, const ValuationSet&) = default;

private:
    std::vector<Interval> intervals_;
};

/// One box of H_{Q0}: a ValuationSet for each prime of Q0.
using Box = std::map<u64, ValuationSet>;

class IndexSetSpec {
public:
    /// Validates the invariants. q0 is replaced by its radical. When q0 = 1
    /// the boxes may be empty (H_1 is everything).
    static IndexSetSpec make(u64 q0, std::vector<Box> boxes, ValuationSet default_vset,
                             std::map<u64, ValuationSet> exceptions);

    u64 q0() const noexcept { return q0_; }
    const std::vector<u64>& q0_primes() const noexcept { return q0_primes_; }
    const std::vector<Box>& boxes() const noexcept { return boxes_; }
    const ValuationSet& default_vset() const noexcept { return default_; }
    const std::map<u64, ValuationSet>& exceptions() const noexcept { return exceptions_; }

    /// V_ℓ for a prime ℓ ∤ Q0.
    const ValuationSet& vset_for(u64 ell) const;

    /// χ_{H_{Q0}} on a valuation vector indexed like q0_primes().
    bool box_contains(const std::vector<u32>& vals) const;
    /// g_{H_{Q0}} on a valuation vector (Möbius transform over the box part).
    int g_box(const std::vector<u32>& vals) const;

    bool contains(u64 n) const;
    bool contains(const Factorization& f) const;
    int chi(u64 n) const { return contains(n) ? 1 : 0; }
    int g(u64 n) const;
    int g(const Factorization& f) const;
    /// Direct divisor sum Σ_{d|n} μ(n/d) χ(d).
    int g_bruteforce(u64 n) const;

    /// Primes with an explicit local rule (primes of Q0 and exceptions).
    std::vector<u64> special_primes() const;

    friend bool operator==(const IndexSetSpec&, const IndexSetSpec&) = default;

private:
    u64 q0_ = 1;
    std::vector<u64> q0_primes_;
    std::vector<Box> boxes_;
    ValuationSet default_ = ValuationSet::all();
    std::map<u64, ValuationSet> exceptions_;
};

namespace sets {

IndexSetSpec everything();
IndexSetSpec kfree(u32 k);
/// k(ℓ)-free with k(ℓ) = kmap[ℓ] for listed primes and default_k elsewhere.
IndexSetSpec klfree(const std::map<u64, u32>& kmap, u32 default_k);
IndexSetSpec multiples_of(u64 n);
IndexSetSpec coprime_to(u64 m);
/// S_{m,t} = {n : gcd(n, m^∞) = t}; requires t | m^∞.
IndexSetSpec gcd_equals(u64 m, u64 t);
IndexSetSpec single_prime(u64 ell, ValuationSet v);
IndexSetSpec custom(u64 q0, std::vector<Box> boxes, ValuationSet default_vset,
                    std::map<u64, ValuationSet> exceptions);

}  // namespace sets

// --- classification --------------------------------------------------------

enum class ClassKind { KlFree, VlFin, VlInf, FiniteQ, AlmostCut, Unsupported };

const char* to_string(ClassKind kind) noexcept;

struct ConvergenceClass {
    ClassKind kind = ClassKind::Unsupported;
    u32 k = 0;               // KlFree: min k(ℓ); VlFin: 1 + min b_1
    mpq_class alpha = 0;     // VlFin (or inner VlFin)
    u64 q = 1;               // FiniteQ / AlmostCut level
    std::optional<ClassKind> inner;  // AlmostCut: class of the part coprime to q
    mpq_class kappa = 0;
    std::string reason;      // Unsupported

    bool supported() const noexcept { return kind != ClassKind::Unsupported; }
    std::string kappa_string() const { return kappa.get_str(); }
};

ConvergenceClass classify(const IndexSetSpec& spec);

/// The α used for VlFin when every prime has n bounded intervals:
/// 2^{ω(n)} ≤ 2√n gives (2N)^{ω(n)} ≪ n^{log2(2N)/2}.
mpq_class vlfin_alpha(u32 bounded_count, u32 k);

/// Primes q | Q and the local truncation H_Q used by the limit theorem.
IndexSetSpec truncate_to_level(const IndexSetSpec& spec, u64 q);

}  // namespace pindex
