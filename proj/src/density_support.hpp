#pragma once

// Enumeration of the n with g_H(n) ≠ 0, split into the part at the special
// primes (Q0 and exceptions) and the part at the remaining primes.

#include <vector>

#include "pindex/error.hpp"
#include "pindex/index_sets.hpp"
#include "pindex/tails.hpp"

namespace pindex::detail {

struct SupportTerm {
    u64 n;
    u64 phi;
    int g;
};

struct Step {
    u32 v;
    int g;
};

/// All m supported on the special primes with g(m) ≠ 0 and m ≤ limit.
std::vector<SupportTerm> special_terms(const IndexSetSpec& spec, u64 limit);

/// Positive valuations with g_V(v) ≠ 0 for the default set.
std::vector<Step> generic_steps(const ValuationSet& v);

/// Support model of the whole set (or only the generic part).
SupportModel support_model(const IndexSetSpec& spec, bool generic_only = false);

inline constexpr u64 kUnbounded = ~0ULL;

/// Calls emit(n, φ(n), g) for every n ≤ limit built from `primes` (each used
/// with a valuation from `steps`), including n = 1. With limit = kUnbounded
/// the walk must be exhaustive, so exceeding 64 bits is an error.
template <class F>
u64 generic_walk(const std::vector<u64>& primes, const std::vector<Step>& steps, u64 limit, F&& emit) {
    u64 count = 0;
    auto rec = [&](auto&& self, std::size_t start, u64 cur, u64 phi, int g) -> void {
        emit(cur, phi, g);
        ++count;
        for (std::size_t i = start; i < primes.size(); ++i) {
            const u64 ell = primes[i];
            u64 pw = 1;
            u32 e = 0;
            bool any = false, stop = false;
            for (const Step& s : steps) {
                for (; e < s.v && !stop; ++e) stop = !mul_le(pw, ell, limit, pw);
                u64 next;
                if (stop || !mul_le(cur, pw, limit, next)) {
                    if (limit == kUnbounded) fail(ErrorKind::Overflow, "support element exceeds 64 bits");
                    break;
                }
                any = true;
                self(self, i + 1, next, phi * (pw / ell) * (ell - 1), g * s.g);
            }
            if (!any) break;
        }
    };
    rec(rec, 0, 1, 1, 1);
    return count;
}

}  // namespace pindex::detail
