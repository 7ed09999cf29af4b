#pragma once

// Segmented scan over the primes of a range, optionally delivering the
// distinct prime factors of p - 1 with each prime. The factors are produced
// by sieving the shifted values p - 1 with the base primes, so the cost per
// prime is amortized O(log log p) instead of a trial division.

#include <algorithm>
#include <memory>
#include <span>
#include <thread>
#include <vector>

#include "pindex/arith.hpp"

namespace pindex {

inline constexpr u64 kScanSegment = 1ULL << 22;

struct PrimeSegment {
    u64 lo = 0;
    u64 hi = 0;
    std::vector<u64> primes;
    // Distinct primes of p - 1 for primes[i] live in
    // factors[i * kMaxFactors, i * kMaxFactors + factor_count[i]).
    static constexpr std::size_t kMaxFactors = 15;
    std::vector<u64> factors;
    std::vector<unsigned char> factor_count;

    std::span<const u64> factors_of_p_minus_1(std::size_t i) const noexcept {
        return {factors.data() + i * kMaxFactors, factor_count[i]};
    }
};

class PrimeScanner {
public:
    /// Scans primes in [lo, hi]. The base primes are shared between copies.
    PrimeScanner(u64 lo, u64 hi, bool with_factors);
    PrimeScanner(u64 lo, u64 hi, bool with_factors, std::shared_ptr<const std::vector<u64>> base);

    /// Fills the next segment; returns false when the range is exhausted.
    bool next(PrimeSegment& seg);

    std::shared_ptr<const std::vector<u64>> base() const { return base_; }

private:
    u64 next_lo_;
    u64 hi_;
    bool with_factors_;
    std::shared_ptr<const std::vector<u64>> base_;
    std::vector<int> slot_;
};

/// Worker count taken from PINDEX_THREADS, else hardware concurrency.
unsigned thread_count();

/// Counts primes in [2, x] without materializing them.
u64 prime_pi(u64 x);

/// Runs `per_segment(state, segment)` over all segments of [lo, hi] and merges
/// the per-worker states in worker order. State must provide merge(const State&).
/// Segments are dealt round-robin, so merge must be commutative for the result
/// to be independent of the worker count.
template <class State, class F>
State scan_reduce(u64 lo, u64 hi, bool with_factors, const State& init, F per_segment) {
    const unsigned workers = std::max(1u, thread_count());
    auto base = PrimeScanner(lo, hi, false).base();
    const u64 nseg = hi < lo ? 0 : (hi - lo) / kScanSegment + 1;
    std::vector<State> states(workers, init);
    auto work = [&](unsigned w) {
        PrimeSegment seg;
        for (u64 s = w; s < nseg; s += workers) {
            u64 a = lo + s * kScanSegment;
            u64 b = std::min(hi, a + kScanSegment - 1);
            PrimeScanner sc(a, b, with_factors, base);
            while (sc.next(seg)) per_segment(states[w], seg);
        }
    };
    if (workers == 1 || nseg < 2) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    State out = states[0];
    for (unsigned w = 1; w < workers; ++w) out.merge(states[w]);
    return out;
}

}  // namespace pindex
