#include "pindex/prime_scan.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "pindex/error.hpp"

namespace pindex {

namespace {

std::shared_ptr<const std::vector<u64>> make_base(u64 hi) {
    u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi)));
    while (root * root > hi) --root;
    while ((root + 1) * (root + 1) <= hi) ++root;
    auto base = std::make_shared<std::vector<u64>>();
    if (root >= 2) {
        std::vector<unsigned char> is(root + 1, 1);
        is[0] = is[1] = 0;
        for (u64 i = 2; i * i <= root; ++i)
            if (is[i])
                for (u64 j = i * i; j <= root; j += i) is[j] = 0;
        for (u64 i = 2; i <= root; ++i)
            if (is[i]) base->push_back(i);
    }
    return base;
}

}  // namespace

PrimeScanner::PrimeScanner(u64 lo, u64 hi, bool with_factors)
    : PrimeScanner(lo, hi, with_factors, make_base(hi)) {}

PrimeScanner::PrimeScanner(u64 lo, u64 hi, bool with_factors, std::shared_ptr<const std::vector<u64>> base)
    : next_lo_(std::max<u64>(lo, 2)), hi_(hi), with_factors_(with_factors), base_(std::move(base)) {
    if (hi_ > sieve_limits().max_x)
        fail(ErrorKind::Resource,
             "scan bound " + std::to_string(hi_) + " exceeds max_x = " + std::to_string(sieve_limits().max_x));
}

bool PrimeScanner::next(PrimeSegment& seg) {
    if (next_lo_ > hi_) return false;
    const u64 a = next_lo_;
    const u64 b = std::min(hi_, a + kScanSegment - 1);
    next_lo_ = b + 1;
    if (b == UINT64_MAX) next_lo_ = b;

    seg.lo = a;
    seg.hi = b;
    seg.primes = sieve_primes_range(a, b, *base_);
    seg.factors.clear();
    seg.factor_count.clear();
    if (!with_factors_) return true;

    const std::size_t np = seg.primes.size();
    seg.factors.assign(np * PrimeSegment::kMaxFactors, 0);
    seg.factor_count.assign(np, 0);
    std::vector<u64> rem(np);
    slot_.assign(b - a + 1, -1);
    for (std::size_t i = 0; i < np; ++i) {
        rem[i] = seg.primes[i] - 1;
        slot_[seg.primes[i] - a] = static_cast<int>(i);
    }
    auto record = [&](std::size_t i, u64 q) {
        seg.factors[i * PrimeSegment::kMaxFactors + seg.factor_count[i]++] = q;
        do rem[i] /= q;
        while (rem[i] % q == 0);
    };
    for (u64 q : *base_) {
        if (q * q > b) break;
        // p ≡ 1 (mod q), p in [a, b].
        u64 start = a + (q + 1 - a % q) % q;
        if (q == 2) {
            for (std::size_t i = 0; i < np; ++i)
                if (seg.primes[i] > 2) record(i, 2);
            continue;
        }
        if (start % 2 == 0) start += q;
        for (u64 n = start; n <= b; n += 2 * q) {
            int s = slot_[n - a];
            if (s >= 0 && rem[s] % q == 0) record(static_cast<std::size_t>(s), q);
        }
    }
    for (std::size_t i = 0; i < np; ++i)
        if (rem[i] > 1) {
            seg.factors[i * PrimeSegment::kMaxFactors + seg.factor_count[i]++] = rem[i];
            rem[i] = 1;
        }
    return true;
}

unsigned thread_count() {
    if (const char* env = std::getenv("PINDEX_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

u64 prime_pi(u64 x) {
    if (x < 2) return 0;
    struct Count {
        u64 n = 0;
        void merge(const Count& o) { n += o.n; }
    };
    return scan_reduce(2, x, false, Count{}, [](Count& c, const PrimeSegment& s) { c.n += s.primes.size(); }).n;
}

}  // namespace pindex
