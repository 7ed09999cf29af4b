#pragma once

// Random inputs for property tests. Fixed seeds keep failures reproducible.

#include <random>
#include <vector>

#include "pindex/index_sets.hpp"

namespace gen {

using pindex::Interval;
using pindex::IndexSetSpec;
using pindex::ValuationSet;
using pindex::u32;
using pindex::u64;
using pindex::kInfinity;

class Rng {
public:
    explicit Rng(u64 seed) : eng_(seed) {}
    u64 uniform(u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(eng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng_); }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[uniform(0, v.size() - 1)]; }

private:
    std::mt19937_64 eng_;
};

/// A nonempty valuation set of small intervals, optionally forced to contain 0.
inline ValuationSet vset(Rng& rng, bool with_zero) {
    std::vector<Interval> ivs;
    u32 at = with_zero ? 0 : static_cast<u32>(rng.uniform(0, 2));
    const u64 pieces = rng.uniform(1, 3);
    for (u64 i = 0; i < pieces; ++i) {
        const u32 len = static_cast<u32>(rng.uniform(0, 2));
        if (i + 1 == pieces && rng.coin(0.4)) {
            ivs.push_back({at, kInfinity});
            break;
        }
        ivs.push_back({at, at + len});
        at += len + 2 + static_cast<u32>(rng.uniform(0, 2));
    }
    return ValuationSet::from_intervals(ivs);
}

/// Q0 boxes, a default containing 0 and up to two exceptions.
inline IndexSetSpec spec(Rng& rng) {
    static const std::vector<u64> q0s = {1, 1, 2, 3, 6, 5, 10};
    static const std::vector<u64> extra = {7, 11, 13};
    const u64 q0 = rng.pick(q0s);
    std::vector<pindex::Box> boxes;
    if (q0 > 1) {
        const u64 nb = rng.uniform(1, 2);
        for (u64 b = 0; b < nb; ++b) {
            pindex::Box box;
            for (u64 p : {2, 3, 5})
                if (q0 % p == 0) box[p] = vset(rng, rng.coin(0.7));
            boxes.push_back(box);
        }
    }
    ValuationSet dflt = rng.coin(0.3) ? ValuationSet::all() : vset(rng, true);
    std::map<u64, ValuationSet> ex;
    for (u64 p : extra)
        if (rng.coin(0.3)) ex[p] = vset(rng, rng.coin(0.8));
    return IndexSetSpec::make(q0, boxes, dflt, ex);
}

}  // namespace gen
