#include <algorithm>
#include <sstream>

#include "pindex/error.hpp"
#include "pindex/index_sets.hpp"

namespace pindex {

ValuationSet ValuationSet::from_intervals(std::vector<Interval> intervals) {
    for (const auto& iv : intervals)
        if (iv.lo > iv.hi)
            fail(ErrorKind::Validation, "interval [" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) +
                                            "] has lo > hi");
    std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    ValuationSet out;
    for (const auto& iv : intervals) {
        if (!out.intervals_.empty()) {
            Interval& last = out.intervals_.back();
            if (last.hi == kInfinity) break;
            if (iv.lo <= last.hi + 1) {
                last.hi = std::max(last.hi, iv.hi);
                continue;
            }
        }
        out.intervals_.push_back(iv);
    }
    return out;
}

bool ValuationSet::contains(u32 v) const noexcept {
    for (const auto& iv : intervals_) {
        if (v < iv.lo) return false;
        if (v <= iv.hi) return true;
    }
    return false;
}

bool ValuationSet::is_all() const noexcept {
    return intervals_.size() == 1 && intervals_[0].lo == 0 && intervals_[0].hi == kInfinity;
}

int ValuationSet::g(u32 m) const noexcept {
    if (m == 0) return contains(0) ? 1 : 0;
    return (contains(m) ? 1 : 0) - (contains(m - 1) ? 1 : 0);
}

std::vector<u32> ValuationSet::breakpoints() const {
    std::vector<u32> out;
    for (const auto& iv : intervals_) {
        if (iv.lo >= 1) out.push_back(iv.lo);
        if (iv.hi != kInfinity) out.push_back(iv.hi + 1);
    }
    return out;
}

u32 ValuationSet::bounded_count() const noexcept {
    u32 n = 0;
    for (const auto& iv : intervals_)
        if (iv.bounded()) ++n;
    return n;
}

u32 ValuationSet::b1() const noexcept { return intervals_.empty() ? 0 : intervals_.front().hi; }

bool ValuationSet::has_unbounded_tail() const noexcept {
    return !intervals_.empty() && intervals_.back().hi == kInfinity;
}

u32 ValuationSet::min_missing() const noexcept {
    if (intervals_.empty() || intervals_[0].lo > 0) return 0;
    return intervals_[0].hi == kInfinity ? kInfinity : intervals_[0].hi + 1;
}

u32 ValuationSet::max_breakpoint() const noexcept {
    auto b = breakpoints();
    return b.empty() ? 0 : b.back();
}

ValuationSet ValuationSet::complement() const {
    std::vector<Interval> out;
    u32 next = 0;
    for (const auto& iv : intervals_) {
        if (iv.lo > next) out.push_back({next, iv.lo - 1});
        if (iv.hi == kInfinity) return from_intervals(std::move(out));
        next = iv.hi + 1;
    }
    out.push_back({next, kInfinity});
    return from_intervals(std::move(out));
}

bool ValuationSet::subset_of(const ValuationSet& other) const {
    for (const auto& iv : intervals_) {
        bool covered = false;
        for (const auto& ov : other.intervals_)
            if (ov.lo <= iv.lo && iv.hi <= ov.hi) covered = true;
        if (!covered) return false;
    }
    return true;
}

std::string ValuationSet::to_string() const {
    if (intervals_.empty()) return "{}";
    std::ostringstream os;
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
        if (i) os << " u ";
        const auto& iv = intervals_[i];
        if (iv.hi == kInfinity)
            os << "[" << iv.lo << ",inf)";
        else if (iv.lo == iv.hi)
            os << "{" << iv.lo << "}";
        else
            os << "[" << iv.lo << "," << iv.hi << "]";
    }
    return os.str();
}

}  // namespace pindex
