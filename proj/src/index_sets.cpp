#include <algorithm>
#include <string>

#include "pindex/error.hpp"
#include "pindex/index_sets.hpp"

namespace pindex {

IndexSetSpec IndexSetSpec::make(u64 q0, std::vector<Box> boxes, ValuationSet default_vset,
                                std::map<u64, ValuationSet> exceptions) {
    if (q0 == 0) fail(ErrorKind::Validation, "Q0 must be a positive integer");
    IndexSetSpec s;
    s.q0_primes_ = prime_divisors(q0);
    s.q0_ = 1;
    for (u64 p : s.q0_primes_) s.q0_ *= p;

    if (s.q0_ > 1 && boxes.empty()) fail(ErrorKind::Validation, "Q0 > 1 requires at least one box");
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        const Box& b = boxes[i];
        if (b.size() != s.q0_primes_.size())
            fail(ErrorKind::Validation, "box " + std::to_string(i) + " must list exactly the primes of Q0");
        for (u64 p : s.q0_primes_) {
            auto it = b.find(p);
            if (it == b.end())
                fail(ErrorKind::Validation, "box " + std::to_string(i) + " is missing prime " + std::to_string(p));
            if (it->second.empty())
                fail(ErrorKind::Validation,
                     "box " + std::to_string(i) + " has an empty valuation set at " + std::to_string(p));
        }
    }
    if (s.q0_ == 1) boxes.assign(1, Box{});
    s.boxes_ = std::move(boxes);

    if (!default_vset.contains(0))
        fail(ErrorKind::Validation,
             "default valuation set must contain 0 (primes with 0 excluded must be listed individually)");
    s.default_ = std::move(default_vset);

    for (auto& [ell, v] : exceptions) {
        if (!is_prime(ell)) fail(ErrorKind::Validation, "exception key " + std::to_string(ell) + " is not prime");
        if (s.q0_ % ell == 0)
            fail(ErrorKind::Validation,
                 "exception prime " + std::to_string(ell) + " divides Q0 = " + std::to_string(s.q0_));
        if (v.empty()) fail(ErrorKind::Validation, "exception at " + std::to_string(ell) + " is empty");
    }
    // Exceptions equal to the default carry no information.
    for (auto it = exceptions.begin(); it != exceptions.end();) {
        if (it->second == s.default_)
            it = exceptions.erase(it);
        else
            ++it;
    }
    s.exceptions_ = std::move(exceptions);
    return s;
}

const ValuationSet& IndexSetSpec::vset_for(u64 ell) const {
    auto it = exceptions_.find(ell);
    return it == exceptions_.end() ? default_ : it->second;
}

bool IndexSetSpec::box_contains(const std::vector<u32>& vals) const {
    for (const Box& b : boxes_) {
        bool in = true;
        for (std::size_t i = 0; i < q0_primes_.size() && in; ++i) in = b.at(q0_primes_[i]).contains(vals[i]);
        if (in) return true;
    }
    return false;
}

int IndexSetSpec::g_box(const std::vector<u32>& vals) const {
    // Σ_{d | a} μ(a/d) χ(d): only squarefree a/d contribute, i.e. subtract 0/1
    // from each positive coordinate.
    std::vector<std::size_t> pos;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i] > 0) pos.push_back(i);
    int total = 0;
    std::vector<u32> w(vals);
    const u64 subsets = 1ULL << pos.size();
    for (u64 mask = 0; mask < subsets; ++mask) {
        int sign = 1;
        for (std::size_t j = 0; j < pos.size(); ++j) {
            if (mask >> j & 1) {
                w[pos[j]] = vals[pos[j]] - 1;
                sign = -sign;
            } else {
                w[pos[j]] = vals[pos[j]];
            }
        }
        if (box_contains(w)) total += sign;
    }
    return total;
}

bool IndexSetSpec::contains(const Factorization& f) const {
    std::vector<u32> vals(q0_primes_.size(), 0);
    for (const auto& pp : f) {
        auto it = std::lower_bound(q0_primes_.begin(), q0_primes_.end(), pp.prime);
        if (it != q0_primes_.end() && *it == pp.prime)
            vals[it - q0_primes_.begin()] = pp.exponent;
        else if (!vset_for(pp.prime).contains(pp.exponent))
            return false;
    }
    if (!box_contains(vals)) return false;
    for (const auto& [ell, v] : exceptions_)
        if (!v.contains(0) && f.exponent_of(ell) == 0) return false;
    return true;
}

bool IndexSetSpec::contains(u64 n) const {
    if (n == 0) fail(ErrorKind::InvalidArgument, "contains requires n >= 1");
    return contains(factorize(n));
}

int IndexSetSpec::g(const Factorization& f) const {
    std::vector<u32> vals(q0_primes_.size(), 0);
    int prod = 1;
    for (const auto& pp : f) {
        auto it = std::lower_bound(q0_primes_.begin(), q0_primes_.end(), pp.prime);
        if (it != q0_primes_.end() && *it == pp.prime) {
            vals[it - q0_primes_.begin()] = pp.exponent;
        } else {
            prod *= vset_for(pp.prime).g(pp.exponent);
            if (prod == 0) return 0;
        }
    }
    for (const auto& [ell, v] : exceptions_)
        if (f.exponent_of(ell) == 0 && !v.contains(0)) return 0;
    return prod * g_box(vals);
}

int IndexSetSpec::g(u64 n) const {
    if (n == 0) fail(ErrorKind::InvalidArgument, "g requires n >= 1");
    return g(factorize(n));
}

int IndexSetSpec::g_bruteforce(u64 n) const {
    if (n == 0) fail(ErrorKind::InvalidArgument, "g requires n >= 1");
    int total = 0;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        total += moebius(n / d) * chi(d);
        if (d * d != n) total += moebius(d) * chi(n / d);
    }
    return total;
}

std::vector<u64> IndexSetSpec::special_primes() const {
    std::vector<u64> out = q0_primes_;
    for (const auto& [ell, v] : exceptions_) out.push_back(ell);
    std::sort(out.begin(), out.end());
    return out;
}

namespace sets {

IndexSetSpec everything() { return IndexSetSpec::make(1, {}, ValuationSet::all(), {}); }

IndexSetSpec kfree(u32 k) {
    if (k < 2) fail(ErrorKind::Validation, "k must be ≥ 2");
    return IndexSetSpec::make(1, {}, ValuationSet::range(0, k - 1), {});
}

IndexSetSpec klfree(const std::map<u64, u32>& kmap, u32 default_k) {
    if (default_k < 2) fail(ErrorKind::Validation, "k must be ≥ 2");
    std::map<u64, ValuationSet> ex;
    for (const auto& [ell, k] : kmap) {
        if (k < 2) fail(ErrorKind::Validation, "k must be ≥ 2 (prime " + std::to_string(ell) + ")");
        ex[ell] = ValuationSet::range(0, k - 1);
    }
    return IndexSetSpec::make(1, {}, ValuationSet::range(0, default_k - 1), std::move(ex));
}

IndexSetSpec multiples_of(u64 n) {
    if (n == 0) fail(ErrorKind::Validation, "n must be positive");
    Box b;
    for (const auto& pp : factorize(n)) b[pp.prime] = ValuationSet::at_least(pp.exponent);
    return IndexSetSpec::make(radical(n), {b}, ValuationSet::all(), {});
}

IndexSetSpec coprime_to(u64 m) {
    if (m == 0) fail(ErrorKind::Validation, "m must be positive");
    Box b;
    for (u64 p : prime_divisors(m)) b[p] = ValuationSet::single(0);
    return IndexSetSpec::make(radical(m), {b}, ValuationSet::all(), {});
}

IndexSetSpec gcd_equals(u64 m, u64 t) {
    if (m == 0 || t == 0) fail(ErrorKind::Validation, "m and t must be positive");
    Box b;
    u64 rest = t;
    for (u64 p : prime_divisors(m)) {
        u32 v = valuation(t, p);
        for (u32 i = 0; i < v; ++i) rest /= p;
        b[p] = ValuationSet::single(v);
    }
    if (rest != 1)
        fail(ErrorKind::Validation, "t = " + std::to_string(t) + " must divide a power of m = " + std::to_string(m));
    return IndexSetSpec::make(radical(m), {b}, ValuationSet::all(), {});
}

IndexSetSpec single_prime(u64 ell, ValuationSet v) {
    if (!is_prime(ell)) fail(ErrorKind::Validation, std::to_string(ell) + " is not prime");
    if (v.empty()) fail(ErrorKind::Validation, "valuation set must be nonempty");
    return IndexSetSpec::make(ell, {Box{{ell, std::move(v)}}}, ValuationSet::all(), {});
}

IndexSetSpec custom(u64 q0, std::vector<Box> boxes, ValuationSet default_vset,
                    std::map<u64, ValuationSet> exceptions) {
    return IndexSetSpec::make(q0, std::move(boxes), std::move(default_vset), std::move(exceptions));
}

}  // namespace sets

IndexSetSpec truncate_to_level(const IndexSetSpec& spec, u64 q) {
    const auto qp = prime_divisors(q);
    auto in_q = [&](u64 p) { return std::binary_search(qp.begin(), qp.end(), p); };
    // Project the boxes onto the primes of gcd(Q0, Q).
    std::vector<Box> boxes;
    u64 q0 = 1;
    for (u64 p : spec.q0_primes())
        if (in_q(p)) q0 *= p;
    for (const Box& b : spec.boxes()) {
        Box proj;
        for (const auto& [p, v] : b)
            if (in_q(p)) proj[p] = v;
        if (std::find(boxes.begin(), boxes.end(), proj) == boxes.end()) boxes.push_back(proj);
    }
    std::map<u64, ValuationSet> ex;
    for (u64 p : qp)
        if (spec.q0() % p != 0) ex[p] = spec.vset_for(p);
    return IndexSetSpec::make(q0, std::move(boxes), ValuationSet::all(), std::move(ex));
}

}  // namespace pindex
