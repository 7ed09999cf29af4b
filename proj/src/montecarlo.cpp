#include <cmath>
#include <mutex>
#include <string>

#include <json.hpp>

#include "pindex/error.hpp"
#include "pindex/kummer.hpp"

namespace pindex {

const char* to_string(Validation v) noexcept {
    switch (v) {
        case Validation::Confirmed: return "confirmed";
        case Validation::Mismatch: return "mismatch";
        case Validation::Inconclusive: return "inconclusive";
        case Validation::Skipped: return "skipped";
    }
    return "?";
}

namespace {

constexpr u64 kMinSamples = 200;

std::vector<u64> divisors_of_power(u64 n, u32 r) {
    Factorization f = factorize(n);
    std::vector<PrimePower> pp;
    for (const auto& x : f) pp.push_back({x.prime, x.exponent * r});
    return divisors(Factorization(std::move(pp)));
}

}  // namespace

MonteCarloResult degree_montecarlo(const RationalGroup& g, u64 n, u64 prime_budget, u64 m) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "n must be positive");
    if (m == 0) m = n;
    if (m % n != 0) fail(ErrorKind::InvalidArgument, "degree_montecarlo requires n | m");
    const u32 r = g.rank();
    u64 nr = 1;
    for (u32 i = 0; i < r; ++i) nr = checked_mul(nr, n);

    MonteCarloResult res;
    const auto primes = sieve_primes(std::max<u64>(prime_budget, 2));
    for (u64 p : primes) {
        if (p % m != 1 % m || g.is_bad_prime(p)) continue;
        ++res.samples;
        const u64 ex = (p - 1) / n;
        bool split = true;
        for (std::size_t i = 0; i < r && split; ++i) split = powmod(g.residue(i, p), ex, p) == 1;
        if (split) ++res.split;
    }
    if (res.samples < kMinSamples)
        fail(ErrorKind::Statistical, "only " + std::to_string(res.samples) + " primes p ≡ 1 mod " + std::to_string(m) +
                                         " below " + std::to_string(prime_budget) +
                                         "; raise the prime budget (need at least " + std::to_string(kMinSamples) + ")");
    res.fraction = static_cast<double>(res.split) / static_cast<double>(res.samples);

    // Candidate split fractions are 1/k for k | n^r; accept the unique k within 3σ.
    std::vector<u64> within;
    u64 nearest = 1;
    double best = INFINITY;
    for (u64 k : divisors_of_power(n, r)) {
        const double p = 1.0 / static_cast<double>(k);
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(res.samples));
        const double dev = std::fabs(res.fraction - p);
        const double z = sigma > 0 ? dev / sigma : (dev == 0 ? 0 : INFINITY);
        if (z <= 3) within.push_back(k);
        if (z < best) best = z, nearest = k;
    }
    if (within.size() > 1) {
        std::string list;
        for (u64 k : within) list += (list.empty() ? "" : ", ") + std::to_string(k);
        fail(ErrorKind::Ambiguous, "split fraction " + std::to_string(res.fraction) + " is within 3 sigma of 1/k for k in {" +
                                       list + "}; raise the prime budget");
    }
    if (within.empty())
        fail(ErrorKind::Statistical, "split fraction " + std::to_string(res.fraction) +
                                         " is not within 3 sigma of any 1/k with k | n^r (nearest k = " +
                                         std::to_string(nearest) + ")");
    res.index = within.front();
    res.entanglement = nr / res.index;
    res.degree = static_cast<unsigned long>(euler_phi(m));
    res.degree *= static_cast<unsigned long>(res.index);
    return res;
}

mpz_class DegreeCache::degree(const RationalGroup& g, u64 m, u64 n) {
    Key key{g.key(), {m, n}};
    {
        std::shared_lock lock(mu_);
        auto it = degrees_.find(key);
        if (it != degrees_.end()) return it->second;
    }
    mpz_class d = kummer_degree(g, m, n);
    std::unique_lock lock(mu_);
    degrees_.emplace(key, d);
    return d;
}

Validation DegreeCache::validate(const RationalGroup& g, u64 m, u64 n) {
    Key key{g.key(), {m, n}};
    {
        std::shared_lock lock(mu_);
        auto it = checks_.find(key);
        if (it != checks_.end()) return it->second;
    }
    // Feasibility: enough primes ≡ 1 mod m and a modest candidate set.
    Validation v;
    const double expected = static_cast<double>(budget_) / std::log(static_cast<double>(budget_)) /
                            static_cast<double>(euler_phi(m));
    const double nr = std::pow(static_cast<double>(n), g.rank());
    if (expected < 4.0 * kMinSamples || nr > 1e6) {
        v = Validation::Skipped;
    } else {
        try {
            MonteCarloResult mc = degree_montecarlo(g, n, budget_, m);
            v = mc.degree == degree(g, m, n) ? Validation::Confirmed : Validation::Mismatch;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Ambiguous && e.kind() != ErrorKind::Statistical) throw;
            v = Validation::Inconclusive;
        }
    }
    std::unique_lock lock(mu_);
    checks_.emplace(key, v);
    return v;
}

std::string DegreeCache::to_json() const {
    std::shared_lock lock(mu_);
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [key, d] : degrees_)
        j[key.first][std::to_string(key.second.first) + "," + std::to_string(key.second.second)] = d.get_str();
    return j.dump(2);
}

void DegreeCache::load_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parse, std::string("degree cache: ") + e.what());
    }
    std::unique_lock lock(mu_);
    for (auto& [group, entries] : j.items())
        for (auto& [mn, deg] : entries.items()) {
            auto comma = mn.find(',');
            if (comma == std::string::npos || !deg.is_string()) fail(ErrorKind::Parse, "degree cache: bad entry " + mn);
            u64 m = std::stoull(mn.substr(0, comma)), n = std::stoull(mn.substr(comma + 1));
            degrees_[{group, {m, n}}] = mpz_class(deg.get<std::string>());
        }
}

}  // namespace pindex
