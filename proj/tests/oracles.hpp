#pragma once

// Independent reference implementations used as test oracles. Nothing here
// calls into the library except for data types.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "pindex/index_sets.hpp"

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.push_back({d, e});
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

inline int moebius(u64 n) {
    int m = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

inline u64 phi(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++c;
    return c;
}

inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

/// Plain Eratosthenes.
inline std::vector<bool> sieve(u64 x) {
    std::vector<bool> comp(x + 1, false);
    std::vector<bool> prime(x + 1, false);
    for (u64 i = 2; i <= x; ++i) {
        if (comp[i]) continue;
        prime[i] = true;
        for (u64 j = i * i; j <= x; j += i) comp[j] = true;
    }
    return prime;
}

inline u64 prime_count(u64 x) {
    const auto s = sieve(x);
    u64 c = 0;
    for (bool b : s) c += b;
    return c;
}

/// Residue of a rational num/den mod p (p ∤ num·den).
inline u64 residue(i64 num, i64 den, u64 p) {
    auto red = [p](i64 v) { return static_cast<u64>(((v % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p)); };
    const u64 a = red(num), b = red(den);
    // b^{-1} by Fermat through repeated multiplication.
    u64 inv = 1, base = b, e = p - 2;
    while (e) {
        if (e & 1) inv = static_cast<u64>(static_cast<unsigned __int128>(inv) * base % p);
        base = static_cast<u64>(static_cast<unsigned __int128>(base) * base % p);
        e >>= 1;
    }
    return static_cast<u64>(static_cast<unsigned __int128>(a) * inv % p);
}

/// Order by repeated multiplication.
inline u64 order(u64 a, u64 p) {
    u64 x = a % p, t = 1;
    while (x != 1) {
        x = x * a % p;
        ++t;
    }
    return t;
}

struct Rat {
    i64 num;
    i64 den;
};

/// Index of ⟨gens mod p⟩ in (ℤ/pℤ)^× by enumerating the generated subgroup.
inline u64 subgroup_index(const std::vector<Rat>& gens, u64 p) {
    std::vector<bool> seen(p, false);
    std::vector<u64> elems{1};
    seen[1] = true;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            const u64 y = elems[i] * residue(g.num, g.den, p) % p;
            if (!seen[y]) {
                seen[y] = true;
                elems.push_back(y);
            }
        }
    return (p - 1) / elems.size();
}

/// Index through power-loop orders (fast enough up to p ~ 10^5).
inline u64 index_by_orders(const std::vector<Rat>& gens, u64 p) {
    u64 l = 1;
    for (const auto& g : gens) l = std::lcm(l, order(residue(g.num, g.den, p), p));
    return (p - 1) / l;
}

inline bool bad_prime(const std::vector<Rat>& gens, u64 p) {
    for (const auto& g : gens)
        if (g.num % static_cast<i64>(p) == 0 || g.den % static_cast<i64>(p) == 0) return true;
    return false;
}

/// χ_H(n) straight from the definition.
inline bool contains(const pindex::IndexSetSpec& s, u64 n) {
    const auto f = factor(n);
    auto v_at = [&](u64 p) -> unsigned {
        for (auto [q, e] : f)
            if (q == p) return e;
        return 0;
    };
    bool in_box = false;
    for (const auto& box : s.boxes()) {
        bool ok = true;
        for (const auto& [p, vs] : box) ok = ok && vs.contains(v_at(p));
        in_box = in_box || ok;
    }
    if (!in_box) return false;
    for (auto [p, e] : f) {
        if (s.q0() % p == 0) continue;
        auto it = s.exceptions().find(p);
        const auto& vs = it == s.exceptions().end() ? s.default_vset() : it->second;
        if (!vs.contains(e)) return false;
    }
    // Primes not dividing n need 0 ∈ V_ℓ; the default contains 0, so only exceptions matter.
    for (const auto& [p, vs] : s.exceptions())
        if (n % p != 0 && !vs.contains(0)) return false;
    return true;
}

/// Σ_{d|n} μ(n/d) χ(d).
inline int g(const pindex::IndexSetSpec& s, u64 n) {
    int total = 0;
    for (u64 d : divisors(n)) total += moebius(n / d) * (contains(s, d) ? 1 : 0);
    return total;
}

/// E(v, r, ℓ) from the distribution of v_ℓ(p − 1) and of the index of r
/// uniform elements of a cyclic ℓ-group:
/// P(v_ℓ(p−1) ≥ j) = 1/φ(ℓ^j), P(ℓ^v | index | v ≤ j) = ℓ^{−vr}.
inline mpq_class local_density(unsigned v, unsigned r, u64 ell) {
    auto tail = [&](unsigned j) -> mpq_class {  // P(v_ℓ(p−1) ≥ j)
        if (j == 0) return 1;
        mpz_class phi_j;
        mpz_ui_pow_ui(phi_j.get_mpz_t(), ell, j - 1);
        phi_j *= ell - 1;
        return mpq_class(1, 1) / mpq_class(phi_j);
    };
    auto pw = [&](unsigned e) -> mpq_class {
        mpz_class z;
        mpz_ui_pow_ui(z.get_mpz_t(), ell, e);
        return mpq_class(1) / mpq_class(z);
    };
    const mpq_class exact_j = tail(v) - tail(v + 1);
    mpq_class e = exact_j * pw(v * r) + tail(v + 1) * (pw(v * r) - pw((v + 1) * r));
    e.canonicalize();
    return e;
}

/// Artin's constant to 40 digits (literature value).
inline const char* kArtin = "0.3739558136192022880547280543464164151116";

/// [ℚ(ζ_m, a^{1/n}):ℚ] from splitting frequencies: among p ≡ 1 (mod m),
/// p ≤ budget, the fraction with a an n-th power mod p is φ(m)/degree.
/// Returns the divisor of φ(m)·n nearest to the observed inverse fraction.
inline u64 degree_by_splitting(Rat a, u64 m, u64 n, u64 budget) {
    const auto prime = sieve(budget);
    u64 total = 0, split = 0;
    for (u64 p = m + 1; p <= budget; p += m) {
        if (!prime[p] || bad_prime({a}, p)) continue;
        ++total;
        const u64 r = residue(a.num, a.den, p);
        u64 x = 1, base = r, e = (p - 1) / n;
        while (e) {
            if (e & 1) x = static_cast<u64>(static_cast<unsigned __int128>(x) * base % p);
            base = static_cast<u64>(static_cast<unsigned __int128>(base) * base % p);
            e >>= 1;
        }
        if (x == 1) ++split;
    }
    const double phi_m = static_cast<double>(phi(m));
    const double target = static_cast<double>(total) / static_cast<double>(split) * phi_m;
    const u64 top = phi(m) * n;
    u64 best = 1;
    for (u64 d = 1; d <= top; ++d)
        if (top % d == 0 && std::fabs(std::log(static_cast<double>(d) / target)) <
                                std::fabs(std::log(static_cast<double>(best) / target)))
            best = d;
    return best;
}

}  // namespace oracle
