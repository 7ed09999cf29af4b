#include "pindex/arith.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pindex/error.hpp"

namespace pindex {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::Domain: return "domain error";
        case ErrorKind::Validation: return "validation error";
        case ErrorKind::Resource: return "resource error";
        case ErrorKind::Statistical: return "statistical error";
        case ErrorKind::Ambiguous: return "ambiguity error";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Overflow: return "overflow";
    }
    return "error";
}

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
    std::sort(factors_.begin(), factors_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    std::vector<PrimePower> merged;
    for (const auto& pp : factors_) {
        if (pp.exponent == 0) continue;
        if (!merged.empty() && merged.back().prime == pp.prime)
            merged.back().exponent += pp.exponent;
        else
            merged.push_back(pp);
    }
    factors_ = std::move(merged);
}

u32 Factorization::exponent_of(u64 p) const noexcept {
    for (const auto& pp : factors_)
        if (pp.prime == p) return pp.exponent;
    return 0;
}

u64 Factorization::value() const {
    u64 v = 1;
    for (const auto& pp : factors_) v = checked_mul(v, checked_pow(pp.prime, pp.exponent));
    return v;
}

Factorization Factorization::times(const Factorization& other) const {
    std::vector<PrimePower> all = factors_;
    all.insert(all.end(), other.factors_.begin(), other.factors_.end());
    return Factorization(std::move(all));
}

u64 checked_mul(u64 a, u64 b) {
    u64 out;
    if (__builtin_mul_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "64-bit overflow in " + std::to_string(a) + " * " + std::to_string(b));
    return out;
}

u64 checked_add(u64 a, u64 b) {
    u64 out;
    if (__builtin_add_overflow(a, b, &out))
        fail(ErrorKind::Overflow, "64-bit overflow in " + std::to_string(a) + " + " + std::to_string(b));
    return out;
}

u64 checked_pow(u64 base, u32 exp) {
    u64 r = 1;
    for (u32 i = 0; i < exp; ++i) r = checked_mul(r, base);
    return r;
}

bool mul_le(u64 a, u64 b, u64 limit, u64& out) noexcept {
    u64 p;
    if (__builtin_mul_overflow(a, b, &p) || p > limit) return false;
    out = p;
    return true;
}

u64 gcd(u64 a, u64 b) noexcept {
    while (b) {
        u64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

u64 lcm(u64 a, u64 b) {
    if (a == 0 || b == 0) return 0;
    return checked_mul(a / gcd(a, b), b);
}

u64 powmod(u64 base, u64 exp, u64 m) noexcept {
    if (m == 1) return 0;
    u64 r = 1;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return r;
}

u64 invmod(u64 a, u64 m) {
    __int128 t = 0, nt = 1;
    __int128 r = m, nr = a % m;
    while (nr) {
        __int128 q = r / nr;
        __int128 tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) fail(ErrorKind::Domain, "no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

u64 reduce_mod(i64 a, u64 m) noexcept {
    if (a >= 0) return static_cast<u64>(a) % m;
    // -(a+1) avoids overflow at INT64_MIN.
    u64 neg = static_cast<u64>(-(a + 1)) + 1;
    u64 r = neg % m;
    return r == 0 ? 0 : m - r;
}

namespace {

bool mr_witness(u64 n, u64 a, u64 d, u32 s) noexcept {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (u32 i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            u64 q = 1;
            u64 xs = x, ys = y;
            // Batch gcds to amortize their cost.
            for (int i = 0; i < 64; ++i) {
                x = f(x);
                y = f(f(y));
                q = mulmod(q, x > y ? x - y : y - x, n);
                if (q == 0) break;
            }
            d = gcd(q, n);
            if (d == n || q == 0) {
                x = xs;
                y = ys;
                do {
                    x = f(x);
                    y = f(f(y));
                    d = gcd(x > y ? x - y : y - x, n);
                } while (d == 1);
            }
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::vector<PrimePower>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back({n, 1});
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime(u64 n) noexcept {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    if (n < 41 * 41) return true;
    u64 d = n - 1;
    u32 s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (mr_witness(n, a, d, s)) return false;
    }
    return true;
}

u32 valuation(u64 n, u64 p) noexcept {
    if (n == 0 || p < 2) return 0;
    u32 v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

SieveLimits& sieve_limits() noexcept {
    static SieveLimits limits;
    return limits;
}

std::vector<u64> sieve_primes_range(u64 lo, u64 hi, std::span<const u64> base_primes) {
    std::vector<u64> out;
    if (hi < 2 || lo > hi) return out;
    if (lo <= 2) {
        out.push_back(2);
        lo = 3;
    }
    if (lo % 2 == 0) ++lo;
    if (lo > hi) return out;
    // Odd-only: index i represents lo + 2i.
    const u64 len = (hi - lo) / 2 + 1;
    std::vector<unsigned char> composite(len, 0);
    for (u64 p : base_primes) {
        if (p == 2) continue;
        if (p * p > hi) break;
        u64 start = std::max(p * p, (lo + p - 1) / p * p);
        if (start % 2 == 0) start += p;
        for (u64 m = start; m <= hi; m += 2 * p) composite[(m - lo) / 2] = 1;
    }
    for (u64 i = 0; i < len; ++i)
        if (!composite[i]) {
            u64 v = lo + 2 * i;
            if (v > 1) out.push_back(v);
        }
    return out;
}

std::vector<u64> sieve_primes(u64 x) {
    if (x < 2) fail(ErrorKind::InvalidArgument, "sieve_primes requires x >= 2");
    const SieveLimits& lim = sieve_limits();
    if (x > lim.max_x)
        fail(ErrorKind::Resource, "sieve bound " + std::to_string(x) + " exceeds max_x = " + std::to_string(lim.max_x));
    // π(x) < 1.26 x / ln x bounds the output vector.
    const double est = 1.26 * static_cast<double>(x) / std::log(static_cast<double>(x)) + 16;
    if (est * sizeof(u64) > static_cast<double>(lim.memory_budget_bytes))
        fail(ErrorKind::Resource, "prime list up to " + std::to_string(x) + " exceeds memory budget of " +
                                      std::to_string(lim.memory_budget_bytes) + " bytes");

    const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(x))) + 2;
    std::vector<u64> base;
    {
        std::vector<unsigned char> small(root + 1, 1);
        small[0] = small[1] = 0;
        for (u64 i = 2; i * i <= root; ++i)
            if (small[i])
                for (u64 j = i * i; j <= root; j += i) small[j] = 0;
        for (u64 i = 2; i <= root; ++i)
            if (small[i]) base.push_back(i);
    }

    std::vector<u64> out;
    out.reserve(static_cast<std::size_t>(est));
    constexpr u64 kSegment = 1ULL << 22;
    for (u64 lo = 2; lo <= x; lo += kSegment) {
        u64 hi = std::min(x, lo + kSegment - 1);
        auto seg = sieve_primes_range(lo, hi, base);
        out.insert(out.end(), seg.begin(), seg.end());
        if (hi == x) break;
    }
    return out;
}

Factorization factorize(u64 n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "factorize requires n >= 1");
    std::vector<PrimePower> out;
    for (u64 p : {2ULL, 3ULL, 5ULL}) {
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    // Wheel mod 30 trial division to a small bound, then Pollard rho.
    static constexpr u64 kWheel[8] = {4, 2, 4, 2, 4, 6, 2, 6};
    u64 p = 7;
    for (int i = 0; p <= 1000 && p * p <= n; p += kWheel[i], i = (i + 1) % 8) {
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    }
    if (n > 1) {
        if (p * p > n)
            out.push_back({n, 1});
        else
            factor_rec(n, out);
    }
    return Factorization(std::move(out));
}

int moebius(const Factorization& f) noexcept {
    for (const auto& pp : f)
        if (pp.exponent > 1) return 0;
    return f.size() % 2 ? -1 : 1;
}

int moebius(u64 n) { return moebius(factorize(n)); }

u64 euler_phi(const Factorization& f) {
    u64 r = 1;
    for (const auto& pp : f) r = checked_mul(r, checked_mul(pp.prime - 1, checked_pow(pp.prime, pp.exponent - 1)));
    return r;
}

u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

u64 radical(const Factorization& f) {
    u64 r = 1;
    for (const auto& pp : f) r *= pp.prime;
    return r;
}

u64 radical(u64 n) { return radical(factorize(n)); }

u32 omega(u64 n) { return static_cast<u32>(factorize(n).size()); }

std::vector<u64> prime_divisors(u64 n) {
    std::vector<u64> out;
    for (const auto& pp : factorize(n)) out.push_back(pp.prime);
    return out;
}

std::vector<u64> divisors(const Factorization& f) {
    std::vector<u64> out{1};
    for (const auto& pp : f) {
        const std::size_t n = out.size();
        u64 pk = 1;
        for (u32 e = 1; e <= pp.exponent; ++e) {
            pk *= pp.prime;
            for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

u64 multiplicative_order_residue(u64 a, u64 p, std::span<const u64> primes_of_p_minus_1) noexcept {
    u64 t = p - 1;
    for (u64 q : primes_of_p_minus_1) {
        while (t % q == 0 && powmod(a, t / q, p) == 1) t /= q;
    }
    return t;
}

u64 multiplicative_order(i64 a, u64 p) {
    if (p < 2 || !is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    u64 r = reduce_mod(a, p);
    if (r == 0) fail(ErrorKind::Domain, "prime must be excluded: " + std::to_string(p) + " divides " + std::to_string(a));
    if (p == 2) return 1;
    auto qs = prime_divisors(p - 1);
    return multiplicative_order_residue(r, p, qs);
}

int jacobi(i64 a_in, u64 n) noexcept {
    u64 a = reduce_mod(a_in, n);
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) result = -result;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) result = -result;
        a %= n;
    }
    return n == 1 ? result : 0;
}

}  // namespace pindex
