#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pindex/arith.hpp"
#include "pindex/error.hpp"
#include "pindex/prime_scan.hpp"

using namespace pindex;

TEST_CASE("sieve_primes examples") {
    CHECK(sieve_primes(10) == std::vector<u64>{2, 3, 5, 7});
    CHECK(sieve_primes(2) == std::vector<u64>{2});
    CHECK_THROWS_AS(sieve_primes(1), Error);
}

TEST_CASE("sieve_primes matches a naive sieve up to 1e5") {
    const auto ref = oracle::sieve(100000);
    std::vector<u64> expect;
    for (u64 i = 0; i < ref.size(); ++i)
        if (ref[i]) expect.push_back(i);
    CHECK(sieve_primes(100000) == expect);
    for (u64 x : {3, 4, 97, 98, 1000, 65537}) {
        std::vector<u64> sub;
        for (u64 p : expect)
            if (p <= x) sub.push_back(p);
        CHECK(sieve_primes(x) == sub);
    }
}

TEST_CASE("prime count to 1e7 agrees with the reference sieve") {
    const u64 ref = oracle::prime_count(10'000'000);
    CHECK(prime_pi(10'000'000) == ref);
    CHECK(sieve_primes(10'000'000).size() == ref);
}

TEST_CASE("sieve limit raises a resource error") {
    const u64 saved = sieve_limits().max_x;
    sieve_limits().max_x = 1000;
    try {
        sieve_primes(5000);
        FAIL("expected a resource error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Resource);
        CHECK(std::string(e.what()).find("1000") != std::string::npos);
    }
    sieve_limits().max_x = saved;
}

TEST_CASE("factorize examples") {
    CHECK(factorize(1).empty());
    CHECK(factorize(36).factors() == std::vector<PrimePower>{{2, 2}, {3, 2}});
    CHECK(factorize(4704).factors() == std::vector<PrimePower>{{2, 5}, {3, 1}, {7, 2}});
    const u64 big = 18446744073709551557ULL;  // largest 64-bit prime
    CHECK(factorize(big).factors() == std::vector<PrimePower>{{big, 1}});
    CHECK(factorize(999999000001ULL * 3).value() == 999999000001ULL * 3);
}

TEST_CASE("multiplicative functions: examples") {
    CHECK(moebius(6) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(moebius(4) == 0);
    CHECK(radical(4704) == 42);
    CHECK(omega(4704) == 3);
    CHECK(omega(1) == 0);
}

TEST_CASE("factorization and multiplicative functions agree with trial division for n <= 1e4") {
    for (u64 n = 1; n <= 10000; ++n) {
        const Factorization f = factorize(n);
        REQUIRE(f.value() == n);
        u64 prev = 0;
        for (const auto& pp : f) {
            CHECK(pp.prime > prev);
            CHECK(pp.exponent >= 1);
            prev = pp.prime;
        }
        const auto ref = oracle::factor(n);
        REQUIRE(f.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(f.factors()[i].prime == ref[i].first);
            CHECK(f.factors()[i].exponent == ref[i].second);
        }
        CHECK(moebius(n) == oracle::moebius(n));
        if (n <= 3000) CHECK(euler_phi(n) == oracle::phi(n));
        u64 rad = 1;
        for (auto [p, e] : ref) rad *= p;
        CHECK(radical(n) == rad);
        CHECK(omega(n) == ref.size());
    }
}

TEST_CASE("divisors") {
    CHECK(divisors(factorize(12)) == std::vector<u64>{1, 2, 3, 4, 6, 12});
    for (u64 n = 1; n <= 500; ++n) CHECK(divisors(factorize(n)) == oracle::divisors(n));
}

TEST_CASE("is_prime against trial division") {
    for (u64 n = 0; n <= 20000; ++n) CHECK(is_prime(n) == oracle::is_prime(n));
    CHECK(is_prime(2305843009213693951ULL));            // 2^61 − 1
    CHECK_FALSE(is_prime(3215031751ULL));               // strong pseudoprime to 2, 3, 5, 7
    CHECK_FALSE(is_prime(3825123056546413051ULL));      // strong pseudoprime to bases ≤ 23
}

TEST_CASE("multiplicative_order examples") {
    CHECK(multiplicative_order(2, 7) == 3);
    CHECK(multiplicative_order(2, 11) == 10);
    CHECK(multiplicative_order(10, 101) == oracle::order(10, 101));
    CHECK(multiplicative_order(10, 101) == 4);
    CHECK(multiplicative_order(-1, 13) == 2);
    CHECK_THROWS_AS(multiplicative_order(14, 7), Error);
    try {
        multiplicative_order(0, 5);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Domain);
    }
}

TEST_CASE("multiplicative_order: random pairs") {
    gen::Rng rng(1);
    const auto primes = sieve_primes(200000);
    for (int i = 0; i < 10000; ++i) {
        const u64 p = rng.pick(primes);
        const u64 a = rng.uniform(1, p - 1);
        const u64 t = multiplicative_order(static_cast<i64>(a), p);
        CHECK((p - 1) % t == 0);
        CHECK(powmod(a, t, p) == 1);
        for (u64 q : prime_divisors(t)) CHECK(powmod(a, t / q, p) != 1);
        if (i < 300) CHECK(t == oracle::order(a, p));
    }
}

TEST_CASE("checked arithmetic") {
    CHECK(checked_mul(1ULL << 31, 1ULL << 32) == 1ULL << 63);
    CHECK_THROWS_AS(checked_mul(1ULL << 32, 1ULL << 32), Error);
    CHECK_THROWS_AS(checked_add(~0ULL, 1), Error);
    CHECK(checked_pow(3, 40) == 12157665459056928801ULL);
    CHECK_THROWS_AS(checked_pow(3, 41), Error);
    u64 out = 0;
    CHECK(mul_le(6, 7, 42, out));
    CHECK(out == 42);
    CHECK_FALSE(mul_le(6, 7, 41, out));
    try {
        checked_mul(~0ULL, 2);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Overflow);
    }
}

TEST_CASE("modular helpers") {
    CHECK(gcd(12, 18) == 6);
    CHECK(lcm(4, 6) == 12);
    CHECK(invmod(3, 7) == 5);
    CHECK(reduce_mod(-1, 7) == 6);
    CHECK(jacobi(2, 7) == 1);
    CHECK(jacobi(2, 11) == -1);
    CHECK(jacobi(0, 9) == 0);
    CHECK(valuation(4704, 2) == 5);
    CHECK(valuation(4704, 5) == 0);
}

TEST_CASE("prime scanner delivers p and the primes of p - 1") {
    PrimeScanner sc(100000, 140000, true);
    PrimeSegment seg;
    const auto ref = oracle::sieve(140000);
    u64 seen = 0;
    while (sc.next(seg)) {
        for (std::size_t i = 0; i < seg.primes.size(); ++i) {
            const u64 p = seg.primes[i];
            CHECK(ref[p]);
            ++seen;
            std::vector<u64> qs(seg.factors_of_p_minus_1(i).begin(), seg.factors_of_p_minus_1(i).end());
            std::vector<u64> expect;
            for (auto [q, e] : oracle::factor(p - 1)) expect.push_back(q);
            CHECK(qs == expect);
        }
    }
    u64 count = 0;
    for (u64 i = 100000; i <= 140000; ++i) count += ref[i];
    CHECK(seen == count);
}
