#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "pindex/error.hpp"
#include "pindex/index_sets.hpp"
#include "pindex/spec_json.hpp"

using namespace pindex;

namespace {

IndexSetSpec from_json(const char* text) { return parse_set(ojson::parse(text), "/set").spec; }

std::string error_of(const char* text) {
    try {
        from_json(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("ValuationSet canonical form") {
    const auto v = ValuationSet::from_intervals({{5, kInfinity}, {0, 1}, {2, 2}, {7, 9}});
    CHECK(v.intervals() == std::vector<Interval>{{0, 2}, {5, kInfinity}});
    CHECK_FALSE(v.is_all());
    CHECK(ValuationSet::from_intervals({{3, kInfinity}, {0, 2}}).is_all());

    const auto w = ValuationSet::from_intervals({{4, 6}, {0, 1}, {5, 8}});
    CHECK(w.intervals() == std::vector<Interval>{{0, 1}, {4, 8}});
    CHECK(w.bounded_count() == 2);
    CHECK(w.b1() == 1);
    CHECK(w.min_missing() == 2);
    CHECK(w.max_breakpoint() == 9);

    gen::Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto s = gen::vset(rng, rng.coin());
        const auto& ivs = s.intervals();
        for (std::size_t j = 0; j < ivs.size(); ++j) {
            CHECK(ivs[j].lo <= ivs[j].hi);
            if (j + 1 < ivs.size()) {
                CHECK(ivs[j].bounded());
                CHECK(ivs[j].hi + 1 < ivs[j + 1].lo);
            }
        }
        CHECK(ValuationSet::from_intervals(ivs) == s);
        for (u32 m = 0; m < 20; ++m) CHECK(s.complement().contains(m) != s.contains(m));
    }
}

TEST_CASE("g on prime powers") {
    const auto zero = ValuationSet::single(0);
    CHECK(zero.g(0) == 1);
    CHECK(zero.g(1) == -1);
    CHECK(zero.g(2) == 0);

    const u32 s = 5;
    const auto v = ValuationSet::from_intervals({{0, 1}, {s, kInfinity}});
    CHECK(v.g(0) == 1);
    CHECK(v.g(2) == -1);
    CHECK(v.g(s) == 1);
    CHECK(v.g(3) == 0);
    CHECK(v.breakpoints() == std::vector<u32>{2, s});

    for (u32 m = 1; m < 50; ++m) CHECK(ValuationSet::all().g(m) == 0);
}

TEST_CASE("contains examples") {
    const auto k2 = sets::kfree(2);
    CHECK_FALSE(k2.contains(12));
    CHECK(k2.contains(6));
    const auto s21 = sets::gcd_equals(2, 1);
    CHECK_FALSE(s21.contains(10));
    CHECK(s21.contains(15));
    CHECK(sets::multiples_of(6).contains(12));
    CHECK_FALSE(sets::multiples_of(6).contains(9));
    CHECK(sets::coprime_to(6).contains(35));
    CHECK_FALSE(sets::coprime_to(6).contains(14));
}

TEST_CASE("g examples") {
    const auto k2 = sets::kfree(2);
    CHECK(k2.g(4) == -1);
    CHECK(k2.g(36) == 1);
    CHECK(k2.g(8) == 0);
    CHECK(k2.g(1) == 1);
    CHECK(k2.g_bruteforce(36) == 1);
    CHECK(oracle::g(k2, 36) == 1);

    const auto m6 = sets::multiples_of(6);
    CHECK(m6.g(6) == 1);
    for (u64 m = 1; m <= 50; ++m)
        if (m != 6) CHECK(m6.g_bruteforce(m) == 0);

    gen::Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto s = gen::spec(rng);
        CHECK(s.g(1) == s.chi(1));
        CHECK(s.g_bruteforce(1) == s.chi(1));
    }
}

TEST_CASE("builders and validation") {
    CHECK_THROWS_AS(sets::kfree(1), Error);
    CHECK_THROWS_AS(sets::multiples_of(0), Error);
    CHECK_THROWS_AS(sets::gcd_equals(0, 1), Error);
    CHECK_THROWS_AS(IndexSetSpec::make(6, {}, ValuationSet::all(), {}), Error);
    Box box{{2, ValuationSet::single(1)}, {3, ValuationSet::all()}};
    // Exception sharing a prime with Q0.
    CHECK_THROWS_AS(IndexSetSpec::make(6, {box}, ValuationSet::all(), {{3, ValuationSet::single(0)}}), Error);
    // Box missing a prime of Q0.
    CHECK_THROWS_AS(IndexSetSpec::make(6, {Box{{2, ValuationSet::single(1)}}}, ValuationSet::all(), {}), Error);
    CHECK_THROWS_AS(IndexSetSpec::make(1, {}, ValuationSet::range(1, 3), {}), Error);
    CHECK_THROWS_AS(IndexSetSpec::make(1, {}, ValuationSet::all(), {{4, ValuationSet::single(0)}}), Error);
    const auto ok = IndexSetSpec::make(12, {box}, ValuationSet::all(), {{5, ValuationSet::single(0)}});
    CHECK(ok.q0() == 6);
    CHECK(ok.special_primes() == std::vector<u64>{2, 3, 5});
}

TEST_CASE("property: Möbius inversion and agreement with the divisor-sum oracle") {
    gen::Rng rng(2024);
    for (int i = 0; i < 25; ++i) {
        const auto s = gen::spec(rng);
        std::vector<int> g(5001);
        for (u64 n = 1; n <= 5000; ++n) {
            g[n] = s.g(n);
            REQUIRE(g[n] == s.g_bruteforce(n));
            REQUIRE(s.contains(n) == oracle::contains(s, n));
        }
        for (u64 n = 1; n <= 5000; ++n) {
            int sum = 0;
            for (u64 d : divisors(factorize(n))) sum += g[d];
            REQUIRE(sum == s.chi(n));
        }
        for (u64 n = 1; n <= 400; ++n) REQUIRE(g[n] == oracle::g(s, n));
    }
}

TEST_CASE("property: multiplicativity when Q0 = 1 and 1 ∈ H") {
    gen::Rng rng(11);
    int tested = 0;
    while (tested < 10) {
        const auto s = gen::spec(rng);
        if (s.q0() != 1 || !s.contains(1)) continue;
        ++tested;
        for (u64 m = 1; m <= 500; m += 7)
            for (u64 n = 1; n <= 500; n += 3)
                if (gcd(m, n) == 1) REQUIRE(s.g(m * n) == s.g(m) * s.g(n));
    }
}

TEST_CASE("property: support bounds") {
    gen::Rng rng(5);
    int tested = 0;
    while (tested < 10) {
        const auto s = gen::spec(rng);
        if (!s.default_vset().is_all() || !s.exceptions().empty()) continue;
        ++tested;
        const u64 bound = 1ULL << omega(s.q0());
        for (u64 n = 1; n <= 3000; ++n) {
            const int g = s.g(n);
            if (g == 0) continue;
            u64 m = n;
            for (u64 p : s.q0_primes())
                while (m % p == 0) m /= p;
            CHECK(m == 1);
            CHECK(static_cast<u64>(std::abs(g)) <= bound);
        }
    }
    // 1, 2 ∈ V_ℓ everywhere: g(n) ≠ 0 forces rad(n)^3 | n.
    const auto s = IndexSetSpec::make(1, {}, ValuationSet::from_intervals({{0, 2}, {5, 6}, {9, kInfinity}}),
                                      {{3, ValuationSet::from_intervals({{0, 3}})}});
    for (u64 n = 1; n <= 20000; ++n)
        if (s.g(n) != 0) {
            const u64 r = radical(n);
            CHECK(n % (r * r * r) == 0);
        }
}

TEST_CASE("classify examples") {
    const auto k2 = classify(sets::kfree(2));
    CHECK(k2.kind == ClassKind::KlFree);
    CHECK(k2.k == 2);
    CHECK(k2.kappa == mpq_class(1, 2));
    CHECK(classify(sets::kfree(5)).kappa == mpq_class(4, 5));

    const auto v = classify(IndexSetSpec::make(1, {}, ValuationSet::from_intervals({{0, 1}, {4, kInfinity}}), {}));
    CHECK(v.kind == ClassKind::VlFin);
    CHECK(v.k == 2);
    CHECK(v.alpha == mpq_class(1, 2));
    CHECK(v.kappa == mpq_class(1, 6));

    const auto one = classify(IndexSetSpec::make(1, {}, ValuationSet::single(0), {}));
    CHECK(one.kind == ClassKind::Unsupported);
    CHECK_FALSE(one.reason.empty());

    CHECK(classify(sets::multiples_of(12)).kind == ClassKind::FiniteQ);
    CHECK(classify(sets::gcd_equals(6, 2)).kind == ClassKind::FiniteQ);
    CHECK(classify(sets::everything()).supported());
}

TEST_CASE("set JSON: parsing, canonical form and errors") {
    CHECK(from_json(R"({"type":"kfree","k":2})") == sets::kfree(2));
    CHECK(from_json(R"({"type":"everything"})") == sets::everything());
    CHECK(from_json(R"({"type":"multiples","n":6})") == sets::multiples_of(6));
    CHECK(from_json(R"({"type":"coprime","m":10})") == sets::coprime_to(10));
    CHECK(from_json(R"({"type":"gcd_equals","m":2,"t":1})") == sets::gcd_equals(2, 1));
    CHECK(from_json(R"({"type":"single_prime","prime":3,"valuations":[[0,1]]})") ==
          sets::single_prime(3, ValuationSet::range(0, 1)));
    CHECK(from_json(R"({"type":"klfree","k":3,"primes":{"2":2}})") == sets::klfree({{2, 2}}, 3));
    const auto c = from_json(
        R"({"type":"custom","q0":2,"boxes":[{"2":[[1,1]]}],"default":[[0,null]],"exceptions":{"3":[[0,1]]}})");
    CHECK(c.q0() == 2);
    CHECK(c.exceptions().at(3) == ValuationSet::range(0, 1));

    CHECK(error_of(R"({"type":"kfree","k":1})") == "/set/k: k must be ≥ 2");
    CHECK(error_of(R"({"type":"kfree","k":2,"extra":1})") == "/set/extra: unknown field");
    CHECK(error_of(R"({"type":"nope"})").starts_with("/set/type: unknown set type"));
    CHECK(error_of(R"({"type":"custom","q0":6,"boxes":[{"2":[[0,0]],"3":[[0,0]]}],"exceptions":{"3":[[0,0]]}})")
              .find("divides Q0") != std::string::npos);
    CHECK(error_of(R"({"type":"custom","default":[[2,1]]})") == "/set/default/0: interval has hi < lo");
    CHECK(error_of(R"({"type":"custom","exceptions":{"9":[[0,0]]}})") == "/set/exceptions/9: 9 is not prime");

    gen::Rng rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto s = gen::spec(rng);
        const ojson j = set_to_json(s);
        CHECK(parse_set(j, "").spec == s);
        CHECK(parse_set(ojson::parse(j.dump()), "").json == j);
    }
}
