// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "pindex/config.hpp"
#include "pindex/constants.hpp"
#include "pindex/density.hpp"
#include "pindex/empirical.hpp"
#include "pindex/error.hpp"
#include "pindex/kummer.hpp"

using namespace pindex;

namespace {

constexpr u64 kX = 10'000'000;
constexpr u64 kMcBudget = 1'000'000;

RationalGroup G(std::vector<std::string> gens) { return RationalGroup::from_strings(gens); }

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

bool within_band(double observed, double expected, u64 sample, double extra = 0) {
    const double sigma = std::sqrt(expected * (1 - expected) / static_cast<double>(sample));
    return std::fabs(observed - expected) <= 3 * sigma + extra;
}

IndexSetSpec worked_almost_cut() {
    return IndexSetSpec::make(2, {Box{{2, ValuationSet::single(1)}}}, ValuationSet::all(),
                              {{3, ValuationSet::range(0, 1)}});
}

const std::vector<std::pair<std::string, IndexSetSpec>>& cross_specs() {
    static const std::vector<std::pair<std::string, IndexSetSpec>> specs = {
        {"kfree(2)", sets::kfree(2)},
        {"kfree(3)", sets::kfree(3)},
        {"gcd_equals(2,1)", sets::gcd_equals(2, 1)},
        {"single_prime(3,{0,1})", sets::single_prime(3, ValuationSet::range(0, 1))},
        {"almost-cut", worked_almost_cut()},
    };
    return specs;
}

const std::vector<std::string> kDegreeBases = {"2", "3", "5", "6", "8", "12", "-2", "18"};

Outcome c1() {
    u64 checked = 0;
    for (u64 l = 2; l <= 50; ++l) {
        if (!oracle::is_prime(l)) continue;
        for (u32 r = 1; r <= 4; ++r) {
            const u32 top = 12;
            mpq_class sum = 0;
            for (u32 v = 0; v <= top; ++v) {
                const mpq_class e = local_density(v, r, l);
                if (e != oracle::local_density(v, r, l))
                    return {false, fmt("E(%u,%u,%llu) disagrees with the oracle", v, r, (unsigned long long)l)};
                sum += e;
            }
            // Σ_{v>top} E(v) = ℓ^{−(top+1)r}/φ(ℓ^{top+1}).
            mpz_class d;
            mpz_ui_pow_ui(d.get_mpz_t(), l, (top + 1) * (r + 1) - 1);
            d *= l - 1;
            const mpq_class rest = mpq_class(1) / mpq_class(d);
            if (local_factor(ValuationSet::at_least(top + 1), r, l) != rest)
                return {false, fmt("tail factor wrong at l=%llu r=%u", (unsigned long long)l, r)};
            if (sum + rest != 1) return {false, fmt("partition fails at l=%llu r=%u", (unsigned long long)l, r)};
            ++checked;
        }
    }
    return {true, fmt("%llu (l, r) pairs sum to exactly 1", (unsigned long long)checked)};
}

Outcome c2() {
    gen::Rng rng(2024);
    for (int i = 0; i < 25; ++i) {
        const auto s = gen::spec(rng);
        std::vector<int> g(5001);
        for (u64 n = 1; n <= 5000; ++n) {
            g[n] = s.g(n);
            if (g[n] != s.g_bruteforce(n)) return {false, fmt("g != g_bruteforce at spec %d, n=%llu", i, (unsigned long long)n)};
        }
        for (u64 n = 1; n <= 5000; ++n) {
            int sum = 0;
            for (u64 d : oracle::divisors(n)) sum += g[d];
            if (sum != (oracle::contains(s, n) ? 1 : 0))
                return {false, fmt("inversion fails at spec %d, n=%llu", i, (unsigned long long)n)};
        }
    }
    return {true, "25 specs, n <= 5000"};
}

Outcome c3() {
    u64 pairs = 0, mismatches = 0, undecided = 0;
    std::string first;
    for (const auto& a : kDegreeBases)
        for (u64 n = 1; n <= 20; ++n) {
            ++pairs;
            const u64 exact = degree_rank1(mpq_class(a), n, n);
            try {
                const auto mc = degree_montecarlo(G({a}), n, kMcBudget);
                if (mc.degree != exact) {
                    ++mismatches;
                    if (first.empty()) first = fmt(" (first: a=%s n=%llu)", a.c_str(), (unsigned long long)n);
                }
            } catch (const Error& e) {
                ++undecided;
                if (first.empty()) first = fmt(" (first: a=%s n=%llu: %s)", a.c_str(), (unsigned long long)n, e.what());
            }
        }
    return {mismatches == 0 && undecided == 0,
            fmt("%llu pairs, %llu mismatches, %llu undecided%s", (unsigned long long)pairs,
                (unsigned long long)mismatches, (unsigned long long)undecided, first.c_str())};
}

Outcome c4() {
    ConstantOptions o;
    o.allow_uncertified = true;
    const auto artin = IndexSetSpec::make(1, {}, ValuationSet::single(0), {});
    const auto k = global_constant(artin, 1, 1e-10, o);
    const double target = std::stod(oracle::kArtin);
    const auto fine = global_constant_at(artin, 1, k.cutoff * 10, o);
    const bool brackets = k.value.lo <= target && target <= k.value.hi;
    const bool nested = k.value.lo <= fine.value.lo && fine.value.hi <= k.value.hi;
    return {brackets && nested && k.value.error <= 1e-10,
            fmt("[%.15f, %.15f] at L=%llu, 10x bracket [%.15f, %.15f]", k.value.lo, k.value.hi,
                (unsigned long long)k.cutoff, fine.value.lo, fine.value.hi)};
}

Outcome c5() {
    const auto g = G({"2"});
    DensityContext ctx(g, {});
    const auto d = density_series(sets::kfree(2), ctx, 1e-8);
    const auto c = count_index_in_set(g, sets::kfree(2), kX);
    const double pi = static_cast<double>(oracle::prime_count(kX));
    const double band = 3 * std::sqrt(d.value.value * (1 - d.value.value) / pi);
    const double dev = c.ratio() - d.value.value;
    return {d.value.error <= 1e-8 && std::fabs(dev) <= band,
            fmt("density %.10f, empirical %.6f, |dev| %.2e <= band %.2e", d.value.value, c.ratio(), std::fabs(dev), band)};
}

Outcome c6() {
    struct Case {
        const char* a;
        u64 n;
        double expect;
    };
    std::string detail;
    bool ok = true;
    for (const Case& k : {Case{"2", 3, 1.0 / 6}, Case{"2", 2, 0.5}, Case{"4", 2, 1.0}}) {
        const auto c = count_divisible(G({k.a}), k.n, kX);
        const bool hit = within_band(c.ratio(), k.expect, c.total);
        ok = ok && hit;
        detail += fmt("%s<%s>,n=%llu: %.6f vs %.6f", detail.empty() ? "" : "; ", k.a, (unsigned long long)k.n, c.ratio(),
                      k.expect);
    }
    return {ok, detail};
}

Outcome c7() {
    int agreeing = 0, total = 0;
    double worst = 0;
    std::string bad;
    for (const auto& gens : std::vector<std::vector<std::string>>{{"2"}, {"2", "3"}})
        for (const auto& [name, spec] : cross_specs()) {
            ++total;
            DensityContext a(G(gens), {}), b(G(gens), {});
            const auto s = density_series(spec, a, 1e-6);
            const auto p = density_product(spec, b, 1e-6);
            const double gap = std::fabs(s.value.value - p.value.value);
            worst = std::max(worst, gap);
            if (s.value.error <= 1e-6 && p.value.error <= 1e-6 && gap <= s.value.error + p.value.error)
                ++agreeing;
            else if (bad.empty())
                bad = fmt(" (first failure: %s, rank %zu)", name.c_str(), gens.size());
        }
    return {agreeing == total, fmt("%d/%d agree, max gap %.2e%s", agreeing, total, worst, bad.c_str())};
}

Outcome c8() {
    DensityContext ctx(G({"2"}), {});
    const std::vector<u64> ladder = {2, 6, 30, 210, 2310};
    const auto seq = density_limit_sequence(sets::kfree(2), ctx, ladder);
    bool monotone = true;
    for (std::size_t i = 1; i < seq.size(); ++i)
        monotone = monotone && seq[i].value.value <= seq[i - 1].value.value + seq[i].value.error + seq[i - 1].value.error;
    DensityContext ctx2(G({"2"}), {});
    const auto series = density_series(sets::kfree(2), ctx2, 1e-10);
    const double tail = omitted_prime_tail(sets::kfree(2), ctx2, ladder.back());
    const double gap = std::fabs(seq.back().value.value - series.value.value);
    const bool close = gap <= tail + series.value.error + seq.back().value.error;
    return {monotone && close, fmt("final %.12f, series %.12f, gap %.2e, tail %.2e", seq.back().value.value,
                                   series.value.value, gap, tail)};
}

Outcome c9() {
    const auto h = valuation_histogram(G({"2"}), 3, kX);
    bool ok = true;
    std::string detail;
    for (u32 v = 0; v <= 2; ++v) {
        const double e = oracle::local_density(v, 1, 3).get_d();
        const auto it = h.histogram.find(v);
        const double f = it == h.histogram.end() ? 0 : static_cast<double>(it->second) / static_cast<double>(h.total);
        ok = ok && within_band(f, e, h.total);
        detail += fmt("%sv=%u: %.6f vs %.6f", detail.empty() ? "" : "; ", v, f, e);
    }
    return {ok, detail};
}

Outcome c10() {
    const auto g = G({"5"});
    const auto frob = FrobeniusCondition::make(4, {1});
    const mpq_class theo(mpz_class(static_cast<unsigned long>(c_coefficient(frob, g, 3))), frobenius_degree(frob, g, 3));
    const double expect = theo.get_d() * static_cast<double>(euler_phi(4)) / static_cast<double>(frob.residues.size());
    const auto c = count_index_in_set(g, sets::multiples_of(3), kX, frob);
    const double observed = static_cast<double>(c.matched) / static_cast<double>(c.frob_total);
    return {within_band(observed, expect, c.frob_total),
            fmt("%.6f vs %.6f over %llu primes p = 1 mod 4", observed, expect, (unsigned long long)c.frob_total)};
}

// Criteria 3–10 as run configurations; each is run twice and compared byte for byte.
std::vector<std::pair<std::string, std::string>> determinism_runs() {
    std::vector<std::pair<std::string, std::string>> runs;
    const std::string x = std::to_string(kX);
    for (const auto& a : kDegreeBases)
        for (int n = 1; n <= 20; ++n)
            runs.push_back({"degree", R"({"group":[")" + a + R"("],"degree":{"n":)" + std::to_string(n) + R"(},"seed":7})"});
    runs.push_back({"constants", R"({"set":{"type":"custom","default":[[0,0]]},"rank":1,"epsilon":"1e-10","allow_uncertified":true,"seed":7})"});
    runs.push_back({"compare", R"({"group":["2"],"set":{"type":"kfree","k":2},"x":)" + x + R"(,"epsilon":"1e-8","seed":7})"});
    runs.push_back({"count", R"({"group":["2"],"set":{"type":"multiples","n":3},"x":)" + x + R"(,"seed":7})"});
    runs.push_back({"count", R"({"group":["2"],"set":{"type":"multiples","n":2},"x":)" + x + R"(,"seed":7})"});
    runs.push_back({"count", R"({"group":["4"],"set":{"type":"multiples","n":2},"x":)" + x + R"(,"seed":7})"});
    for (const char* gens : {R"(["2"])", R"(["2","3"])"})
        for (const auto& [name, spec] : cross_specs())
            for (const char* m : {"series", "product"})
                runs.push_back({"density", std::string(R"({"group":)") + gens + R"(,"set":)" + set_to_json(spec).dump() +
                                               R"(,"epsilon":"1e-6","method":")" + m + R"(","seed":7})"});
    runs.push_back({"density", R"({"group":["2"],"set":{"type":"kfree","k":2},"method":"limit","ladder":[2,6,30,210,2310],"seed":7})"});
    runs.push_back({"count", R"({"group":["2"],"set":{"type":"everything"},"x":)" + x + R"(,"histogram_prime":3,"seed":7})"});
    runs.push_back({"compare", R"({"group":["5"],"set":{"type":"multiples","n":3},"frobenius":{"conductor":4,"residues":[1]},"x":)" +
                                   x + R"(,"seed":7})"});
    return runs;
}

Outcome c11() {
    u64 identical = 0, total = 0;
    std::string bad;
    for (const auto& [cmd, text] : determinism_runs()) {
        ++total;
        const RunConfig cfg = parse_config(text);
        const RunResult a = run(cmd, cfg);
        const RunResult b = run(cmd, cfg);
        if (a.artifact == b.artifact && a.csv == b.csv && a.histogram_csv == b.histogram_csv)
            ++identical;
        else if (bad.empty())
            bad = " (first difference: " + cmd + " " + text + ")";
    }
    return {identical == total,
            fmt("%llu/%llu runs byte-identical%s", (unsigned long long)identical, (unsigned long long)total, bad.c_str())};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> fn;
    };
    const std::vector<Criterion> criteria = {
        {1, "local-density partition", 1, c1},
        {2, "Möbius inversion roundtrip", 30, c2},
        {3, "degree oracle concordance", 120, c3},
        {4, "Artin-type constant", 10, c4},
        {5, "squarefree-index experiment", 300, c5},
        {6, "single-term Chebotarev check", 300, c6},
        {7, "cross-formula consistency", 300, c7},
        {8, "limit theorem", 60, c8},
        {9, "valuation histogram", 300, c9},
        {10, "Frobenius filter", 300, c10},
        {11, "determinism", 1500, c11},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.fn();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs <= c.limit_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %-30s %s  %s [%.2fs, limit %.0fs%s]\n", c.id, c.name, pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs, c.limit_s, in_time ? "" : ", exceeded");
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
