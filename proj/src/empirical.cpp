#include "pindex/empirical.hpp"

#include <mpfr.h>

#include <cmath>

#include "pindex/error.hpp"
#include "pindex/prime_scan.hpp"
#include "pindex/spec_json.hpp"

namespace pindex {

namespace {

u64 subgroup_order(const RationalGroup& g, u64 p, std::span<const u64> primes_of_p_minus_1) {
    u64 ord = 1;
    for (std::size_t i = 0; i < g.rank(); ++i)
        ord = lcm(ord, multiplicative_order_residue(g.residue(i, p), p, primes_of_p_minus_1));
    return ord;
}

void check_x(u64 x) {
    if (x < 2) fail(ErrorKind::InvalidArgument, "x must be at least 2");
    if (x > sieve_limits().max_x)
        fail(ErrorKind::Resource, "x = " + std::to_string(x) + " exceeds the configured limit " +
                                      std::to_string(sieve_limits().max_x));
}

}  // namespace

std::optional<u64> index_of(const RationalGroup& g, u64 p) {
    if (p < 2 || !is_prime(p)) fail(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
    if (g.is_bad_prime(p)) return std::nullopt;
    const auto primes = prime_divisors(p - 1);
    return (p - 1) / subgroup_order(g, p, primes);
}

void EmpiricalCount::merge(const EmpiricalCount& o) {
    x = std::max(x, o.x);
    total += o.total;
    matched += o.matched;
    excluded += o.excluded;
    frob_total += o.frob_total;
    if (o.hist_prime) hist_prime = o.hist_prime;
    for (const auto& [v, c] : o.histogram) histogram[v] += c;
    if (subject.empty()) subject = o.subject;
}

double EmpiricalCount::ratio() const noexcept {
    return total ? static_cast<double>(matched) / static_cast<double>(total) : 0.0;
}

double EmpiricalCount::std_error() const noexcept {
    if (!total) return 0;
    const double r = ratio();
    return std::sqrt(r * (1 - r) / static_cast<double>(total));
}

EmpiricalCount count_index_in_range(const RationalGroup& g, const IndexSetSpec& spec, u64 lo, u64 hi,
                                    const FrobeniusCondition& frob, u64 hist_prime) {
    check_x(hi);
    if (hist_prime && !is_prime(hist_prime)) fail(ErrorKind::InvalidArgument, "histogram prime must be prime");
    EmpiricalCount init;
    init.hist_prime = hist_prime;
    lo = std::max<u64>(lo, 2);
    EmpiricalCount out = scan_reduce(lo, hi, true, init, [&](EmpiricalCount& st, const PrimeSegment& seg) {
        for (std::size_t i = 0; i < seg.primes.size(); ++i) {
            const u64 p = seg.primes[i];
            if (g.is_bad_prime(p) || frob.conductor % p == 0) {
                ++st.excluded;
                continue;
            }
            ++st.total;
            const auto qs = seg.factors_of_p_minus_1(i);
            const u64 ind = (p - 1) / subgroup_order(g, p, qs);
            if (hist_prime) ++st.histogram[valuation(ind, hist_prime)];
            if (!frob.admits(p)) continue;
            ++st.frob_total;
            std::vector<PrimePower> pp;
            for (u64 q : qs)
                if (u32 e = valuation(ind, q)) pp.push_back({q, e});
            if (spec.contains(Factorization(std::move(pp)))) ++st.matched;
        }
    });
    out.x = hi;
    out.subject = subject_key(g, spec, frob);
    return out;
}

EmpiricalCount count_index_in_set(const RationalGroup& g, const IndexSetSpec& spec, u64 x,
                                  const FrobeniusCondition& frob, u64 hist_prime) {
    return count_index_in_range(g, spec, 2, x, frob, hist_prime);
}

EmpiricalCount count_divisible(const RationalGroup& g, u64 n, u64 x, const FrobeniusCondition& frob) {
    return count_index_in_set(g, sets::multiples_of(n), x, frob);
}

EmpiricalCount valuation_histogram(const RationalGroup& g, u64 ell, u64 x) {
    if (!is_prime(ell)) fail(ErrorKind::InvalidArgument, std::to_string(ell) + " is not prime");
    return count_index_in_set(g, sets::everything(), x, {}, ell);
}

double li(double x) {
    if (!(x >= 2)) fail(ErrorKind::InvalidArgument, "li(x) requires x >= 2");
    mpfr_t t;
    mpfr_init2(t, 128);
    mpfr_set_d(t, x, MPFR_RNDN);
    mpfr_log(t, t, MPFR_RNDN);
    mpfr_eint(t, t, MPFR_RNDN);
    const double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return out;
}

CompareReport compare(const EmpiricalCount& emp, const DensityResult& theo, const FrobeniusCondition& frob) {
    if (!emp.subject.empty() && !theo.subject.empty() && emp.subject != theo.subject)
        fail(ErrorKind::Validation, "empirical count and density describe different configurations:\n  " +
                                        emp.subject + "\n  " + theo.subject);
    CompareReport rep;
    double scale = 1;
    if (!frob.is_trivial()) {
        scale = static_cast<double>(euler_phi(frob.conductor)) / static_cast<double>(frob.residues.size());
        rep.sample = emp.frob_total;
    } else {
        rep.sample = emp.total;
    }
    if (rep.sample == 0) fail(ErrorKind::Statistical, "no primes in the sample");
    rep.empirical = static_cast<double>(emp.matched) / static_cast<double>(rep.sample);
    rep.theoretical = theo.value.value * scale;
    rep.theory_error = theo.value.error * scale;
    const double d = std::clamp(rep.theoretical, 0.0, 1.0);
    rep.sigma = std::sqrt(d * (1 - d) / static_cast<double>(rep.sample));
    rep.band = 3 * rep.sigma + rep.theory_error;
    rep.deviation = rep.empirical - rep.theoretical;
    rep.z = rep.sigma > 0 ? rep.deviation / rep.sigma : 0;
    rep.pass = std::fabs(rep.deviation) <= rep.band;
    rep.li_x = li(static_cast<double>(std::max<u64>(emp.x, 2)));
    rep.li_expected = theo.value.value * rep.li_x;
    rep.li_deviation =
        rep.li_expected > 0 ? (static_cast<double>(emp.matched) - rep.li_expected) / rep.li_expected : 0;
    return rep;
}

std::string subject_key(const RationalGroup& g, const IndexSetSpec& spec, const FrobeniusCondition& frob) {
    std::string s = "G=<" + g.key() + "> H=" + set_to_json(spec).dump() + " f=" + std::to_string(frob.conductor) + " C={";
    for (std::size_t i = 0; i < frob.residues.size(); ++i) s += (i ? "," : "") + std::to_string(frob.residues[i]);
    return s + "}";
}

}  // namespace pindex
