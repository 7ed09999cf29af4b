#include <cmath>

#include "density_support.hpp"
#include "pindex/density.hpp"
#include "pindex/error.hpp"
#include "pindex/tails.hpp"

namespace pindex {

using detail::generic_steps;
using detail::generic_walk;
using detail::kUnbounded;
using detail::special_terms;

DensityResult density_product(const IndexSetSpec& spec, DensityContext& ctx, double eps) {
    if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
    ConvergenceClass cls = classify(spec);
    if (!cls.supported() && !ctx.options().allow_uncertified)
        fail(ErrorKind::Unsupported, "density of this set is not covered unconditionally: " + cls.reason +
                                         "; allow uncertified evaluation to compute the product anyway");
    const u32 r = ctx.group().rank();

    // B* absorbs the entanglement primes, the conductor and every special prime.
    u64 b = ctx.bad_modulus();
    for (u64 p : spec.special_primes()) b = lcm(b, p);
    std::vector<u64> generic_b;
    const auto special = spec.special_primes();
    for (u64 p : prime_divisors(b))
        if (!std::binary_search(special.begin(), special.end(), p)) generic_b.push_back(p);

    // Finite factor Σ_{n | B*^∞} g(n) c(n)/[F_{n,n}:ℚ].
    const auto steps = generic_steps(spec.default_vset());
    mpq_class finite = 0;
    u64 terms = 0;
    for (const auto& m : special_terms(spec, kUnbounded))
        terms += generic_walk(generic_b, steps, kUnbounded, [&](u64 n, u64 phi_n, int gn) {
            finite += m.g * gn * ctx.term(checked_mul(m.n, n), m.phi * phi_n);
        });
    finite.canonicalize();

    ConstantOptions copts = ctx.options().constant;
    copts.allow_uncertified = true;
    const ConstantResult away = global_constant_away_from(spec, r, b, eps, copts);
    const ConstantResult full = global_constant(spec, r, eps, copts);

    mpq_class local_at_b = 1;
    for (u64 p : prime_divisors(b)) local_at_b *= local_factor(local_vset(spec, p), r, p);
    mpq_class d = finite / local_at_b;
    d.canonicalize();

    const RealInterval value = RealInterval(finite) * away.interval;
    DensityResult res;
    res.value = BoundedValue::from_interval(value);
    if (away.cutoff == 0) {
        mpq_class exact = finite * mpq_class(away.value.rational);
        exact.canonicalize();
        res.value = BoundedValue::exact(exact);
    }
    res.interval = value;
    res.cls = cls;
    res.method = Method::Product;
    res.d_factor = BoundedValue::exact(d);
    res.a_factor = full.value;
    res.cutoffs["B"] = static_cast<double>(b);
    res.cutoffs["L"] = static_cast<double>(away.cutoff);
    res.cutoffs["terms"] = static_cast<double>(terms);
    res.validation = ctx.tally();
    res.certified = cls.supported() && ctx.tally().mismatch == 0;
    if (!cls.supported()) res.notes.push_back("uncertified: " + cls.reason);
    if (ctx.tally().mismatch)
        res.notes.push_back(std::to_string(ctx.tally().mismatch) + " degree(s) disagree with the Monte-Carlo oracle");
    return res;
}

double omitted_prime_tail(const IndexSetSpec& spec, DensityContext& ctx, u64 q) {
    const u32 r = ctx.group().rank();
    double total = 0;
    const auto special = spec.special_primes();
    for (u64 ell : special) {
        if (q % ell == 0) continue;
        const ValuationSet v = local_vset(spec, ell);
        if (spec.q0() % ell == 0 || !v.contains(0)) {
            total += 1;
            continue;
        }
        total += ctx.term(checked_pow(ell, v.min_missing())).get_d();
    }
    const ValuationSet& dflt = spec.default_vset();
    if (dflt.is_all()) return total * (1 + 1e-9);

    // For ℓ ∤ bad: T(ℓ^k) = T(1) ℓ^{-s} ℓ/(ℓ−1) with s = k(r+1).
    const u32 k = dflt.min_missing();
    const double s = static_cast<double>(k) * (r + 1);
    const double t1 = ctx.term(1).get_d();
    u64 explicit_limit = 100000;
    for (u64 p : prime_divisors(ctx.bad_modulus())) explicit_limit = std::max(explicit_limit, p);
    for (u64 ell : sieve_primes(explicit_limit)) {
        if (q % ell == 0 || std::binary_search(special.begin(), special.end(), ell)) continue;
        const double l = static_cast<double>(ell);
        if (ctx.bad_modulus() % ell == 0) {
            u64 pw = 0;
            bool fits = true;
            try {
                pw = checked_pow(ell, k);
            } catch (const Error&) {
                fits = false;
            }
            total += fits ? ctx.term(pw).get_d() : ctx.term_multiplier() * std::pow(l, -s) * l / (l - 1);
        } else {
            total += t1 * std::pow(l, -s) * l / (l - 1);
        }
    }
    total += 2 * t1 * prime_power_tail(s, static_cast<double>(explicit_limit));
    return total * (1 + 1e-9);
}

std::vector<DensityResult> density_limit_sequence(const IndexSetSpec& spec, DensityContext& ctx,
                                                  const std::vector<u64>& ladder) {
    if (ladder.empty()) fail(ErrorKind::InvalidArgument, "ladder must be nonempty");
    std::vector<DensityResult> out;
    u64 prev = 0;
    for (u64 q : ladder) {
        if (q == 0 || q <= prev) fail(ErrorKind::InvalidArgument, "ladder levels must be positive and increasing");
        prev = q;
        DensityResult res = density_finite_q(truncate_to_level(spec, q), ctx);
        res.method = Method::Limit;
        res.cutoffs["Q"] = static_cast<double>(q);
        res.cutoffs["omitted_tail"] = omitted_prime_tail(spec, ctx, q);
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace pindex
