#include "pindex/density.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "density_support.hpp"
#include "pindex/empirical.hpp"
#include "pindex/error.hpp"
#include "pindex/tails.hpp"

namespace pindex {

namespace detail {

std::vector<SupportTerm> special_terms(const IndexSetSpec& spec, u64 limit) {
    std::vector<SupportTerm> out;
    // Joint part at the primes of Q0: each coordinate ranges up to its largest breakpoint.
    const auto& qp = spec.q0_primes();
    std::vector<u32> top(qp.size(), 0);
    for (const Box& b : spec.boxes())
        for (std::size_t j = 0; j < qp.size(); ++j) top[j] = std::max(top[j], b.at(qp[j]).max_breakpoint());
    std::vector<u32> vals(qp.size(), 0);
    auto over = [&] { fail(ErrorKind::Overflow, "support element exceeds 64 bits"); };
    for (;;) {
        if (int g = spec.g_box(vals); g != 0) {
            u64 m = 1, phi = 1;
            bool fits = true;
            for (std::size_t j = 0; j < qp.size() && fits; ++j)
                for (u32 e = 0; e < vals[j] && fits; ++e) {
                    fits = mul_le(m, qp[j], limit, m);
                    phi *= e == 0 ? qp[j] - 1 : qp[j];
                }
            if (fits)
                out.push_back({m, phi, g});
            else if (limit == kUnbounded)
                over();
        }
        std::size_t j = 0;
        while (j < qp.size() && vals[j] == top[j]) vals[j++] = 0;
        if (j == qp.size()) break;
        ++vals[j];
    }
    for (const auto& [ell, v] : spec.exceptions()) {
        std::vector<SupportTerm> next;
        std::vector<Step> steps;
        if (v.contains(0)) steps.push_back({0, 1});
        for (const Step& s : generic_steps(v)) steps.push_back(s);
        for (const auto& t : out)
            for (const Step& s : steps) {
                u64 m = t.n, phi = t.phi;
                bool fits = true;
                for (u32 e = 0; e < s.v && fits; ++e) {
                    fits = mul_le(m, ell, limit, m);
                    phi *= e == 0 ? ell - 1 : ell;
                }
                if (fits)
                    next.push_back({m, phi, t.g * s.g});
                else if (limit == kUnbounded)
                    over();
            }
        out = std::move(next);
    }
    return out;
}

std::vector<Step> generic_steps(const ValuationSet& v) {
    std::vector<Step> out;
    for (u32 b : v.breakpoints())
        if (int g = v.g(b); g != 0) out.push_back({b, g});
    return out;
}

SupportModel support_model(const IndexSetSpec& spec, bool generic_only) {
    SupportModel model;
    for (u64 ell : spec.special_primes()) model.special[ell] = {0};
    if (!generic_only) {
        for (const auto& t : special_terms(spec, kUnbounded))
            for (u64 ell : spec.special_primes()) {
                auto& vals = model.special[ell];
                const u32 v = valuation(t.n, ell);
                if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
            }
        // A listed 0 means "ℓ ∤ n" is allowed; drop it where g vanishes at every such n.
        for (auto& [ell, vals] : model.special) {
            bool zero_used = false;
            for (const auto& t : special_terms(spec, kUnbounded))
                if (t.n % ell != 0) zero_used = true;
            if (!zero_used) vals.erase(std::remove(vals.begin(), vals.end(), 0u), vals.end());
        }
    }
    for (const Step& s : generic_steps(spec.default_vset())) model.generic.push_back(s.v);
    return model;
}

}  // namespace detail

using detail::generic_steps;
using detail::generic_walk;
using detail::kUnbounded;
using detail::special_terms;
using detail::support_model;

const char* to_string(Method m) noexcept {
    switch (m) {
        case Method::Auto: return "auto";
        case Method::Series: return "series";
        case Method::KFree: return "kfree";
        case Method::FiniteQ: return "finiteQ";
        case Method::AlmostCut: return "almostcut";
        case Method::Product: return "product";
        case Method::SinglePrime: return "single_prime";
        case Method::Limit: return "limit";
    }
    return "?";
}

Method parse_method(const std::string& name) {
    for (Method m : {Method::Auto, Method::Series, Method::KFree, Method::FiniteQ, Method::AlmostCut, Method::Product,
                     Method::SinglePrime, Method::Limit})
        if (name == to_string(m)) return m;
    fail(ErrorKind::Parse, "unknown method \"" + name +
                               "\" (expected auto, series, kfree, finiteQ, almostcut, product, single_prime or limit)");
}

void ValidationTally::add(Validation v) {
    switch (v) {
        case Validation::Confirmed: ++confirmed; break;
        case Validation::Mismatch: ++mismatch; break;
        case Validation::Inconclusive: ++inconclusive; break;
        case Validation::Skipped: ++skipped; break;
    }
}

DensityContext::DensityContext(RationalGroup group, FrobeniusCondition frob, DensityOptions options)
    : group_(std::move(group)), frob_(std::move(frob)), options_(options), cache_(options.oracle_budget) {
    bad_ = entanglement_bound(group_);
    for (u64 p : prime_divisors(frob_.conductor)) bad_ = lcm(bad_, p);
    // [ℚ(ζ_n, G^{1/n}):ℚ] ≥ φ(n) n^r / (2^r ∏ d_i), and c(n) ≤ [F : F ∩ K_{n,n}].
    multiplier_ = std::pow(2.0, group_.rank());
    for (u64 d : group_.elementary_divisors()) multiplier_ *= static_cast<double>(d);
}

mpq_class DensityContext::bad_part_term(u64 a) {
    if (auto it = memo_.find(a); it != memo_.end()) return it->second;
    const u64 m = lcm(frob_.conductor, a);
    const mpz_class deg = cache_.degree(group_, m, a);
    const u64 c = c_coefficient(frob_, group_, a);
    if (options_.validate_degrees && m > 1) tally_.add(cache_.validate(group_, m, a));
    mpq_class t(mpz_class(static_cast<unsigned long>(c)), deg);
    t.canonicalize();
    memo_.emplace(a, t);
    return t;
}

mpq_class DensityContext::term(u64 n) { return term(n, euler_phi(n)); }

mpq_class DensityContext::term(u64 n, u64 phi_n) {
    u64 a = 1, phi_a = 1;
    for (u64 p : prime_divisors(bad_)) {
        const u32 e = valuation(n, p);
        if (e == 0) continue;
        const u64 pe = checked_pow(p, e);
        a *= pe;
        phi_a *= pe / p * (p - 1);
    }
    mpq_class t = bad_part_term(a);
    const u64 b = n / a;
    if (b == 1) return t;
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), b, group_.rank());
    denom *= static_cast<unsigned long>(phi_n / phi_a);
    t /= denom;
    return t;
}

mpq_class DensityContext::term_direct(u64 n) {
    const u64 m = lcm(frob_.conductor, n);
    mpq_class t(mpz_class(static_cast<unsigned long>(c_coefficient(frob_, group_, n))), kummer_degree(group_, m, n));
    t.canonicalize();
    return t;
}

namespace {

ConvergenceClass guard(const IndexSetSpec& spec, const DensityContext& ctx) {
    ConvergenceClass cls = classify(spec);
    if (!cls.supported() && !ctx.options().allow_uncertified)
        fail(ErrorKind::Unsupported, "density of this set is not covered unconditionally: " + cls.reason +
                                         "; allow uncertified evaluation to compute the series anyway");
    return cls;
}

// Truncation tails get most of eps; the rest covers rounding in the sum.
double tail_budget(double eps) {
    if (!(eps > 0)) fail(ErrorKind::InvalidArgument, "eps must be positive");
    return eps * 0.999;
}

DensityResult finish(DensityResult res, const DensityContext& ctx) {
    res.validation = ctx.tally();
    res.certified = res.cls.supported() && ctx.tally().mismatch == 0;
    if (!res.cls.supported()) res.notes.push_back("uncertified: " + res.cls.reason);
    if (ctx.tally().mismatch)
        res.notes.push_back(std::to_string(ctx.tally().mismatch) + " degree(s) disagree with the Monte-Carlo oracle");
    return res;
}

DensityResult exact_result(mpq_class v, ConvergenceClass cls, Method method, const DensityContext& ctx) {
    DensityResult res;
    v.canonicalize();
    res.value = BoundedValue::exact(v);
    res.interval = RealInterval(v);
    res.cls = std::move(cls);
    res.method = method;
    return finish(std::move(res), ctx);
}

DensityResult interval_result(const RealInterval& iv, ConvergenceClass cls, Method method, const DensityContext& ctx) {
    DensityResult res;
    res.value = BoundedValue::from_interval(iv);
    res.interval = iv;
    res.cls = std::move(cls);
    res.method = method;
    return finish(std::move(res), ctx);
}

// Exact Σ g(n) T(n) over the finite support of a set whose default is everything.
mpq_class finite_sum(const IndexSetSpec& spec, DensityContext& ctx, u64* terms = nullptr) {
    mpq_class sum = 0;
    u64 count = 0;
    for (const auto& t : special_terms(spec, kUnbounded)) {
        sum += t.g * ctx.term(t.n, t.phi);
        ++count;
    }
    if (terms) *terms = count;
    return sum;
}

std::vector<u64> generic_primes(const IndexSetSpec& spec, double limit, u32 kmin) {
    const double top = std::floor(std::pow(limit, 1.0 / kmin) * (1 + 1e-12)) + 1;
    std::vector<u64> out;
    const auto special = spec.special_primes();
    for (u64 p : sieve_primes(static_cast<u64>(top)))
        if (!std::binary_search(special.begin(), special.end(), p)) out.push_back(p);
    return out;
}

u64 to_cutoff(double n, const DensityOptions& opts) {
    if (!(n <= opts.max_cutoff))
        fail(ErrorKind::Resource, "required truncation point " + std::to_string(n) + " exceeds the cap " +
                                      std::to_string(opts.max_cutoff) + "; loosen eps");
    return static_cast<u64>(std::ceil(n));
}

int max_special_g(const IndexSetSpec& spec) {
    int m = 1;
    for (const auto& t : special_terms(spec, kUnbounded)) m = std::max(m, std::abs(t.g));
    return m;
}

}  // namespace

DensityResult density_series(const IndexSetSpec& spec, DensityContext& ctx, double eps) {
    const double budget = tail_budget(eps);
    ConvergenceClass cls = guard(spec, ctx);
    const u32 r = ctx.group().rank();
    const auto model = support_model(spec);
    if (model.generic.empty()) {
        u64 terms = 0;
        mpq_class v = finite_sum(spec, ctx, &terms);
        DensityResult res = exact_result(v, cls, Method::Series, ctx);
        res.cutoffs["terms"] = static_cast<double>(terms);
        return res;
    }
    const double mult = ctx.term_multiplier() * max_special_g(spec);
    const double e = static_cast<double>(r) - 0.5;
    const double n_plain = std::pow(mult * std::sqrt(2.0) / (e * budget), 1.0 / e);
    const double n_rankin = rankin_cutoff(model, r, mult, budget);
    const u64 cutoff = to_cutoff(std::min(n_plain, n_rankin), ctx.options());

    const auto steps = generic_steps(spec.default_vset());
    const auto primes = generic_primes(spec, static_cast<double>(cutoff), steps.front().v);
    RealInterval sum(0.0);
    u64 terms = 0;
    for (const auto& m : special_terms(spec, cutoff))
        terms += generic_walk(primes, steps, cutoff / m.n, [&](u64 b, u64 phi_b, int gb) {
            sum += RealInterval(mpq_class(m.g * gb) * ctx.term(m.n * b, m.phi * phi_b));
        });
    double sigma = 0;
    const double tail = mult * std::min(rankin_tail(model, r, static_cast<double>(cutoff), &sigma),
                                        phi_power_tail(r, static_cast<double>(cutoff)));
    DensityResult res = interval_result(sum.widen(tail), cls, Method::Series, ctx);
    res.cutoffs["N"] = static_cast<double>(cutoff);
    res.cutoffs["terms"] = static_cast<double>(terms);
    res.cutoffs["tail"] = tail;
    res.cutoffs["sigma"] = sigma;
    return res;
}

DensityResult density_klfree(const std::map<u64, u32>& kmap, u32 default_k, DensityContext& ctx, double eps) {
    const double budget = tail_budget(eps);
    u32 kmin = default_k;
    for (const auto& [ell, k] : kmap) kmin = std::min(kmin, k);
    if (kmin < 2)
        fail(ErrorKind::Unsupported,
             "k(ℓ) = 1 makes the set contain only indices coprime to ℓ; its density is only known under GRH");
    const IndexSetSpec spec = sets::klfree(kmap, default_k);
    ConvergenceClass cls = guard(spec, ctx);
    const u32 r = ctx.group().rank();
    const double mult = ctx.term_multiplier();
    const double e = static_cast<double>(kmin) * (r + 1) - 1.5;
    const u64 cutoff = to_cutoff(std::pow(mult * std::sqrt(2.0) / (e * budget), 1.0 / e), ctx.options());

    auto k_of = [&](u64 ell) {
        auto it = kmap.find(ell);
        return it == kmap.end() ? default_k : it->second;
    };
    RealInterval sum(0.0);
    const u64 terms = generic_walk(sieve_primes(cutoff), {{1, -1}}, cutoff, [&](u64 n, u64, int mu) {
        u64 f = 1;
        for (const auto& pp : factorize(n)) f = checked_mul(f, checked_pow(pp.prime, k_of(pp.prime)));
        sum += RealInterval(mpq_class(mu) * ctx.term(f));
    });
    const double tail = mult * kfree_tail(kmin, r, static_cast<double>(cutoff));
    DensityResult res = interval_result(sum.widen(tail), cls, Method::KFree, ctx);
    res.cutoffs["N"] = static_cast<double>(cutoff);
    res.cutoffs["terms"] = static_cast<double>(terms);
    res.cutoffs["tail"] = tail;
    return res;
}

DensityResult density_kfree(u32 k, DensityContext& ctx, double eps) { return density_klfree({}, k, ctx, eps); }

DensityResult density_finite_q(const IndexSetSpec& spec, DensityContext& ctx) {
    if (!spec.default_vset().is_all())
        fail(ErrorKind::InvalidArgument, "the finiteQ route needs every prime outside Q to be unconstrained");
    ConvergenceClass cls = guard(spec, ctx);
    u64 terms = 0;
    mpq_class v = finite_sum(spec, ctx, &terms);
    DensityResult res = exact_result(v, cls, Method::FiniteQ, ctx);
    res.cutoffs["Q"] = static_cast<double>(cls.q);
    res.cutoffs["terms"] = static_cast<double>(terms);
    return res;
}

DensityResult density_single_prime(u64 ell, const ValuationSet& v, DensityContext& ctx) {
    const IndexSetSpec spec = sets::single_prime(ell, v);
    ConvergenceClass cls = guard(spec, ctx);
    mpq_class value = 0;
    if (ctx.bad_modulus() % ell != 0) {
        value = ctx.term(1) * local_factor(v, ctx.group().rank(), ell);
    } else {
        // Σ_{v∈V} T(ℓ^v) − T(ℓ^{v+1}) telescopes over each interval.
        for (const auto& iv : v.intervals()) {
            value += ctx.term(checked_pow(ell, iv.lo));
            if (iv.bounded()) value -= ctx.term(checked_pow(ell, iv.hi + 1));
        }
    }
    return exact_result(value, cls, Method::SinglePrime, ctx);
}

DensityResult density_almostcut(const IndexSetSpec& spec, DensityContext& ctx, double eps) {
    const double budget = tail_budget(eps);
    ConvergenceClass cls = guard(spec, ctx);
    const u32 r = ctx.group().rank();
    const auto outer = special_terms(spec, kUnbounded);
    if (spec.default_vset().is_all()) {
        DensityResult res = exact_result(finite_sum(spec, ctx), cls, Method::AlmostCut, ctx);
        res.cutoffs["outer_terms"] = static_cast<double>(outer.size());
        return res;
    }
    // Σ_m |g(m)| / (φ(m) m^r) over the outer support.
    double outer_mass = 0;
    for (const auto& t : outer)
        outer_mass += std::abs(t.g) / (static_cast<double>(t.phi) * std::pow(static_cast<double>(t.n), r));
    outer_mass *= 1 + 1e-9;
    const auto inner_model = support_model(spec, true);
    const double mult = ctx.term_multiplier() * outer_mass;
    const double e = static_cast<double>(r) - 0.5;
    const double n_plain = std::pow(mult * std::sqrt(2.0) / (e * budget), 1.0 / e);
    const u64 cutoff = to_cutoff(std::min(n_plain, rankin_cutoff(inner_model, r, mult, budget)), ctx.options());

    const auto steps = generic_steps(spec.default_vset());
    const auto primes = generic_primes(spec, static_cast<double>(cutoff), steps.front().v);
    RealInterval sum(0.0);
    u64 terms = 0;
    auto inner_tail = [&](double z) {
        return std::min(rankin_tail(inner_model, r, z), phi_power_tail(r, z));
    };
    // Products m·b beyond 64 bits are dropped and bounded like the inner tail.
    double capped = 0;
    for (const auto& m : outer) {
        const u64 limit = std::min(cutoff, std::numeric_limits<u64>::max() / m.n);
        if (limit < cutoff)
            capped += ctx.term_multiplier() * std::abs(m.g) /
                      (static_cast<double>(m.phi) * std::pow(static_cast<double>(m.n), r)) *
                      inner_tail(static_cast<double>(limit));
        terms += generic_walk(primes, steps, limit, [&](u64 b, u64 phi_b, int gb) {
            sum += RealInterval(mpq_class(m.g * gb) * ctx.term(m.n * b, m.phi * phi_b));
        });
    }
    const double tail = mult * inner_tail(static_cast<double>(cutoff)) + capped * (1 + 1e-9);
    DensityResult res = interval_result(sum.widen(tail), cls, Method::AlmostCut, ctx);
    res.cutoffs["Q"] = static_cast<double>(cls.q);
    res.cutoffs["outer_terms"] = static_cast<double>(outer.size());
    res.cutoffs["N_inner"] = static_cast<double>(cutoff);
    res.cutoffs["terms"] = static_cast<double>(terms);
    res.cutoffs["tail"] = tail;
    return res;
}

namespace {

bool kfree_shape(const IndexSetSpec& spec, std::map<u64, u32>& kmap, u32& k) {
    auto k_of = [](const ValuationSet& v) -> u32 {
        const auto& iv = v.intervals();
        if (iv.size() != 1 || iv[0].lo != 0 || !iv[0].bounded()) return 0;
        return iv[0].hi + 1;
    };
    if (spec.q0() != 1) return false;
    k = k_of(spec.default_vset());
    if (k < 2) return false;
    for (const auto& [ell, v] : spec.exceptions()) {
        const u32 kl = k_of(v);
        if (kl < 2) return false;
        kmap[ell] = kl;
    }
    return true;
}

}  // namespace

namespace {

DensityResult dispatch(const IndexSetSpec& spec, DensityContext& ctx, double eps, Method method) {
    if (method == Method::Auto) {
        const ConvergenceClass cls = classify(spec);
        switch (cls.kind) {
            case ClassKind::FiniteQ: method = Method::FiniteQ; break;
            case ClassKind::AlmostCut: method = Method::AlmostCut; break;
            default: method = Method::Series; break;
        }
    }
    switch (method) {
        case Method::Series: return density_series(spec, ctx, eps);
        case Method::KFree: {
            std::map<u64, u32> kmap;
            u32 k = 0;
            if (!kfree_shape(spec, kmap, k))
                fail(ErrorKind::InvalidArgument, "the kfree route needs a k-free or k(ℓ)-free set");
            return density_klfree(kmap, k, ctx, eps);
        }
        case Method::FiniteQ: return density_finite_q(spec, ctx);
        case Method::AlmostCut: return density_almostcut(spec, ctx, eps);
        case Method::Product: return density_product(spec, ctx, eps);
        case Method::SinglePrime: {
            if (spec.q0_primes().size() != 1 || spec.boxes().size() != 1 || !spec.default_vset().is_all() ||
                !spec.exceptions().empty())
                fail(ErrorKind::InvalidArgument, "the single_prime route needs a set constrained at one prime only");
            const u64 ell = spec.q0_primes().front();
            return density_single_prime(ell, spec.boxes().front().at(ell), ctx);
        }
        case Method::Limit: {
            std::vector<u64> ladder;
            u64 q = 1;
            for (u64 p : sieve_primes(13)) ladder.push_back(q *= p);
            auto seq = density_limit_sequence(spec, ctx, ladder);
            return seq.back();
        }
        case Method::Auto: break;
    }
    fail(ErrorKind::InvalidArgument, "unknown method");
}

}  // namespace

DensityResult density(const IndexSetSpec& spec, DensityContext& ctx, double eps, Method method) {
    DensityResult res = dispatch(spec, ctx, eps, method);
    res.subject = subject_key(ctx.group(), spec, ctx.frob());
    return res;
}

}  // namespace pindex
