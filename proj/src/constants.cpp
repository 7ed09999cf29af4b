#include "pindex/constants.hpp"

#include <algorithm>
#include <cmath>

#include "pindex/error.hpp"

namespace pindex {

namespace {

mpq_class inv_pow(u64 ell, u64 e) {
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), ell, e);
    return mpq_class(1, d);
}

// Σ_{v=a}^{b} E_{v,r}(ℓ) for 1 ≤ a ≤ b: (ℓ/(ℓ−1))(x^a − x^{b+1}) with x = ℓ^{-(r+1)}.
mpq_class positive_run(u32 a, u32 b, u32 r, u64 ell) {
    mpq_class s = inv_pow(ell, static_cast<u64>(a) * (r + 1));
    if (b != kInfinity) s -= inv_pow(ell, (static_cast<u64>(b) + 1) * (r + 1));
    mpq_class out = s * mpq_class(ell, ell - 1);
    out.canonicalize();
    return out;
}

struct Product {
    RealInterval value{1.0};
    u64 cutoff = 0;
};

// ∏_{ℓ ≤ L, ℓ ∤ b} A_{V_ℓ,r}(ℓ) times the bracket for ℓ > L.
Product truncated(const IndexSetSpec& spec, u32 r, u64 b, u64 cutoff, TailMode mode) {
    const ValuationSet& dflt = spec.default_vset();
    Product out;
    out.cutoff = cutoff;
    for (u64 ell : sieve_primes(cutoff)) {
        if (b % ell == 0) continue;
        const ValuationSet v = local_vset(spec, ell);
        if (v.is_all()) continue;
        out.value *= RealInterval(local_factor(v, r, ell));
    }
    const u64 k = dflt.min_missing();
    const u64 s = k * (r + 1);
    const double L = static_cast<double>(cutoff);
    if (mode == TailMode::Sharpened) {
        // For ℓ ≥ 1000 the factor 1 − δ_ℓ satisfies |log((1−δ_ℓ) / ((1−ℓ^{-s})(1−ℓ^{-s-1})))| ≤ 6ℓ^{-s-2},
        // so the tail is Z_L·exp(±6U) with U = L^{-s-1}/(s+1).
        RealInterval z = zeta_interval(s) * zeta_interval(s + 1);
        for (u64 ell : sieve_primes(cutoff)) {
            RealInterval a(inv_pow(ell, s)), c(inv_pow(ell, s + 1));
            RealInterval one(1.0);
            z *= (one - a) * (one - c);
        }
        // Primes ℓ ≤ L dividing b contribute nothing on either side.
        RealInterval tail = RealInterval(1.0) / z;
        const double u = 6.0 * std::pow(L, -static_cast<double>(s + 1)) / static_cast<double>(s + 1);
        RealInterval spread = RealInterval::hull(-std::nextafter(u, INFINITY), std::nextafter(u, INFINITY)).exp();
        out.value *= tail * spread;
    } else {
        // −log(1 − δ) ≤ δ/(1 − δ) with δ ≤ 2ℓ^{-s}; Σ_{n>L} 2n^{-s} ≤ 2L^{1-s}/(s−1).
        const double ls = std::pow(L, -static_cast<double>(s));
        const double t = 2.0 * std::pow(L, 1.0 - static_cast<double>(s)) / (static_cast<double>(s) - 1.0) / (1.0 - 2.0 * ls);
        RealInterval spread = RealInterval::hull(-std::nextafter(t, INFINITY), 0.0).exp();
        out.value *= spread;
    }
    return out;
}

void require_r(u32 r) {
    if (r == 0) fail(ErrorKind::InvalidArgument, "rank r must be positive");
}

ConstantResult finish(const IndexSetSpec& spec, u32 r, u64 b, const Product& p, TailMode mode,
                      const ConvergenceClass& cls) {
    ConstantResult res;
    res.interval = p.value;
    res.value = BoundedValue::from_interval(p.value);
    res.cutoff = p.cutoff;
    res.tail = mode;
    res.certified = cls.supported();
    if (!res.certified) res.note = "uncertified: " + cls.reason;
    for (u64 ell : spec.special_primes())
        if (b % ell != 0) res.special_factors.emplace_back(ell, local_factor(local_vset(spec, ell), r, ell));
    return res;
}

ConvergenceClass check_class(const IndexSetSpec& spec, const ConstantOptions& options) {
    ConvergenceClass cls = classify(spec);
    if (!cls.supported() && !options.allow_uncertified)
        fail(ErrorKind::Unsupported, "constant requested for an unsupported set (" + cls.reason +
                                         "); request an uncertified constant to evaluate it anyway");
    return cls;
}

std::optional<ConstantResult> exact_case(const IndexSetSpec& spec, u32 r, u64 b, const ConvergenceClass& cls) {
    if (!spec.default_vset().is_all()) return std::nullopt;
    mpq_class prod = 1;
    for (u64 ell : spec.special_primes())
        if (b % ell != 0) prod *= local_factor(local_vset(spec, ell), r, ell);
    ConstantResult res;
    res.interval = RealInterval(prod);
    res.value = BoundedValue::exact(prod);
    res.certified = cls.supported();
    if (!res.certified) res.note = "uncertified: " + cls.reason;
    for (u64 ell : spec.special_primes())
        if (b % ell != 0) res.special_factors.emplace_back(ell, local_factor(local_vset(spec, ell), r, ell));
    return res;
}

// Every prime above the cutoff must follow the default rule and not divide b.
u64 initial_cutoff(const IndexSetSpec& spec, const ConstantOptions& options, u64 b) {
    u64 l = std::max<u64>(options.min_cutoff, 1000);
    for (u64 p : spec.special_primes()) l = std::max(l, p);
    for (u64 p : prime_divisors(b)) l = std::max(l, p);
    return l;
}

ConstantResult search(const IndexSetSpec& spec, u32 r, u64 b, double target, const ConstantOptions& options) {
    require_r(r);
    if (!(target > 0)) fail(ErrorKind::InvalidArgument, "target error must be positive");
    const ConvergenceClass cls = check_class(spec, options);
    if (auto e = exact_case(spec, r, b, cls)) return *e;
    for (u64 l = initial_cutoff(spec, options, b);; l *= 2) {
        if (l > options.max_cutoff)
            fail(ErrorKind::Resource, "target error " + std::to_string(target) + " not reached below the prime cutoff cap " +
                                          std::to_string(options.max_cutoff));
        Product p = truncated(spec, r, b, l, options.tail);
        if (p.value.radius_up() <= target) return finish(spec, r, b, p, options.tail, cls);
    }
}

}  // namespace

const char* to_string(TailMode mode) noexcept { return mode == TailMode::Sharpened ? "sharpened" : "plain"; }

mpq_class local_density(u32 v, u32 r, u64 ell) {
    require_r(r);
    if (!is_prime(ell)) fail(ErrorKind::InvalidArgument, std::to_string(ell) + " is not prime");
    if (v == 0) {
        mpq_class out = 1 - inv_pow(ell, r) * mpq_class(1, ell - 1);
        out.canonicalize();
        return out;
    }
    return positive_run(v, v, r, ell);
}

mpq_class local_factor(const ValuationSet& v, u32 r, u64 ell) {
    require_r(r);
    if (!is_prime(ell)) fail(ErrorKind::InvalidArgument, std::to_string(ell) + " is not prime");
    mpq_class sum = 0;
    for (const auto& iv : v.intervals()) {
        u32 a = iv.lo;
        if (a == 0) {
            sum += local_density(0, r, ell);
            if (iv.hi == 0) continue;
            a = 1;
        }
        sum += positive_run(a, iv.hi, r, ell);
    }
    sum.canonicalize();
    return sum;
}

ValuationSet local_vset(const IndexSetSpec& spec, u64 ell) {
    if (spec.q0() % ell != 0) return spec.vset_for(ell);
    std::vector<Interval> all;
    for (const Box& b : spec.boxes()) {
        const auto& iv = b.at(ell).intervals();
        all.insert(all.end(), iv.begin(), iv.end());
    }
    return ValuationSet::from_intervals(std::move(all));
}

ConstantResult global_constant(const IndexSetSpec& spec, u32 r, double target_error, const ConstantOptions& options) {
    return search(spec, r, 1, target_error, options);
}

ConstantResult global_constant_away_from(const IndexSetSpec& spec, u32 r, u64 b, double target_error,
                                         const ConstantOptions& options) {
    if (b == 0) fail(ErrorKind::InvalidArgument, "b must be positive");
    return search(spec, r, b, target_error, options);
}

ConstantResult global_constant_at(const IndexSetSpec& spec, u32 r, u64 cutoff, const ConstantOptions& options) {
    require_r(r);
    const ConvergenceClass cls = check_class(spec, options);
    if (auto e = exact_case(spec, r, 1, cls)) return *e;
    return finish(spec, r, 1, truncated(spec, r, 1, std::max(cutoff, initial_cutoff(spec, options, 1)), options.tail),
                  options.tail, cls);
}

}  // namespace pindex
