#include "pindex/tails.hpp"

#include <cmath>
#include <limits>

#include "pindex/error.hpp"

namespace pindex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr u64 kExplicitPrimes = 100000;
constexpr int kGrid = 48;
// Floating-point slack on top of the analytic bounds.
constexpr double kSlack = 1.0 + 1e-9;

// log ∏_ℓ P_ℓ(σ), or +∞ when the generic part diverges.
double log_euler_product(const SupportModel& model, u32 r, double sigma, const std::vector<u64>& small_primes) {
    const double tau = static_cast<double>(r) + 1.0 - sigma;
    double log_c = 0;
    for (const auto& [ell, vals] : model.special) {
        const double l = static_cast<double>(ell);
        double p = 0;
        for (u32 v : vals) {
            if (v == 0) {
                p += 1;
                continue;
            }
            // ℓ^{vσ} / (φ(ℓ^v) ℓ^{vr}) = ℓ^{-vτ} · ℓ/(ℓ−1)
            p += std::pow(l, -static_cast<double>(v) * tau) * l / (l - 1);
        }
        log_c += std::log(p);
    }
    if (model.generic.empty()) return log_c;
    for (u32 v : model.generic)
        if (v * tau <= 1) return kInf;
    for (u64 ell : small_primes) {
        if (model.special.count(ell)) continue;
        const double l = static_cast<double>(ell);
        double p = 1;
        for (u32 v : model.generic) p += std::pow(l, -static_cast<double>(v) * tau) * l / (l - 1);
        log_c += std::log(p);
    }
    // ℓ > P0: log P_ℓ ≤ Σ_v 2ℓ^{-vτ}, and Σ_{n>P0} n^{-vτ} ≤ P0^{1−vτ}/(vτ − 1).
    const double p0 = static_cast<double>(kExplicitPrimes);
    for (u32 v : model.generic) log_c += 2 * std::pow(p0, 1 - v * tau) / (v * tau - 1);
    return log_c;
}

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = sieve_primes(kExplicitPrimes);
    return primes;
}

double sigma_max(const SupportModel& model, u32 r) {
    double s = static_cast<double>(r) + 1.0;  // any σ < r + 1 is fine for the special primes alone
    for (u32 v : model.generic) s = std::min(s, static_cast<double>(r) + 1.0 - 1.0 / v);
    return s;
}

}  // namespace

double phi_power_tail(u32 r, double z) {
    if (r == 0) fail(ErrorKind::InvalidArgument, "r must be positive");
    const double e = static_cast<double>(r) - 0.5;
    return kSlack * std::sqrt(2.0) / e * std::pow(std::max(z, 1.0), -e);
}

double kfree_tail(u32 k, u32 r, double n) {
    const double alpha = static_cast<double>(k) * (r + 1) - 1;
    const double e = alpha - 0.5;
    return kSlack * std::sqrt(2.0) / e * std::pow(std::max(n, 1.0), -e);
}

double smooth_tail(const std::vector<u64>& primes, double t) {
    double c = 1;
    for (u64 p : primes) c /= 1 - 1 / std::sqrt(static_cast<double>(p));
    return kSlack * c / std::sqrt(std::max(t, 1.0));
}

double rankin_tail(const SupportModel& model, u32 r, double n, double* sigma_used) {
    const double smax = sigma_max(model, r);
    double best = kInf, best_sigma = 0;
    for (int j = 1; j < kGrid; ++j) {
        const double sigma = smax * j / kGrid;
        const double lc = log_euler_product(model, r, sigma, small_primes());
        if (!std::isfinite(lc)) continue;
        const double t = std::exp(lc - sigma * std::log(std::max(n, 1.0)));
        if (t < best) best = t, best_sigma = sigma;
    }
    if (sigma_used) *sigma_used = best_sigma;
    return kSlack * best;
}

double rankin_cutoff(const SupportModel& model, u32 r, double multiplier, double target) {
    const double smax = sigma_max(model, r);
    double best = kInf;
    for (int j = 1; j < kGrid; ++j) {
        const double sigma = smax * j / kGrid;
        const double lc = log_euler_product(model, r, sigma, small_primes());
        if (!std::isfinite(lc)) continue;
        // multiplier · e^{lc} · N^{-σ} ≤ target
        const double log_n = (std::log(multiplier * kSlack * kSlack) + lc - std::log(target)) / sigma;
        best = std::min(best, std::exp(std::max(log_n, 0.0)));
    }
    return best;
}

double prime_power_tail(double s, double p) {
    if (s <= 1) return kInf;
    return kSlack * std::pow(p, 1 - s) / (s - 1);
}

}  // namespace pindex
