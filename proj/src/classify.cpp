#include <algorithm>
#include <cmath>

#include "pindex/index_sets.hpp"

namespace pindex {

const char* to_string(ClassKind kind) noexcept {
    switch (kind) {
        case ClassKind::KlFree: return "KlFree";
        case ClassKind::VlFin: return "VlFin";
        case ClassKind::VlInf: return "VlInf";
        case ClassKind::FiniteQ: return "FiniteQ";
        case ClassKind::AlmostCut: return "AlmostCut";
        case ClassKind::Unsupported: return "Unsupported";
    }
    return "?";
}

mpq_class vlfin_alpha(u32 bounded_count, u32 k) {
    // ceil(log2(2N)) halves; N = 0 or 1 gives 1/2.
    u32 bits = 0;
    while ((1ULL << bits) < 2ULL * std::max<u32>(bounded_count, 1)) ++bits;
    mpq_class alpha(bits, 2);
    alpha.canonicalize();
    if (k >= 2) {
        mpq_class cap(k - 1, 2);
        cap.canonicalize();
        if (alpha >= mpq_class(k - 1)) alpha = cap;
    }
    return alpha;
}

namespace {

mpq_class vlfin_kappa(u32 k, const mpq_class& alpha) {
    mpq_class kappa = mpq_class(2, 3) * (1 - (alpha + 1) / mpq_class(k));
    kappa.canonicalize();
    return kappa;
}

// Best class for a family of local sets that all contain 0, given the
// minimum b_1 and the maximum number of bounded intervals.
ConvergenceClass cut_class(u32 min_b1, u32 max_bounded, bool all_finite_unions) {
    ConvergenceClass best;
    if (min_b1 == 0) return best;
    if (min_b1 != kInfinity && all_finite_unions) {
        u32 k = min_b1 + 1;
        mpq_class alpha = vlfin_alpha(max_bounded, k);
        if (mpq_class(k) > alpha + 1) {
            best.kind = ClassKind::VlFin;
            best.k = k;
            best.alpha = alpha;
            best.kappa = vlfin_kappa(k, alpha);
        }
    }
    if (min_b1 >= 2) {
        mpq_class third(1, 3);
        if (best.kind == ClassKind::Unsupported || third > best.kappa) {
            best = ConvergenceClass{};
            best.kind = ClassKind::VlInf;
            best.kappa = third;
        }
    }
    return best;
}

}  // namespace

ConvergenceClass classify(const IndexSetSpec& spec) {
    const ValuationSet& def = spec.default_vset();
    ConvergenceClass out;

    if (def.is_all()) {
        out.kind = ClassKind::FiniteQ;
        out.q = spec.q0();
        for (const auto& [ell, v] : spec.exceptions()) out.q *= ell;
        out.kappa = mpq_class(1, 2);
        return out;
    }
    if (!def.contains(1)) {
        out.kind = ClassKind::Unsupported;
        out.reason =
            "1 is excluded from the valuation set of all but finitely many primes (b_1 = 0); no unconditional "
            "theorem applies (Artin-type case, proven under GRH by Hooley)";
        return out;
    }

    bool cut = spec.q0() == 1;
    bool all_contain_zero = true;
    for (const auto& [ell, v] : spec.exceptions())
        if (!v.contains(0)) all_contain_zero = false;

    if (cut && all_contain_zero) {
        // k(ℓ)-free: every V_ℓ = [0, k(ℓ)-1].
        auto is_initial = [](const ValuationSet& v) {
            return v.intervals().size() == 1 && v.intervals()[0].lo == 0 && v.intervals()[0].bounded();
        };
        bool klfree = is_initial(def);
        u32 kmin = def.b1() + 1;
        u32 min_b1 = def.b1();
        u32 max_bounded = def.bounded_count();
        for (const auto& [ell, v] : spec.exceptions()) {
            if (!is_initial(v)) klfree = false;
            min_b1 = std::min(min_b1, v.b1());
        }
        if (klfree) {
            for (const auto& [ell, v] : spec.exceptions()) kmin = std::min(kmin, v.b1() + 1);
            out.kind = ClassKind::KlFree;
            out.k = kmin;
            out.kappa = 1 - mpq_class(1, kmin);
            out.kappa.canonicalize();
            return out;
        }
        // Finitely many exceptions do not change the growth of ∏ 2N_ℓ.
        ConvergenceClass c = cut_class(min_b1, max_bounded, true);
        if (c.supported()) return c;
    }

    // Almost cut: absorb Q0 and every exception prime into Q.
    ConvergenceClass inner = cut_class(def.b1(), def.bounded_count(), true);
    out.q = spec.q0();
    for (const auto& [ell, v] : spec.exceptions()) out.q *= ell;
    if (!inner.supported()) {
        out.kind = ClassKind::Unsupported;
        out.reason = "the part of H coprime to Q = " + std::to_string(out.q) +
                     " satisfies no convergence condition (needs 1 in V_l for all other primes)";
        return out;
    }
    out.kind = ClassKind::AlmostCut;
    out.inner = inner.kind;
    out.k = inner.k;
    out.alpha = inner.alpha;
    out.kappa = inner.kappa;
    return out;
}

}  // namespace pindex
