#include <string>

#include "pindex/error.hpp"
#include "pindex/kummer.hpp"

namespace pindex {

namespace {

// |disc(ℚ(√x))| for squarefree x ≠ 1.
u64 abs_disc(i64 x) {
    u64 ax = x < 0 ? static_cast<u64>(-x) : static_cast<u64>(x);
    return reduce_mod(x, 4) == 1 ? ax : checked_mul(4, ax);
}

// Signed fundamental discriminant of ℚ(√x).
i64 fundamental_disc(i64 x) { return reduce_mod(x, 4) == 1 ? x : 4 * x; }

// Candidate b = s · d^{2^{e-1}} with d0 the squarefree class of d, e = v_2(n) ≥ 1.
// True when b is a 2^e-th power in ℚ(ζ_m); requires 2^e | m.
bool two_power_in_cyclotomic(bool negative, u64 d0, u32 e, u64 m) {
    if (e == 1) {
        i64 x = negative ? -static_cast<i64>(d0) : static_cast<i64>(d0);
        return x == 1 || m % abs_disc(x) == 0;
    }
    const u64 pe1 = 1ULL << (e + 1);
    if (!negative || m % pe1 == 0) return d0 == 1 || m % abs_disc(static_cast<i64>(d0)) == 0;
    // b = -d^{2^{e-1}} is a 2^e-th power iff ζ_{2^e}·d is a square in ℚ(ζ_m),
    // i.e. √d0 generates ℚ(ζ_{2m}) over ℚ(ζ_m).
    if (d0 == 1) return false;
    const u64 D = abs_disc(static_cast<i64>(d0));
    if ((2 * m) % D != 0) return false;
    u64 odd = m;
    while (odd % 2 == 0) odd /= 2;
    const u64 t = 1 + checked_mul(odd, 1ULL << e);
    return jacobi(fundamental_disc(static_cast<i64>(d0)), t) == -1;
}

struct TwoPartElement {
    bool negative;
    u64 d0;
};

// The r combinations ε ∈ {0,1}^r of w_i = (2^{e-1}/g_i) u_i, as candidates.
std::vector<TwoPartElement> two_part_candidates(const RationalGroup& g, u32 e) {
    const u32 r = g.rank();
    const u64 half = 1ULL << (e - 1);
    const auto& basis = g.basis_exponents();
    const auto& d = g.elementary_divisors();
    const auto& support = g.support();
    std::vector<TwoPartElement> out;
    for (u64 mask = 0; mask < (1ULL << r); ++mask) {
        std::vector<__int128> v(support.size(), 0);
        int sign = 0;
        for (u32 i = 0; i < r; ++i) {
            if (!(mask >> i & 1)) continue;
            const u64 gi = gcd(d[i], half);
            const u64 w = half / gi;
            for (std::size_t j = 0; j < support.size(); ++j) v[j] += static_cast<__int128>(w) * basis[i][j];
            sign ^= static_cast<int>((w & 1) & static_cast<u64>(g.basis_signs()[i]));
        }
        u64 d0 = 1;
        for (std::size_t j = 0; j < support.size(); ++j) {
            __int128 dj = v[j] / static_cast<__int128>(half);
            if (dj % 2 != 0) d0 = checked_mul(d0, support[j]);
        }
        out.push_back({sign != 0, d0});
    }
    return out;
}

void require_divides(u64 m, u64 n) {
    if (n == 0 || m == 0 || m % n != 0)
        fail(ErrorKind::InvalidArgument, "degree requires n | m (n = " + std::to_string(n) + ", m = " + std::to_string(m) + ")");
}

}  // namespace

mpz_class kummer_defect(const RationalGroup& g, u64 m, u64 n) {
    require_divides(m, n);
    mpz_class s = 1;
    const auto& d = g.elementary_divisors();
    for (const auto& pp : factorize(n)) {
        if (pp.prime == 2) continue;
        const u64 qe = checked_pow(pp.prime, pp.exponent);
        for (u64 di : d) s *= static_cast<unsigned long>(gcd(di, qe));
    }
    const u32 e = valuation(n, 2);
    if (e >= 1) {
        const u64 half = 1ULL << (e - 1);
        mpz_class k_over_2r = 1;
        for (u64 di : d) k_over_2r *= static_cast<unsigned long>(gcd(di, half));
        u64 passing = 0;
        for (const auto& c : two_part_candidates(g, e))
            if (two_power_in_cyclotomic(c.negative, c.d0, e, m)) ++passing;
        s *= k_over_2r * static_cast<unsigned long>(passing);
    }
    return s;
}

mpz_class kummer_degree(const RationalGroup& g, u64 m, u64 n) {
    require_divides(m, n);
    mpz_class deg = static_cast<unsigned long>(euler_phi(m));
    mpz_class nr;
    mpz_ui_pow_ui(nr.get_mpz_t(), n, g.rank());
    deg *= nr;
    mpz_class s = kummer_defect(g, m, n);
    if (deg % s != 0) fail(ErrorKind::Domain, "internal: defect does not divide the generic degree");
    return deg / s;
}

u64 degree_rank1(const mpq_class& a_in, u64 m, u64 n) {
    mpq_class a = a_in;
    a.canonicalize();
    if (a == 0 || a == 1 || a == -1) fail(ErrorKind::Domain, "degree_rank1 requires a ∉ {0, ±1}");
    require_divides(m, n);
    const bool negative = a < 0;
    const u64 num = mpz_class(abs(a.get_num())).get_ui();
    const u64 den = a.get_den().get_ui();
    // a = ±a0^h with h the gcd of all exponents.
    const auto fn = factorize(num), fd = factorize(den);
    u64 h = 0;
    for (const auto& pp : fn) h = gcd(h, pp.exponent);
    for (const auto& pp : fd) h = gcd(h, pp.exponent);
    u64 sqf_a0 = 1;
    for (const auto& pp : fn)
        if ((pp.exponent / h) % 2) sqf_a0 *= pp.prime;
    for (const auto& pp : fd)
        if ((pp.exponent / h) % 2) sqf_a0 *= pp.prime;

    const u64 generic = checked_mul(euler_phi(m), n);
    const u32 e = valuation(n, 2);
    if (e == 0) return generic / gcd(h, n);
    const u64 half = 1ULL << (e - 1);
    const u64 g2 = gcd(h, half);
    const bool s = negative && (half / g2) % 2 == 1;
    const u64 d0 = ((h / g2) % 2 == 1) ? sqf_a0 : 1;
    const u64 corr = gcd(h, n / 2) * (two_power_in_cyclotomic(s, d0, e, m) ? 2 : 1);
    return generic / corr;
}

mpz_class frobenius_degree(const FrobeniusCondition& frob, const RationalGroup& g, u64 n) {
    const u64 m = lcm(frob.conductor, n);
    return kummer_degree(g, m, n);
}

u64 c_coefficient(const FrobeniusCondition& frob, const RationalGroup& g, u64 n) {
    if (n == 0) fail(ErrorKind::InvalidArgument, "c(n) requires n >= 1");
    if (frob.is_trivial()) return 1;
    if (g.rank() >= 2)
        fail(ErrorKind::Unsupported, "c(n) with a nontrivial Frobenius condition is only supported for rank 1");
    const u64 f = frob.conductor;
    const u64 m = lcm(f, n);
    const u32 e = valuation(n, 2);

    // Roots of 2-part candidates lying in ℚ(ζ_m) impose character conditions
    // on t ∈ Gal(ℚ(ζ_m)/ℚ(ζ_n)).
    struct Condition {
        bool eps;
        i64 disc;
    };
    std::vector<Condition> conds;
    if (e >= 1)
        for (const auto& c : two_part_candidates(g, e)) {
            if (!two_power_in_cyclotomic(c.negative, c.d0, e, m)) continue;
            if (!c.negative && c.d0 == 1) continue;
            conds.push_back({c.negative, c.d0 == 1 ? 1 : fundamental_disc(static_cast<i64>(c.d0))});
        }
    const u64 mod2e1 = 1ULL << (e + 1);
    std::vector<bool> reached(f, false);
    for (u64 j = 0; j < m / n; ++j) {
        const u64 t = 1 + n * j;
        if (gcd(t, m) != 1) continue;
        bool fixed = true;
        for (const auto& c : conds) {
            int v = c.disc == 1 ? 1 : jacobi(c.disc, t);
            if (c.eps && t % mod2e1 != 1) v = -v;
            if (v != 1) {
                fixed = false;
                break;
            }
        }
        if (fixed) reached[t % f] = true;
    }
    u64 count = 0;
    for (u64 c : frob.residues)
        if (reached[c % f]) ++count;
    return count;
}

u64 entanglement_bound(const RationalGroup& g) {
    u64 b = 2;
    const auto& ex = g.exponents();
    for (std::size_t j = 0; j < g.support().size(); ++j) {
        const u64 p = g.support()[j];
        bool odd = false;
        for (const auto& row : ex)
            if (row[j] % 2 != 0) odd = true;
        if (odd && b % p != 0) b = checked_mul(b, p);
    }
    for (u64 d : g.elementary_divisors())
        for (u64 q : prime_divisors(d))
            if (b % q != 0) b = checked_mul(b, q);
    return b;
}

}  // namespace pindex
