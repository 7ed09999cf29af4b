#include <algorithm>
#include <regex>
#include <set>

#include "pindex/error.hpp"
#include "pindex/kummer.hpp"

namespace pindex {

namespace {

mpq_class parse_rational(const std::string& text) {
    static const std::regex re(R"(\s*([+-]?)0*(\d+)(?:/0*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) fail(ErrorKind::Parse, "not a rational number: \"" + text + "\"");
    std::string s = (m[1] == "-" ? "-" : "") + m[2].str();
    if (m[3].matched) s += "/" + m[3].str();
    mpq_class q(s, 10);
    if (q.get_den() == 0) fail(ErrorKind::Parse, "zero denominator in \"" + text + "\"");
    q.canonicalize();
    return q;
}

u64 to_u64(const mpz_class& z, const std::string& what) {
    mpz_class a = abs(z);
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 63) fail(ErrorKind::Validation, what + " exceeds 63 bits");
    return static_cast<u64>(a.get_ui());
}

using Matrix = std::vector<std::vector<mpz_class>>;

// Row-tracked Smith normal form: on return a = P·M·Q is diagonal with
// a[t][t] | a[t+1][t+1]; p holds P.
void smith(Matrix& a, Matrix& p) {
    const std::size_t r = a.size(), s = r ? a[0].size() : 0;
    p.assign(r, std::vector<mpz_class>(r, 0));
    for (std::size_t i = 0; i < r; ++i) p[i][i] = 1;
    auto row_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
        for (std::size_t j = 0; j < s; ++j) a[dst][j] += k * a[src][j];
        for (std::size_t j = 0; j < r; ++j) p[dst][j] += k * p[src][j];
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const mpz_class& k) {
        for (std::size_t i = 0; i < r; ++i) a[i][dst] += k * a[i][src];
    };
    for (std::size_t t = 0; t < std::min(r, s); ++t) {
        for (;;) {
            // Smallest nonzero pivot in the trailing block.
            std::size_t bi = r, bj = s;
            for (std::size_t i = t; i < r; ++i)
                for (std::size_t j = t; j < s; ++j)
                    if (a[i][j] != 0 && (bi == r || abs(a[i][j]) < abs(a[bi][bj]))) bi = i, bj = j;
            if (bi == r) return;
            std::swap(a[t], a[bi]);
            std::swap(p[t], p[bi]);
            for (std::size_t i = 0; i < r; ++i) std::swap(a[i][t], a[i][bj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a[i][t] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_add(i, t, -q);
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < s; ++j) {
                if (a[t][j] == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_add(j, t, -q);
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility of the trailing block by the pivot.
            std::size_t bad = r;
            for (std::size_t i = t + 1; i < r && bad == r; ++i)
                for (std::size_t j = t + 1; j < s; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == r) break;
            row_add(t, bad, 1);
        }
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < s; ++j) a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < r; ++j) p[t][j] = -p[t][j];
        }
    }
}

}  // namespace

RationalGroup RationalGroup::from_strings(const std::vector<std::string>& generators) {
    std::vector<mpq_class> qs;
    for (const auto& s : generators) qs.push_back(parse_rational(s));
    return from_rationals(std::move(qs));
}

RationalGroup RationalGroup::from_rationals(std::vector<mpq_class> generators) {
    if (generators.empty()) fail(ErrorKind::Validation, "group needs at least one generator");
    RationalGroup g;
    std::set<u64> primes;
    for (auto& q : generators) {
        q.canonicalize();
        if (q == 0 || q == 1 || q == -1)
            fail(ErrorKind::Validation, "generator " + q.get_str() + " must be nonzero and different from ±1");
        u64 num = to_u64(q.get_num(), "numerator of " + q.get_str());
        u64 den = to_u64(q.get_den(), "denominator of " + q.get_str());
        g.num_.push_back(num);
        g.den_.push_back(den);
        g.signs_.push_back(q < 0 ? 1 : 0);
        for (u64 p : prime_divisors(num)) primes.insert(p);
        for (u64 p : prime_divisors(den)) primes.insert(p);
    }
    g.generators_ = std::move(generators);
    g.support_.assign(primes.begin(), primes.end());

    const std::size_t r = g.generators_.size(), s = g.support_.size();
    Matrix m(r, std::vector<mpz_class>(s, 0));
    g.exponents_.assign(r, std::vector<i64>(s, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < s; ++j) {
            i64 e = static_cast<i64>(valuation(g.num_[i], g.support_[j])) -
                    static_cast<i64>(valuation(g.den_[i], g.support_[j]));
            g.exponents_[i][j] = e;
            m[i][j] = e;
        }

    Matrix a = m, p;
    smith(a, p);
    std::size_t rank = 0;
    while (rank < std::min(r, s) && a[rank][rank] != 0) ++rank;
    if (rank < r) {
        // Rows of P beyond the rank span the relations ∏ g_j^{x_j} = ±1.
        for (std::size_t i = rank; i < r; ++i) {
            mpz_class sign = 0;
            for (std::size_t j = 0; j < r; ++j) sign += p[i][j] * g.signs_[j];
            if (mpz_odd_p(sign.get_mpz_t()))
                fail(ErrorKind::Validation, "group has torsion: some product of generators equals -1");
        }
        std::string rel;
        for (std::size_t j = 0; j < r; ++j) {
            if (p[rank][j] == 0) continue;
            if (!rel.empty()) rel += " * ";
            rel += "(" + g.generators_[j].get_str() + ")^" + p[rank][j].get_str();
        }
        fail(ErrorKind::Validation, "generators are dependent: " + rel + " = 1");
    }

    for (std::size_t i = 0; i < r; ++i) {
        g.d_.push_back(to_u64(a[i][i], "elementary divisor"));
        std::vector<i64> row(s, 0);
        for (std::size_t j = 0; j < s; ++j) {
            mpz_class v = 0;
            for (std::size_t k = 0; k < r; ++k) v += p[i][k] * m[k][j];
            if (!v.fits_slong_p()) fail(ErrorKind::Validation, "exponent overflow in group basis");
            row[j] = v.get_si();
        }
        g.basis_.push_back(std::move(row));
        mpz_class sign = 0;
        for (std::size_t k = 0; k < r; ++k) sign += p[i][k] * g.signs_[k];
        g.basis_signs_.push_back(mpz_odd_p(sign.get_mpz_t()) ? 1 : 0);
    }
    return g;
}

std::vector<std::string> RationalGroup::generator_strings() const {
    std::vector<std::string> out;
    for (const auto& q : generators_) out.push_back(q.get_str());
    return out;
}

std::string RationalGroup::key() const {
    std::string k;
    for (const auto& q : generators_) {
        if (!k.empty()) k += ",";
        k += q.get_str();
    }
    return k;
}

bool RationalGroup::is_bad_prime(u64 p) const noexcept {
    return std::binary_search(support_.begin(), support_.end(), p);
}

u64 RationalGroup::residue(std::size_t i, u64 p) const noexcept {
    u64 v = mulmod(num_[i] % p, den_[i] == 1 ? 1 : powmod(den_[i] % p, p - 2, p), p);
    if (signs_[i] && v) v = p - v;
    return v;
}

FrobeniusCondition FrobeniusCondition::make(u64 conductor, std::vector<u64> residues) {
    if (conductor == 0) fail(ErrorKind::Validation, "conductor must be positive");
    for (auto& c : residues) {
        if (conductor == 1) {
            c = 0;
            continue;
        }
        if (c >= conductor) c %= conductor;
        if (gcd(c, conductor) != 1)
            fail(ErrorKind::Validation,
                 "residue " + std::to_string(c) + " is not a unit mod " + std::to_string(conductor));
    }
    std::sort(residues.begin(), residues.end());
    residues.erase(std::unique(residues.begin(), residues.end()), residues.end());
    if (residues.empty()) fail(ErrorKind::Validation, "Frobenius residue set must be nonempty");
    return FrobeniusCondition{conductor, std::move(residues)};
}

}  // namespace pindex
