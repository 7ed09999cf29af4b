#include "pindex/interval.hpp"

#include <cmath>
#include <vector>

#include "pindex/error.hpp"

namespace pindex {

RealInterval::RealInterval() {
    mpfr_init2(lo_, kPrec);
    mpfr_init2(hi_, kPrec);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(double x) : RealInterval() {
    mpfr_set_d(lo_, x, MPFR_RNDD);
    mpfr_set_d(hi_, x, MPFR_RNDU);
}

RealInterval::RealInterval(const mpq_class& q) : RealInterval() {
    mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

RealInterval::RealInterval(const RealInterval& o) : RealInterval() {
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : RealInterval() {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
    if (this != &o) {
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

RealInterval::~RealInterval() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

RealInterval RealInterval::hull(double lo, double hi) {
    RealInterval out;
    mpfr_set_d(out.lo_, lo, MPFR_RNDD);
    mpfr_set_d(out.hi_, hi, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
    RealInterval out;
    mpfr_add(out.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_add(out.hi_, hi_, o.hi_, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
    RealInterval out;
    mpfr_sub(out.lo_, lo_, o.hi_, MPFR_RNDD);
    mpfr_sub(out.hi_, hi_, o.lo_, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
    RealInterval out;
    mpfr_t t;
    mpfr_init2(t, kPrec);
    const __mpfr_struct* a[2] = {lo_, hi_};
    const __mpfr_struct* b[2] = {o.lo_, o.hi_};
    bool first = true;
    for (auto x : a)
        for (auto y : b) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, out.lo_)) mpfr_set(out.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, out.hi_)) mpfr_set(out.hi_, t, MPFR_RNDU);
            first = false;
        }
    mpfr_clear(t);
    return out;
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
    if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0) fail(ErrorKind::Domain, "interval division by a range containing 0");
    RealInterval inv;
    mpfr_ui_div(inv.lo_, 1, o.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, o.lo_, MPFR_RNDU);
    return *this * inv;
}

RealInterval RealInterval::exp() const {
    RealInterval out;
    mpfr_exp(out.lo_, lo_, MPFR_RNDD);
    mpfr_exp(out.hi_, hi_, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::log() const {
    if (mpfr_sgn(lo_) <= 0) fail(ErrorKind::Domain, "log of a range reaching 0");
    RealInterval out;
    mpfr_log(out.lo_, lo_, MPFR_RNDD);
    mpfr_log(out.hi_, hi_, MPFR_RNDU);
    return out;
}

RealInterval RealInterval::widen(double e) const {
    RealInterval out(*this);
    mpfr_sub_d(out.lo_, lo_, e, MPFR_RNDD);
    mpfr_add_d(out.hi_, hi_, e, MPFR_RNDU);
    return out;
}

double RealInterval::lo_down() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi_up() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RealInterval::mid() const {
    mpfr_t m;
    mpfr_init2(m, kPrec + 8);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double RealInterval::radius_up() const {
    mpfr_t w;
    mpfr_init2(w, kPrec);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    mpfr_div_2ui(w, w, 1, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool RealInterval::contains(double x) const { return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0; }

bool RealInterval::contains(const RealInterval& o) const {
    return mpfr_lessequal_p(lo_, o.lo_) && mpfr_greaterequal_p(hi_, o.hi_);
}

std::string RealInterval::mid_string(int digits) const {
    mpfr_t m;
    mpfr_init2(m, kPrec + 8);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, m);
    mpfr_clear(m);
    return buf.data();
}

RealInterval zeta_interval(unsigned long s) {
    if (s < 2) fail(ErrorKind::Domain, "zeta(s) needs s >= 2");
    RealInterval out;
    mpfr_zeta_ui(out.lo(), s, MPFR_RNDD);
    mpfr_zeta_ui(out.hi(), s, MPFR_RNDU);
    return out;
}

BoundedValue BoundedValue::exact(const mpq_class& q) {
    BoundedValue b = from_interval(RealInterval(q));
    b.error = 0;
    b.value = q.get_d();
    b.rational = q.get_str();
    return b;
}

BoundedValue BoundedValue::from_interval(const RealInterval& iv) {
    BoundedValue b;
    b.value = iv.mid();
    b.lo = iv.lo_down();
    b.hi = iv.hi_up();
    b.error = std::max(b.value - b.lo, b.hi - b.value);
    b.error = std::nextafter(b.error, INFINITY);
    if (iv.radius_up() == 0) b.error = 0;
    b.decimal = iv.mid_string();
    return b;
}

BoundedValue BoundedValue::from_value_error(double value, double error) {
    RealInterval iv = RealInterval(value).widen(error);
    BoundedValue b = from_interval(iv);
    b.value = value;
    b.error = error;
    b.decimal = RealInterval(value).mid_string(17);
    return b;
}

}  // namespace pindex
