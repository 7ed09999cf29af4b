#pragma once

// Closed intervals of 256-bit MPFR numbers with outward rounding, and the
// BoundedValue reported to callers (value ± error with a decimal rendering).

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace pindex {

class RealInterval {
public:
    static constexpr mpfr_prec_t kPrec = 256;

    RealInterval();
    explicit RealInterval(double x);
    explicit RealInterval(const mpq_class& q);
    RealInterval(const RealInterval& other);
    RealInterval(RealInterval&& other) noexcept;
    RealInterval& operator=(const RealInterval& other);
    RealInterval& operator=(RealInterval&& other) noexcept;
    ~RealInterval();

    static RealInterval hull(double lo, double hi);

    RealInterval operator+(const RealInterval& o) const;
    RealInterval operator-(const RealInterval& o) const;
    RealInterval operator*(const RealInterval& o) const;
    /// Requires 0 ∉ o.
    RealInterval operator/(const RealInterval& o) const;
    RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }
    RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }

    RealInterval exp() const;
    /// Requires lo > 0.
    RealInterval log() const;
    /// Widens by ±e (e ≥ 0).
    RealInterval widen(double e) const;

    double lo_down() const;
    double hi_up() const;
    /// Midpoint and an upper bound for the half-width.
    double mid() const;
    double radius_up() const;
    bool contains(double x) const;
    bool contains(const RealInterval& o) const;
    std::string mid_string(int digits = 25) const;

    const __mpfr_struct* lo() const { return lo_; }
    const __mpfr_struct* hi() const { return hi_; }
    __mpfr_struct* lo() { return lo_; }
    __mpfr_struct* hi() { return hi_; }

private:
    mpfr_t lo_, hi_;
};

/// Riemann zeta at an integer s ≥ 2, enclosed.
RealInterval zeta_interval(unsigned long s);

struct BoundedValue {
    double value = 0;
    double error = 0;
    double lo = 0;  // rounded down
    double hi = 0;  // rounded up
    std::string decimal;  // midpoint, ~25 significant digits
    std::string rational;  // exact value as p/q when known

    static BoundedValue exact(const mpq_class& q);
    static BoundedValue from_interval(const RealInterval& iv);
    /// value ± error with the bracket rounded outward.
    static BoundedValue from_value_error(double value, double error);

    bool brackets(double x) const { return lo <= x && x <= hi; }
};

}  // namespace pindex
