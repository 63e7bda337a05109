#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>
#include <utility>

#include "thuelab/util.hpp"

namespace thuelab {

// Thin RAII wrapper over one mpfr_t.
class Mp {
public:
    explicit Mp(long prec) { mpfr_init2(v_, std::max(prec, 2L)); mpfr_set_zero(v_, 1); }
    Mp(const Mp& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Mp(Mp&& o) noexcept {
        mpfr_init2(v_, 2);
        mpfr_swap(v_, o.v_);
    }
    Mp& operator=(const Mp& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mp& operator=(Mp&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mp() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

private:
    mpfr_t v_;
};

// Closed real interval [lo, hi] with directed-rounding endpoints.
// Every operation returns an interval that contains the exact image of the
// operands; domain violations raise IntervalDomainError.
class RealInterval {
public:
    explicit RealInterval(long prec = 64) : lo_(prec), hi_(prec) {}

    static RealInterval from_mpq(const mpq_class& q, long prec);
    static RealInterval from_long(long v, long prec);
    static RealInterval from_mpz(const mpz_class& z, long prec);
    static RealInterval from_endpoints(const Mp& lo, const Mp& hi);
    // [v - 2^e, v + 2^e], used to absorb rounding slack
    static RealInterval from_center_exp(mpfr_srcptr center, long err_exp, long prec);
    static RealInterval zero(long prec) { return from_long(0, prec); }

    long prec() const { return lo_.prec(); }
    mpfr_srcptr lo() const { return lo_.get(); }
    mpfr_srcptr hi() const { return hi_.get(); }
    double lo_d() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
    double hi_d() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
    double mid_d() const { return 0.5 * (lo_.d() + hi_.d()); }

    RealInterval operator+(const RealInterval& o) const;
    RealInterval operator-(const RealInterval& o) const;
    RealInterval operator*(const RealInterval& o) const;
    RealInterval operator/(const RealInterval& o) const; // throws if o contains 0
    RealInterval operator-() const;

    RealInterval add_long(long v) const;
    RealInterval mul_long(long v) const;
    RealInterval div_long(long v) const;
    RealInterval mul_q(const mpq_class& q, long prec_hint = 0) const;

    RealInterval abs() const;
    RealInterval sqrt() const;  // requires lo >= 0 (clamps tiny negative lo to 0 if hi >= 0? no: throws)
    RealInterval log() const;   // requires lo > 0
    RealInterval exp() const;
    RealInterval max_with(const RealInterval& o) const;
    RealInterval min_with(const RealInterval& o) const;
    RealInterval pow_exact(const RealInterval& e) const; // exp(e*log(this)), requires lo > 0
    RealInterval square() const;

    bool contains_zero() const;
    bool contains_mpq(const mpq_class& q) const;
    bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool is_negative() const { return mpfr_sgn(hi_.get()) < 0; }

    // Provable comparisons.
    Tri le(const RealInterval& o) const;
    Tri lt(const RealInterval& o) const;
    Tri le_q(const mpq_class& q) const;
    Tri ge_q(const mpq_class& q) const;

    // Width hi-lo, rounded up.
    Mp width() const;
    double width_d() const;

    // Midpoint +- radius view for reporting.
    std::pair<std::string, std::string> mid_rad_strings(int digits = 20) const;

    // Integers contained in the interval: [ceil(lo), floor(hi)].
    // first > second means empty.
    std::pair<mpz_class, mpz_class> integer_range() const;

    RealInterval round_to(long prec) const;

private:
    Mp lo_, hi_;
};

std::string mpfr_to_string(mpfr_srcptr x, int digits = 20);

} // namespace thuelab
