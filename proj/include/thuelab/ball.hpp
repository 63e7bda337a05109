#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include "thuelab/interval.hpp"
#include "thuelab/util.hpp"

namespace thuelab {

// Rigorous complex disk: center (re, im) at working precision, radius kept
// at a small fixed precision and always rounded up.  Every operation returns
// a ball containing the exact image of the operand balls.
class ComplexBall {
public:
    static constexpr long kRadPrec = 40;

    explicit ComplexBall(long prec = 64) : re_(prec), im_(prec), rad_(kRadPrec) {}

    static ComplexBall from_mpq(const mpq_class& re, const mpq_class& im, long prec);
    static ComplexBall from_long(long re, long im, long prec);
    static ComplexBall from_centers(const Mp& re, const Mp& im, const Mp& rad);
    static ComplexBall from_interval(const RealInterval& x, long prec);

    long prec() const { return re_.prec(); }
    mpfr_srcptr re() const { return re_.get(); }
    mpfr_srcptr im() const { return im_.get(); }
    mpfr_srcptr rad() const { return rad_.get(); }
    double re_d() const { return re_.d(); }
    double im_d() const { return im_.d(); }
    double rad_d() const { return mpfr_get_d(rad_.get(), MPFR_RNDU); }

    ComplexBall operator+(const ComplexBall& o) const;
    ComplexBall operator-(const ComplexBall& o) const;
    ComplexBall operator*(const ComplexBall& o) const;
    ComplexBall operator/(const ComplexBall& o) const; // throws if o may contain 0
    ComplexBall operator-() const;
    ComplexBall conj() const;
    ComplexBall pow_ui(unsigned long k) const;

    // |z| as a rigorous real enclosure (lower end clamped at 0).
    RealInterval abs() const;
    // Enclosures of Re(z), Im(z).
    RealInterval real_part() const;
    RealInterval imag_part() const;

    bool contains_zero() const;
    // True iff this ball is contained in o (rigorously).
    bool contained_in(const ComplexBall& o) const;
    // Rigorous: the two balls are disjoint.
    bool disjoint_from(const ComplexBall& o) const;

    ComplexBall round_to(long prec) const;

private:
    Mp re_, im_; // centers
    Mp rad_;     // radius >= 0, rounded up

    void add_center_rounding_slack(int ops);
    friend class BallOps;
};

} // namespace thuelab
