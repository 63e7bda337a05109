#include "thuelab/ball.hpp"

#include <algorithm>

namespace thuelab {

namespace {

// Upper bound on the rounding error of a nearest-rounded mpfr result:
// one ulp of x (0 when x == 0; with mpfr's huge exponent range a zero
// result of +,-,*,fmma is exact).
void ulp_bound(mpfr_ptr out, mpfr_srcptr x) {
    if (mpfr_zero_p(x) || !mpfr_number_p(x)) {
        mpfr_set_zero(out, 1);
        return;
    }
    mpfr_set_ui_2exp(out, 1, mpfr_get_exp(x) - mpfr_get_prec(x), MPFR_RNDU);
}

// rad += ulp(a) + ulp(b), rounded up.
void add_ulps(mpfr_ptr rad, mpfr_srcptr a, mpfr_srcptr b) {
    mpfr_t u;
    mpfr_init2(u, 40);
    ulp_bound(u, a);
    mpfr_add(rad, rad, u, MPFR_RNDU);
    ulp_bound(u, b);
    mpfr_add(rad, rad, u, MPFR_RNDU);
    mpfr_clear(u);
}

// Upper bound of |center| at radius precision.
void center_mag_up(mpfr_ptr out, const ComplexBall& z) {
    mpfr_t h;
    mpfr_init2(h, ComplexBall::kRadPrec);
    mpfr_hypot(h, z.re(), z.im(), MPFR_RNDU);
    mpfr_set(out, h, MPFR_RNDU);
    mpfr_clear(h);
}

} // namespace

ComplexBall ComplexBall::from_mpq(const mpq_class& re, const mpq_class& im, long prec) {
    ComplexBall z(prec);
    mpfr_set_q(z.re_.get(), re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(z.im_.get(), im.get_mpq_t(), MPFR_RNDN);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::from_long(long re, long im, long prec) {
    ComplexBall z(prec);
    mpfr_set_si(z.re_.get(), re, MPFR_RNDN);
    mpfr_set_si(z.im_.get(), im, MPFR_RNDN);
    return z; // exact at any reasonable precision
}

ComplexBall ComplexBall::from_centers(const Mp& re, const Mp& im, const Mp& rad) {
    ComplexBall z(std::max(re.prec(), im.prec()));
    mpfr_set(z.re_.get(), re.get(), MPFR_RNDN);
    mpfr_set(z.im_.get(), im.get(), MPFR_RNDN);
    mpfr_set(z.rad_.get(), rad.get(), MPFR_RNDU);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::from_interval(const RealInterval& x, long prec) {
    ComplexBall z(prec);
    mpfr_add(z.re_.get(), x.lo(), x.hi(), MPFR_RNDN);
    mpfr_div_2ui(z.re_.get(), z.re_.get(), 1, MPFR_RNDN);
    mpfr_set_zero(z.im_.get(), 1);
    // radius >= max distance from midpoint to endpoints
    Mp r1(kRadPrec), r2(kRadPrec);
    mpfr_sub(r1.get(), x.hi(), z.re_.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), z.re_.get(), x.lo(), MPFR_RNDU);
    mpfr_max(z.rad_.get(), r1.get(), r2.get(), MPFR_RNDU);
    if (mpfr_sgn(z.rad_.get()) < 0) mpfr_set_zero(z.rad_.get(), 1);
    return z;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
    ComplexBall z(std::max(prec(), o.prec()));
    mpfr_add(z.re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_add(z.im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(z.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
    ComplexBall z(std::max(prec(), o.prec()));
    mpfr_sub(z.re_.get(), re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_sub(z.im_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_add(z.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::operator-() const {
    ComplexBall z(prec());
    mpfr_neg(z.re_.get(), re_.get(), MPFR_RNDN);
    mpfr_neg(z.im_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(z.rad_.get(), rad_.get(), MPFR_RNDU);
    return z;
}

ComplexBall ComplexBall::conj() const {
    ComplexBall z(prec());
    mpfr_set(z.re_.get(), re_.get(), MPFR_RNDN);
    mpfr_neg(z.im_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(z.rad_.get(), rad_.get(), MPFR_RNDU);
    return z;
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
    long p = std::max(prec(), o.prec());
    ComplexBall z(p);
    // (a+bi)(c+di): re = ac - bd, im = ad + bc, each one correctly-rounded fm(m)a.
    mpfr_fmms(z.re_.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_fmma(z.im_.get(), re_.get(), o.im_.get(), im_.get(), o.re_.get(), MPFR_RNDN);
    // |xy - xc yc| <= |xc| rb + |yc| ra + ra rb
    Mp ma(kRadPrec), mb(kRadPrec), t(kRadPrec);
    center_mag_up(ma.get(), *this);
    center_mag_up(mb.get(), o);
    mpfr_mul(t.get(), ma.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(z.rad_.get(), z.rad_.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), mb.get(), rad_.get(), MPFR_RNDU);
    mpfr_add(z.rad_.get(), z.rad_.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    mpfr_add(z.rad_.get(), z.rad_.get(), t.get(), MPFR_RNDU);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
    long p = std::max(prec(), o.prec());
    // Lower bound of |o|: |center| (rounded down) minus radius.
    Mp lb(kRadPrec);
    {
        Mp h(kRadPrec);
        mpfr_hypot(h.get(), o.re_.get(), o.im_.get(), MPFR_RNDD);
        mpfr_sub(lb.get(), h.get(), o.rad_.get(), MPFR_RNDD);
    }
    if (mpfr_sgn(lb.get()) <= 0) throw IntervalDomainError("ball division by range containing 0");

    ComplexBall z(p);
    Mp den(p);
    mpfr_fmma(den.get(), o.re_.get(), o.re_.get(), o.im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_fmma(z.re_.get(), re_.get(), o.re_.get(), im_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_div(z.re_.get(), z.re_.get(), den.get(), MPFR_RNDN);
    mpfr_fmms(z.im_.get(), im_.get(), o.re_.get(), re_.get(), o.im_.get(), MPFR_RNDN);
    mpfr_div(z.im_.get(), z.im_.get(), den.get(), MPFR_RNDN);

    // |a/b - ac/bc| <= (ra |bc| + rb |ac|) / (|bc| (|bc| - rb))
    Mp ma(kRadPrec), mbd(kRadPrec), mbu(kRadPrec), t(kRadPrec), num(kRadPrec), denr(kRadPrec);
    center_mag_up(ma.get(), *this);
    mpfr_hypot(mbd.get(), o.re_.get(), o.im_.get(), MPFR_RNDD);
    mpfr_hypot(mbu.get(), o.re_.get(), o.im_.get(), MPFR_RNDU);
    mpfr_mul(num.get(), rad_.get(), mbu.get(), MPFR_RNDU);
    mpfr_mul(t.get(), o.rad_.get(), ma.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
    mpfr_mul(denr.get(), mbd.get(), lb.get(), MPFR_RNDD);
    mpfr_div(t.get(), num.get(), denr.get(), MPFR_RNDU);
    mpfr_add(z.rad_.get(), z.rad_.get(), t.get(), MPFR_RNDU);
    // rounding slack: den, two fm(m)a, two divisions -> generous 4 ulps per component
    for (int i = 0; i < 4; ++i) add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

ComplexBall ComplexBall::pow_ui(unsigned long k) const {
    ComplexBall acc = from_long(1, 0, prec());
    ComplexBall base = *this;
    while (k > 0) {
        if (k & 1UL) acc = acc * base;
        k >>= 1UL;
        if (k > 0) base = base * base;
    }
    return acc;
}

RealInterval ComplexBall::abs() const {
    RealInterval r(prec());
    Mp lo(prec()), hi(prec());
    mpfr_hypot(lo.get(), re_.get(), im_.get(), MPFR_RNDD);
    mpfr_sub(lo.get(), lo.get(), rad_.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    mpfr_hypot(hi.get(), re_.get(), im_.get(), MPFR_RNDU);
    mpfr_add(hi.get(), hi.get(), rad_.get(), MPFR_RNDU);
    return RealInterval::from_endpoints(lo, hi);
}

RealInterval ComplexBall::real_part() const {
    Mp lo(prec()), hi(prec());
    mpfr_sub(lo.get(), re_.get(), rad_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), re_.get(), rad_.get(), MPFR_RNDU);
    return RealInterval::from_endpoints(lo, hi);
}

RealInterval ComplexBall::imag_part() const {
    Mp lo(prec()), hi(prec());
    mpfr_sub(lo.get(), im_.get(), rad_.get(), MPFR_RNDD);
    mpfr_add(hi.get(), im_.get(), rad_.get(), MPFR_RNDU);
    return RealInterval::from_endpoints(lo, hi);
}

bool ComplexBall::contains_zero() const {
    Mp h(kRadPrec);
    mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDD);
    return mpfr_cmp(h.get(), rad_.get()) <= 0;
}

bool ComplexBall::contained_in(const ComplexBall& o) const {
    // |c - oc| + r <= or
    Mp dr(kRadPrec), di(kRadPrec), d(kRadPrec);
    mpfr_sub(dr.get(), re_.get(), o.re_.get(), MPFR_RNDA);
    mpfr_sub(di.get(), im_.get(), o.im_.get(), MPFR_RNDA);
    mpfr_abs(dr.get(), dr.get(), MPFR_RNDU);
    mpfr_abs(di.get(), di.get(), MPFR_RNDU);
    mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDU);
    mpfr_add(d.get(), d.get(), rad_.get(), MPFR_RNDU);
    return mpfr_cmp(d.get(), o.rad_.get()) <= 0;
}

bool ComplexBall::disjoint_from(const ComplexBall& o) const {
    // |c - oc| > r + or
    Mp dr(kRadPrec), di(kRadPrec), d(kRadPrec), s(kRadPrec);
    mpfr_sub(dr.get(), re_.get(), o.re_.get(), MPFR_RNDZ);
    mpfr_sub(di.get(), im_.get(), o.im_.get(), MPFR_RNDZ);
    mpfr_hypot(d.get(), dr.get(), di.get(), MPFR_RNDD);
    // two subtractions rounded toward zero can shrink magnitude; recover with
    // one ulp of slack on the safe side
    mpfr_nextbelow(d.get());
    mpfr_add(s.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
    return mpfr_cmp(d.get(), s.get()) > 0;
}

ComplexBall ComplexBall::round_to(long p) const {
    ComplexBall z(p);
    mpfr_set(z.re_.get(), re_.get(), MPFR_RNDN);
    mpfr_set(z.im_.get(), im_.get(), MPFR_RNDN);
    mpfr_set(z.rad_.get(), rad_.get(), MPFR_RNDU);
    add_ulps(z.rad_.get(), z.re_.get(), z.im_.get());
    return z;
}

} // namespace thuelab
