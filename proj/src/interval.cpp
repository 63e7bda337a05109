#include "thuelab/interval.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace thuelab {

std::string mpfr_to_string(mpfr_srcptr x, int digits) {
    if (mpfr_zero_p(x)) return "0";
    if (!mpfr_number_p(x)) return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, digits, x, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    bool neg = !mant.empty() && mant[0] == '-';
    std::string dig = neg ? mant.substr(1) : mant;
    // strip trailing zeros but keep one digit
    size_t last = dig.find_last_not_of('0');
    if (last != std::string::npos) dig = dig.substr(0, last + 1);
    if (dig.empty()) dig = "0";
    std::string out = (neg ? "-" : "") + ("0." + dig) + "e" + std::to_string((long)e);
    return out;
}

RealInterval RealInterval::from_mpq(const mpq_class& q, long prec) {
    RealInterval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_long(long v, long prec) {
    RealInterval r(prec);
    mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_mpz(const mpz_class& z, long prec) {
    RealInterval r(prec);
    mpfr_set_z(r.lo_.get(), z.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_.get(), z.get_mpz_t(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::from_endpoints(const Mp& lo, const Mp& hi) {
    RealInterval r(std::max(lo.prec(), hi.prec()));
    mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
    if (mpfr_cmp(r.lo_.get(), r.hi_.get()) > 0) throw InternalError("interval endpoints inverted");
    return r;
}

RealInterval RealInterval::from_center_exp(mpfr_srcptr center, long err_exp, long prec) {
    RealInterval r(prec);
    Mp e(64);
    mpfr_set_ui_2exp(e.get(), 1, err_exp, MPFR_RNDU);
    mpfr_sub(r.lo_.get(), center, e.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), center, e.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator+(const RealInterval& o) const {
    RealInterval r(std::max(prec(), o.prec()));
    mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator-(const RealInterval& o) const {
    RealInterval r(std::max(prec(), o.prec()));
    mpfr_sub(r.lo_.get(), lo_.get(), o.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), hi_.get(), o.lo_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator-() const {
    RealInterval r(prec());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::operator*(const RealInterval& o) const {
    long p = std::max(prec(), o.prec());
    RealInterval r(p);
    Mp t(p);
    mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

RealInterval RealInterval::operator/(const RealInterval& o) const {
    if (o.contains_zero()) throw IntervalDomainError("interval division by range containing 0");
    long p = std::max(prec(), o.prec());
    RealInterval r(p);
    Mp t(p);
    mpfr_srcptr a[2] = {lo_.get(), hi_.get()};
    mpfr_srcptr b[2] = {o.lo_.get(), o.hi_.get()};
    bool first = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            mpfr_div(t.get(), a[i], b[j], MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_div(t.get(), a[i], b[j], MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    return r;
}

RealInterval RealInterval::add_long(long v) const {
    RealInterval r(prec());
    mpfr_add_si(r.lo_.get(), lo_.get(), v, MPFR_RNDD);
    mpfr_add_si(r.hi_.get(), hi_.get(), v, MPFR_RNDU);
    return r;
}

RealInterval RealInterval::mul_long(long v) const {
    RealInterval r(prec());
    if (v >= 0) {
        mpfr_mul_si(r.lo_.get(), lo_.get(), v, MPFR_RNDD);
        mpfr_mul_si(r.hi_.get(), hi_.get(), v, MPFR_RNDU);
    } else {
        mpfr_mul_si(r.lo_.get(), hi_.get(), v, MPFR_RNDD);
        mpfr_mul_si(r.hi_.get(), lo_.get(), v, MPFR_RNDU);
    }
    return r;
}

RealInterval RealInterval::div_long(long v) const {
    if (v == 0) throw IntervalDomainError("division by zero");
    RealInterval r(prec());
    if (v > 0) {
        mpfr_div_si(r.lo_.get(), lo_.get(), v, MPFR_RNDD);
        mpfr_div_si(r.hi_.get(), hi_.get(), v, MPFR_RNDU);
    } else {
        mpfr_div_si(r.lo_.get(), hi_.get(), v, MPFR_RNDD);
        mpfr_div_si(r.hi_.get(), lo_.get(), v, MPFR_RNDU);
    }
    return r;
}

RealInterval RealInterval::mul_q(const mpq_class& q, long prec_hint) const {
    long p = prec_hint > 0 ? std::max(prec(), prec_hint) : prec();
    return (*this) * from_mpq(q, p);
}

RealInterval RealInterval::abs() const {
    RealInterval r(prec());
    if (mpfr_sgn(lo_.get()) >= 0) return *this;
    if (mpfr_sgn(hi_.get()) <= 0) return -(*this);
    // straddles zero
    mpfr_set_zero(r.lo_.get(), 1);
    Mp nl(prec());
    mpfr_neg(nl.get(), lo_.get(), MPFR_RNDU);
    if (mpfr_cmp(nl.get(), hi_.get()) > 0)
        mpfr_set(r.hi_.get(), nl.get(), MPFR_RNDU);
    else
        mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::sqrt() const {
    if (mpfr_sgn(lo_.get()) < 0) throw IntervalDomainError("sqrt of range below 0");
    RealInterval r(prec());
    mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::log() const {
    if (mpfr_sgn(lo_.get()) <= 0) throw IntervalDomainError("log of range touching 0");
    RealInterval r(prec());
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::exp() const {
    RealInterval r(prec());
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::max_with(const RealInterval& o) const {
    RealInterval r(std::max(prec(), o.prec()));
    mpfr_max(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_max(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::min_with(const RealInterval& o) const {
    RealInterval r(std::max(prec(), o.prec()));
    mpfr_min(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
    mpfr_min(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
    return r;
}

RealInterval RealInterval::pow_exact(const RealInterval& e) const {
    return (log() * e).exp();
}

RealInterval RealInterval::square() const {
    RealInterval a = abs();
    return a * a;
}

bool RealInterval::contains_zero() const {
    return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool RealInterval::contains_mpq(const mpq_class& q) const {
    return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

Tri RealInterval::le(const RealInterval& o) const {
    if (mpfr_cmp(hi_.get(), o.lo_.get()) <= 0) return Tri::True;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) > 0) return Tri::False;
    return Tri::Unknown;
}

Tri RealInterval::lt(const RealInterval& o) const {
    if (mpfr_cmp(hi_.get(), o.lo_.get()) < 0) return Tri::True;
    if (mpfr_cmp(lo_.get(), o.hi_.get()) >= 0) return Tri::False;
    return Tri::Unknown;
}

Tri RealInterval::le_q(const mpq_class& q) const {
    if (mpfr_cmp_q(hi_.get(), q.get_mpq_t()) <= 0) return Tri::True;
    if (mpfr_cmp_q(lo_.get(), q.get_mpq_t()) > 0) return Tri::False;
    return Tri::Unknown;
}

Tri RealInterval::ge_q(const mpq_class& q) const {
    if (mpfr_cmp_q(lo_.get(), q.get_mpq_t()) >= 0) return Tri::True;
    if (mpfr_cmp_q(hi_.get(), q.get_mpq_t()) < 0) return Tri::False;
    return Tri::Unknown;
}

Mp RealInterval::width() const {
    Mp w(prec());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

double RealInterval::width_d() const {
    Mp w = width();
    return mpfr_get_d(w.get(), MPFR_RNDU);
}

std::pair<std::string, std::string> RealInterval::mid_rad_strings(int digits) const {
    Mp mid(prec()), rad(prec());
    mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    Mp r1(prec()), r2(prec());
    mpfr_sub(r1.get(), hi_.get(), mid.get(), MPFR_RNDU);
    mpfr_sub(r2.get(), mid.get(), lo_.get(), MPFR_RNDU);
    mpfr_max(rad.get(), r1.get(), r2.get(), MPFR_RNDU);
    return {mpfr_to_string(mid.get(), digits), mpfr_to_string(rad.get(), 6)};
}

std::pair<mpz_class, mpz_class> RealInterval::integer_range() const {
    Mp c(prec()), f(prec());
    mpfr_ceil(c.get(), lo_.get());
    mpfr_floor(f.get(), hi_.get());
    mpz_class a, b;
    mpfr_get_z(a.get_mpz_t(), c.get(), MPFR_RNDN);
    mpfr_get_z(b.get_mpz_t(), f.get(), MPFR_RNDN);
    return {a, b};
}

RealInterval RealInterval::round_to(long p) const {
    RealInterval r(p);
    mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

} // namespace thuelab
