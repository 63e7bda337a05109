#include "doctest.h"

#include "thuelab/ball.hpp"
#include "thuelab/interval.hpp"

using namespace thuelab;

namespace {

bool ball_contains_q(const ComplexBall& b, const mpq_class& re, const mpq_class& im) {
    return b.real_part().contains_mpq(re) && b.imag_part().contains_mpq(im);
}

} // namespace

TEST_CASE("interval arithmetic encloses exact rationals") {
    mpq_class a(1, 3), b(1, 6);
    RealInterval x = RealInterval::from_mpq(a, 64);
    RealInterval y = RealInterval::from_mpq(b, 64);
    CHECK((x + y).contains_mpq(mpq_class(1, 2)));
    CHECK((x - y).contains_mpq(mpq_class(1, 6)));
    CHECK((x * y).contains_mpq(mpq_class(1, 18)));
    CHECK((x / y).contains_mpq(2));
    CHECK((-x).contains_mpq(mpq_class(-1, 3)));
    CHECK(x.width_d() < 1e-17);
}

TEST_CASE("interval log/exp/sqrt round trips contain the input") {
    RealInterval two = RealInterval::from_long(2, 128);
    RealInterval l = two.log();
    CHECK(l.exp().contains_mpq(2));
    CHECK(two.sqrt().square().contains_mpq(2));
    CHECK_THROWS_AS(RealInterval::from_long(0, 64).log(), IntervalDomainError);
    CHECK_THROWS_AS(RealInterval::from_long(-1, 64).sqrt(), IntervalDomainError);
    CHECK_THROWS_AS(two / RealInterval::from_long(0, 64), IntervalDomainError);
}

TEST_CASE("interval comparisons are three-valued") {
    RealInterval a = RealInterval::from_mpq(mpq_class(1, 3), 64);
    RealInterval b = RealInterval::from_mpq(mpq_class(1, 2), 64);
    CHECK(a.le(b) == Tri::True);
    CHECK(b.le(a) == Tri::False);
    CHECK(a.le(a) == Tri::Unknown); // identical enclosures of width > 0 cannot separate
    RealInterval one = RealInterval::from_long(1, 64);
    CHECK(one.le(one) == Tri::True); // exact point intervals can
}

TEST_CASE("interval abs/max and mixed-sign multiplication") {
    RealInterval m = RealInterval::from_mpq(mpq_class(-3, 2), 64);
    RealInterval p = RealInterval::from_mpq(mpq_class(5, 4), 64);
    CHECK(m.abs().contains_mpq(mpq_class(3, 2)));
    CHECK(m.max_with(p).contains_mpq(mpq_class(5, 4)));
    CHECK((m * p).contains_mpq(mpq_class(-15, 8)));
    CHECK(m.mul_long(-2).contains_mpq(3));
}

TEST_CASE("ball product and quotient enclose the exact value") {
    // (1 + 2i)(3 - i) = 5 + 5i
    ComplexBall a = ComplexBall::from_mpq(1, 2, 128);
    ComplexBall b = ComplexBall::from_mpq(3, -1, 128);
    ComplexBall p = a * b;
    CHECK(ball_contains_q(p, 5, 5));
    ComplexBall q = p / b;
    CHECK(ball_contains_q(q, 1, 2));
    CHECK(q.rad_d() < 1e-30);
    ComplexBall s = a.pow_ui(3); // (1+2i)^3 = -11 - 2i
    CHECK(ball_contains_q(s, -11, -2));
    CHECK_THROWS_AS(a / (b - b), IntervalDomainError);
}

TEST_CASE("ball modulus and containment predicates") {
    ComplexBall z = ComplexBall::from_mpq(mpq_class(3, 5), mpq_class(4, 5), 96);
    RealInterval m = z.abs();
    CHECK(m.contains_mpq(1));
    CHECK(m.width_d() < 1e-25);
    CHECK(!z.contains_zero());
    CHECK((z - z).contains_zero());
    ComplexBall w = ComplexBall::from_mpq(10, 0, 96);
    CHECK(z.disjoint_from(w));
    CHECK(!z.disjoint_from(z));
}

TEST_CASE("conjugation is an exact mirror") {
    ComplexBall z = ComplexBall::from_mpq(mpq_class(1, 3), mpq_class(-2, 7), 96);
    ComplexBall c = z.conj();
    CHECK(mpfr_cmp(z.re(), c.re()) == 0);
    Mp ni(96);
    mpfr_neg(ni.get(), z.im(), MPFR_RNDN);
    CHECK(mpfr_cmp(ni.get(), c.im()) == 0);
    CHECK(mpfr_cmp(z.rad(), c.rad()) == 0);
}

TEST_CASE("integer range extraction") {
    RealInterval x = RealInterval::from_mpq(mpq_class(7, 2), 64); // 3.5
    auto [lo, hi] = x.integer_range();
    CHECK(lo > hi); // no integers inside a (near-)point at 3.5
    RealInterval y = RealInterval::from_mpq(mpq_class(5, 2), 64) +
                     RealInterval::from_mpq(mpq_class(3, 2), 64); // ~4
    auto [lo2, hi2] = y.integer_range();
    CHECK(lo2 == 4);
    CHECK(hi2 == 4);
}
