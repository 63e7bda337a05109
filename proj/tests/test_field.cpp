#include "doctest.h"

#include <cmath>
#include <random>

#include "support/oracles.hpp"
#include "thuelab/field.hpp"

using namespace thuelab;
using namespace thuelab::testing;

namespace {

NumberField x3m2() { return NumberField::load({1, 0, 0, -2}); }
NumberField x4m2() { return NumberField::load({1, 0, 0, 0, -2}); }

FieldElement elem(const NumberField& K, std::initializer_list<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    v.resize(K.degree(), mpq_class(0));
    return K.element(v);
}

FieldElement random_elem(const NumberField& K, std::mt19937_64& rng, long span = 9) {
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, 4);
    std::vector<mpq_class> v;
    for (int i = 0; i < K.degree(); ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        v.push_back(q);
    }
    return K.element(v);
}

} // namespace

TEST_CASE("load_field validates and computes signatures") {
    NumberField K = x3m2();
    CHECK(K.degree() == 3);
    CHECK(K.r1() == 1);
    CHECK(K.r2() == 1);
    CHECK(K.unit_rank() == 1);

    NumberField L = NumberField::load({1, 0, -1, -1}); // x^3 - x - 1, disc -23
    CHECK(L.r1() == 1);
    CHECK(L.r2() == 1);

    CHECK(x4m2().r1() == 2);
    CHECK(x4m2().unit_rank() == 2);

    NumberField C = NumberField::load({1, 1, 1, 1, 1});
    CHECK(C.r1() == 0);
    CHECK(C.r2() == 2);

    CHECK_THROWS_AS(NumberField::load({1, 1}), InputError);                // degree < 3
    CHECK_THROWS_AS(NumberField::load({1, 0, 0, -1}), InputError);         // x^3-1 reducible
    CHECK_THROWS_AS(NumberField::load({1, -3, 3, -1}), InputError);        // (x-1)^3
    CHECK_THROWS_AS(NumberField::load({1, 0, -4, 0, 4}), InputError);      // (x^2-2)^2
    CHECK_THROWS_AS(NumberField::load({2, 0, -2, 0, -12, 0}), InputError); // content+root
    CHECK_THROWS_AS(NumberField::load({0, 1, 0, 0, -2}), InputError);      // zero lead
    CHECK_THROWS_AS(NumberField::load({}), InputError);

    // sign normalization: -x^3 + 2 loads as x^3 - 2
    NumberField Kn = NumberField::load({-1, 0, 0, 2});
    CHECK(Kn.coeffs_desc() == std::vector<mpz_class>{1, 0, 0, -2});
    // a0 > 1 is legal when irreducible
    NumberField K2 = NumberField::load({2, 0, 0, -1}); // 2x^3 - 1
    CHECK(K2.degree() == 3);
}

TEST_CASE("field element arithmetic is exact") {
    NumberField K = x3m2();
    FieldElement a = K.generator();
    FieldElement am1 = elem(K, {-1, 1, 0});
    // (alpha-1)^3 = 1 + 3 alpha - 3 alpha^2
    CHECK(am1.pow(3) == elem(K, {1, 3, -3}));
    CHECK(a * a * a == K.from_rational(2));
    CHECK(am1 * am1.inverse() == K.one());
    CHECK(a.pow(-3) == K.from_rational(mpq_class(1, 2)));
    CHECK_THROWS_AS(K.zero().inverse(), InputError);
    CHECK(elem(K, {0, 0, 1}) * a == K.from_rational(2)); // alpha^2 * alpha
}

TEST_CASE("embeddings at the spec's frozen decimals") {
    NumberField K = x3m2();
    EmbeddingValues ev = embeddings(K.generator(), 64);
    REQUIRE(ev.values.size() == 3);
    CHECK(std::fabs(ev.values[0].re_d() - 1.259921) < 1e-5);
    CHECK(std::fabs(ev.values[1].re_d() + 0.629961) < 1e-5);
    CHECK(std::fabs(ev.values[1].im_d() - 1.091124) < 1e-5);

    // constants embed exactly
    EmbeddingValues one = embeddings(K.one(), 64);
    for (const auto& b : one.values) {
        CHECK(b.real_part().contains_mpq(1));
        CHECK(b.rad_d() < 1e-15);
    }

    // alpha^2 - alpha
    EmbeddingValues e2 = embeddings(elem(K, {0, -1, 1}), 64);
    CHECK(std::fabs(e2.values[0].re_d() - 0.327480) < 1e-5);
    CHECK(std::fabs(e2.values[1].re_d() + 0.163740) < 1e-5);
    CHECK(std::fabs(std::fabs(e2.values[1].im_d()) - 2.465872) < 1e-4);
}

TEST_CASE("house values") {
    NumberField K = x3m2();
    // house(alpha)^3 = 2 exactly
    RealInterval h = house(K.generator(), 128);
    CHECK(h.pow_exact(RealInterval::from_long(3, 128)).contains_mpq(2));
    CHECK(std::fabs(h.mid_d() - 1.259921) < 1e-5);

    // house(alpha^2-alpha): complex pair dominates, modulus^2 = 2/0.327480
    FieldElement g = elem(K, {0, -1, 1});
    RealInterval hg = house(g, 128);
    CHECK(std::fabs(hg.mid_d() - 2.471300) < 1e-4);
    EmbeddingValues ev = embeddings(g, 128);
    RealInterval small = ev.values[0].abs();
    CHECK((hg.square() * small).contains_mpq(2)); // |N(g)| = 2

    CHECK(house(K.from_rational(5), 64).contains_mpq(5));
    CHECK_THROWS_AS(house(K.zero(), 64), InputError);
}

TEST_CASE("house encloses the embedding maxima and tightens monotonically") {
    NumberField K = x4m2();
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        FieldElement g = random_elem(K, rng);
        if (g.is_zero()) continue;
        RealInterval h64 = house(g, 64);
        RealInterval h256 = house(g, 256);
        // refinement stays inside the coarse enclosure
        CHECK(mpfr_cmp(h256.lo(), h64.lo()) >= 0);
        CHECK(mpfr_cmp(h256.hi(), h64.hi()) <= 0);
        EmbeddingValues ev = embeddings(g, 64);
        for (const auto& b : ev.values) CHECK(b.abs().le(h64) != Tri::False);
    }
}

TEST_CASE("char/min polynomials against the cofactor oracle") {
    NumberField K = x3m2();
    FieldElement g = elem(K, {0, -1, 1}); // alpha^2 - alpha
    CharMin cm = char_min_poly(g);
    CHECK(cm.delta == 3);
    CHECK(cm.min_primitive == ZPoly{-2, 6, 0, 1}); // X^3 + 6X - 2
    CHECK(cm.char_monic == charpoly_cofactor(g));

    CHECK(char_min_poly(K.generator()).min_primitive == ZPoly{-2, 0, 0, 1});
    CharMin c1 = char_min_poly(K.one());
    CHECK(c1.delta == 1);
    CHECK(c1.min_primitive == ZPoly{-1, 1}); // X - 1

    // rational element: char = (X - q)^d
    CharMin ch = char_min_poly(K.from_rational(mpq_class(3, 2)));
    CHECK(ch.delta == 1);
    CHECK(ch.min_primitive == ZPoly{-3, 2}); // 2X - 3

    // non-primitive element of the quartic: delta = 2
    NumberField Q = x4m2();
    CharMin c2 = char_min_poly(elem(Q, {0, 0, 1, 0})); // alpha^2 = sqrt2
    CHECK(c2.delta == 2);
    CHECK(c2.min_primitive == ZPoly{-2, 0, 1});

    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        FieldElement g2 = random_elem(K, rng, 5);
        CHECK(char_min_poly(g2).char_monic == charpoly_cofactor(g2));
    }
}

TEST_CASE("min-poly roots match the embedding balls with multiplicity d/delta") {
    NumberField Q = x4m2();
    FieldElement g = elem(Q, {1, 0, 1, 0}); // 1 + sqrt2, delta 2
    CharMin cm = char_min_poly(g);
    REQUIRE(cm.delta == 2);
    EmbeddingValues ev = embeddings(g, 128);
    // every embedding value is a root of min
    for (const auto& b : ev.values) CHECK(poly::eval_ball(cm.min_primitive, b).contains_zero());
}

TEST_CASE("norms") {
    NumberField K = x3m2();
    CHECK(norm(elem(K, {-1, 1, 0})) == 1); // alpha - 1
    CHECK(norm(K.generator()) == 2);
    CHECK(norm(K.zero()) == 0);
    CHECK(norm(K.from_rational(mpq_class(-5, 3))) == mpq_class(-125, 27));

    std::mt19937_64 rng(13);
    for (int t = 0; t < 200; ++t) {
        FieldElement a = random_elem(K, rng, 4);
        FieldElement b = random_elem(K, rng, 4);
        CHECK(norm(a * b) == norm(a) * norm(b));
    }
}

TEST_CASE("absolute logarithmic heights") {
    NumberField K = x3m2();
    // h(alpha) = (1/3) log 2: 3h encloses log 2, i.e. exp(3h) contains 2
    RealInterval h = abs_log_height(K.generator(), 192);
    CHECK(h.mul_long(3).exp().contains_mpq(2));
    CHECK(h.width_d() < 1e-40);

    RealInterval h1 = abs_log_height(elem(K, {-1, 1, 0}), 128);
    CHECK(std::fabs(h1.mid_d() - 0.449124) < 1e-5);

    CHECK(abs_log_height(K.one(), 64).contains_mpq(0));
    CHECK(abs_log_height(K.from_rational(-1), 64).contains_mpq(0));
    CHECK_THROWS_AS(abs_log_height(K.zero(), 64), InputError);
}

TEST_CASE("height identities on random elements") {
    NumberField K = x3m2();
    std::mt19937_64 rng(17);
    for (int t = 0; t < 15; ++t) {
        FieldElement g = random_elem(K, rng, 6);
        if (g.is_zero()) continue;
        RealInterval hg = abs_log_height(g, 160);
        RealInterval hg2 = abs_log_height(g * g, 160);
        // h(g^2) = 2 h(g): the enclosures must overlap
        RealInterval two_hg = hg.mul_long(2);
        CHECK(two_hg.le(hg2) != Tri::False);
        CHECK(hg2.le(two_hg) != Tri::False);

        mpq_class q(3, 7);
        RealInterval hq = abs_log_height(g.scale(q), 160);
        RealInterval bound = hg + RealInterval::from_long(7, 160).log();
        CHECK(hq.le(bound) != Tri::False);
    }
}

TEST_CASE("unit detection") {
    NumberField K = x3m2();
    CHECK(is_unit(elem(K, {-1, 1, 0})));   // alpha - 1, min X^3+3X^2+3X-1
    CHECK(!is_unit(K.generator()));        // norm 2
    CHECK(is_unit(K.from_rational(-1)));
    CHECK(!is_unit(K.from_rational(0)));
    CHECK(!is_unit(K.from_rational(mpq_class(1, 2))));
}

TEST_CASE("unit detection signs") {
    NumberField K = x3m2();
    // N(1+alpha) = (-1)^3 f(-1)/a0 = -(-3) = 3: not a unit
    CHECK(norm(elem(K, {1, 1, 0})) == 3);
    CHECK(!is_unit(elem(K, {1, 1, 0})));
    // units may have non-integral power-basis coordinates in general; a
    // rational-coordinate integer test: (alpha-1)^-1 is a unit too
    CHECK(is_unit(elem(K, {-1, 1, 0}).inverse()));
}
