#include "doctest.h"

#include <random>

#include "support/oracles.hpp"
#include "thuelab/forms.hpp"
#include "thuelab/roots.hpp"
#include "thuelab/units.hpp"

using namespace thuelab;

namespace {

NumberField x3m2() { return NumberField::load({1, 0, 0, -2}); }

FieldElement elem(const NumberField& K, std::initializer_list<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    v.resize(K.degree(), mpq_class(0));
    return K.element(v);
}

BinaryForm bf(std::initializer_list<long> desc) {
    BinaryForm f;
    for (long c : desc) f.coeffs.emplace_back(c);
    f.delta = (int)f.coeffs.size() - 1;
    return f;
}

} // namespace

TEST_CASE("twisted form golden examples") {
    NumberField K = x3m2();
    TwistedForm tf = twisted_form(K.generator(), elem(K, {-1, 1, 0}));
    CHECK(tf.delta == 3);
    CHECK(tf.form.coeffs == std::vector<mpz_class>{1, 0, 6, -2}); // X^3 + 6XY^2 - 2Y^3

    TwistedForm t1 = twisted_form(K.generator(), K.one());
    CHECK(t1.form.coeffs == std::vector<mpz_class>{1, 0, 0, -2});

    TwistedForm tm = twisted_form(K.generator(), K.from_rational(-1));
    CHECK(tm.form.coeffs == std::vector<mpz_class>{1, 0, 0, 2}); // X^3 + 2Y^3

    CHECK_THROWS_AS(twisted_form(K.generator(), K.generator()), InputError); // non-unit
}

TEST_CASE("twisted form cross-checked against the numeric root product") {
    NumberField K = x3m2();
    FieldElement ae = K.generator() * elem(K, {-1, 1, 0});
    TwistedForm tf = twisted_form(K.generator(), elem(K, {-1, 1, 0}));
    // prod (X - sigma_i(alpha eps) Y): multiply ball linear factors, compare
    // coefficients with the exact integers
    long prec = 256;
    EmbeddingValues ev = embeddings(ae, prec);
    std::vector<ComplexBall> coeff = {ComplexBall::from_long(1, 0, prec)};
    for (const auto& root : ev.values) {
        std::vector<ComplexBall> next(coeff.size() + 1, ComplexBall::from_long(0, 0, prec));
        for (size_t i = 0; i < coeff.size(); ++i) {
            next[i] = next[i] + coeff[i];
            next[i + 1] = next[i + 1] - coeff[i] * root;
        }
        coeff = std::move(next);
    }
    REQUIRE(coeff.size() == tf.form.coeffs.size());
    for (size_t i = 0; i < coeff.size(); ++i) {
        CHECK(coeff[i].real_part().contains_mpq(mpq_class(tf.form.coeffs[i])));
        CHECK(coeff[i].imag_part().contains_mpq(0));
        CHECK(coeff[i].rad_d() < 1e-20);
    }
}

TEST_CASE("exact evaluation") {
    BinaryForm f = bf({1, 0, 6, -2});
    CHECK(evaluate(f, 1, 3) == 1);
    CHECK(evaluate(bf({1, 0, 0, -2}), 1, 1) == -1);
    CHECK(evaluate(f, 0, 0) == 0);
    CHECK(evaluate(bf({3, -1, 2}), -4, 5) == 3 * 16 + 20 + 50);
}

TEST_CASE("reciprocal form") {
    BinaryForm f = bf({1, 0, 6, -2});
    BinaryForm r = reciprocal_form(f);
    CHECK(r.coeffs == std::vector<mpz_class>{2, -6, 0, -1}); // 2X^3 - 6X^2Y - Y^3
    CHECK(abs(evaluate(r, 3, 1)) == abs(evaluate(f, 1, 3)));

    CHECK(reciprocal_form(bf({1, 0, 0, -2})).coeffs == std::vector<mpz_class>{2, 0, 0, -1});
    BinaryForm pal = bf({1, 1, 1, 1});
    CHECK(reciprocal_form(pal) == pal);
    CHECK_THROWS_AS(reciprocal_form(bf({1, 2, 0})), InputError); // zero constant

    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> v(-40, 40);
    for (int t = 0; t < 50; ++t) {
        long x = v(rng), y = v(rng);
        CHECK(abs(evaluate(r, y, x)) == abs(evaluate(f, x, y)));
    }
}

TEST_CASE("norm bridge: F_eps(x,y) = a0' N(x - alpha eps y) (Eq. (2) shape)") {
    std::mt19937_64 rng(37);
    std::uniform_int_distribution<long> v(-50, 50);
    std::uniform_int_distribution<long> ex(-3, 3);
    for (auto coeffs : {std::vector<mpz_class>{1, 0, 0, -2}, std::vector<mpz_class>{1, 0, 0, 0, -2}}) {
        NumberField K = NumberField::load(coeffs);
        std::vector<FieldElement> units;
        if (K.degree() == 3) units = {elem(K, {-1, 1, 0})};
        else units = {elem(K, {-1, 1, 0, 0}), elem(K, {1, 0, 1, 0})};
        UnitGroupBasis basis = validate_basis(K, units, 2, K.from_rational(-1));
        for (int u = 0; u < 10; ++u) {
            UnitExponent e{u % 2, {}};
            e.exps.resize(basis.rank());
            for (auto& a : e.exps) a = ex(rng);
            FieldElement eps = unit_from_exponent(basis, e);
            TwistedForm tf = twisted_form(K.generator(), eps);
            if (tf.delta != K.degree()) continue;
            mpq_class lead(tf.form.coeffs.front());
            for (int t = 0; t < 10; ++t) {
                long x = v(rng), y = v(rng);
                FieldElement beta =
                    K.from_rational(x) - (K.generator() * eps).scale(mpq_class(y));
                mpq_class rhs = beta.is_zero() ? mpq_class(0) : lead * norm(beta);
                CHECK(mpq_class(evaluate(tf.form, x, y)) == rhs);
            }
        }
    }
}

TEST_CASE("torsion twist: |F_{-eps}(x, -y)| = |F_eps(x, y)| and equal houses") {
    NumberField K = x3m2();
    UnitGroupBasis basis = validate_basis(K, {elem(K, {-1, 1, 0})}, 2, K.from_rational(-1));
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<long> v(-30, 30);
    for (long k : {-2L, 0L, 1L, 3L}) {
        FieldElement eps = unit_from_exponent(basis, {0, {k}});
        TwistedForm tf = twisted_form(K.generator(), eps);
        TwistedForm tm = twisted_form(K.generator(), -eps);
        RealInterval h1 = house(K.generator() * eps, 128);
        RealInterval h2 = house(K.generator() * (-eps), 128);
        CHECK(h1.le(h2) != Tri::False);
        CHECK(h2.le(h1) != Tri::False);
        for (int t = 0; t < 20; ++t) {
            long x = v(rng), y = v(rng);
            CHECK(abs(evaluate(tm.form, x, -y)) == abs(evaluate(tf.form, x, y)));
        }
    }
}

TEST_CASE("delta divides d; non-primitive elements keep their true delta") {
    NumberField Q = NumberField::load({1, 0, 0, 0, -2});
    BinaryForm f2 = form_of_element(elem(Q, {0, 0, 1, 0})); // sqrt2
    CHECK(f2.delta == 2);
    CHECK(f2.coeffs == std::vector<mpz_class>{1, 0, -2});
    BinaryForm f1 = form_of_element(Q.from_rational(mpq_class(-7, 3)));
    CHECK(f1.delta == 1);
    CHECK(f1.coeffs == std::vector<mpz_class>{3, 7});
    CHECK(4 % form_of_element(elem(Q, {1, 1, 0, 0})).delta == 0);
}
