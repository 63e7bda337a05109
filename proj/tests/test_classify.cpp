#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "thuelab/classify.hpp"

using namespace thuelab;

namespace {

NumberField x3m2() { return NumberField::load({1, 0, 0, -2}); }

FieldElement elem(const NumberField& K, std::initializer_list<long> c) {
    std::vector<mpq_class> v;
    for (long x : c) v.emplace_back(x);
    v.resize(K.degree(), mpq_class(0));
    return K.element(v);
}

UnitGroupBasis basis_x3m2(const NumberField& K) {
    return validate_basis(K, {elem(K, {-1, 1, 0})}, 2, K.from_rational(-1));
}

} // namespace

TEST_CASE("classification of eps = alpha - 1 at nu = 1/2") {
    NumberField K = x3m2();
    UnitGroupBasis b = basis_x3m2(K);
    PrecPolicy pp;
    ClassificationRecord rec = classify_unit(b, K.generator(), {0, {1}}, mpq_class(1, 2), pp);
    CHECK(rec.in_E);
    CHECK(rec.delta == 3);
    CHECK(rec.in_E_nu == Tri::True);
    // the conjugate complex pair attains the house: witnesses are the pair
    CHECK(rec.witness1 == 1);
    CHECK(rec.witness2 == 2);
    // inverse house 3.0536 attained only at the real embedding; second
    // largest modulus 0.40465 < sqrt(3.0536)
    CHECK(rec.in_tilde_E_nu == Tri::False);
    CHECK(std::fabs(rec.house_alpha_eps.mid_d() - 2.4713) < 1e-3);
}

TEST_CASE("identity unit is in E; negative powers leave E_nu") {
    NumberField K = x3m2();
    UnitGroupBasis b = basis_x3m2(K);
    PrecPolicy pp;
    ClassificationRecord rid = classify_unit(b, K.generator(), {0, {0}}, mpq_class(1, 2), pp);
    CHECK(rid.in_E);
    CHECK(rid.in_E_nu == Tri::True); // house(alpha) attained at the pair

    // alpha eps^-1 attains its house at the real embedding; the others are
    // too small for nu = 1/2
    ClassificationRecord rneg = classify_unit(b, K.generator(), {0, {-1}}, mpq_class(1, 2), pp);
    CHECK(rneg.in_E);
    CHECK(rneg.in_E_nu == Tri::False);
    CHECK(rneg.in_tilde_E_nu == Tri::False);
}

TEST_CASE("house <= 1 units are flagged out of the nu tests") {
    // alpha = root of x^3 - 2 has house 1.26; no unit makes house(alpha eps)
    // <= 1 here except none... use the cyclotomic field where alpha is a root
    // of unity: house(alpha * 1) = 1.
    NumberField C = NumberField::load({1, 1, 1, 1, 1});
    UnitGroupBasis b = validate_basis(C, {C.element({mpq_class(0), mpq_class(0), mpq_class(-1), mpq_class(-1)})},
                                      10, C.element({mpq_class(0), mpq_class(-1), mpq_class(0), mpq_class(0)}));
    PrecPolicy pp;
    ClassificationRecord rec = classify_unit(b, C.generator(), {0, {0}}, mpq_class(1, 2), pp);
    CHECK(!rec.nu_tests_applicable);
    CHECK(!rec.flag.empty());
}

TEST_CASE("family classification: nesting and monotonicity in nu") {
    NumberField K = x3m2();
    UnitGroupBasis b = basis_x3m2(K);
    PrecPolicy pp;
    mpq_class N(50);
    FamilyClassification f4 = classify_family(b, K.generator(), N, mpq_class(2, 5), pp);
    FamilyClassification f7 = classify_family(b, K.generator(), N, mpq_class(7, 10), pp);
    CHECK(f4.counts.total == f7.counts.total);
    CHECK(f4.counts.total > 0);
    // nesting
    CHECK(f4.counts.tilde_E_nu <= f4.counts.E_nu);
    CHECK(f4.counts.E_nu <= f4.counts.E);
    CHECK(f4.counts.E <= f4.counts.total);
    // monotonicity: larger nu tightens the sets
    CHECK(f7.counts.E_nu <= f4.counts.E_nu);
    CHECK(f7.counts.tilde_E_nu <= f4.counts.tilde_E_nu);
    CHECK(f4.counts.borderline == 0);

    // counts monotone in N
    FamilyClassification f_small = classify_family(b, K.generator(), mpq_class(10), mpq_class(2, 5), pp);
    CHECK(f_small.counts.total <= f4.counts.total);
    CHECK(f_small.counts.E_nu <= f4.counts.E_nu);

    // per-record nesting
    for (const auto& rec : f4.records) {
        if (rec.in_tilde_E_nu == Tri::True) CHECK(rec.in_E_nu == Tri::True);
        if (rec.in_E_nu == Tri::True) CHECK(rec.in_E);
    }
}

TEST_CASE("inversion symmetry of the tilde set") {
    NumberField K = x3m2();
    UnitGroupBasis b = basis_x3m2(K);
    PrecPolicy pp;
    FieldElement alpha = K.generator();
    FieldElement alpha_inv = alpha.inverse();
    for (long k = -6; k <= 6; ++k) {
        UnitExponent e{0, {k}};
        UnitExponent einv{0, {-k}};
        ClassificationRecord a = classify_unit(b, alpha, e, mpq_class(1, 2), pp);
        ClassificationRecord c = classify_unit(b, alpha_inv, einv, mpq_class(1, 2), pp);
        if (!a.nu_tests_applicable || !c.nu_tests_applicable) continue;
        CHECK(a.in_tilde_E_nu == c.in_tilde_E_nu);
    }
}

TEST_CASE("privileged embeddings on the traced solution (1, 3, alpha-1)") {
    NumberField K = x3m2();
    FieldElement ae = K.generator() * elem(K, {-1, 1, 0});
    FieldElement beta = K.from_rational(1) - ae.scale(3);
    PrecPolicy pp;
    PrivilegedEmbeddings pe = privileged(ae, beta, mpq_class(1, 2), pp);
    CHECK(pe.tau_b == 0); // the real embedding, matching "tau_b is then real"
    CHECK(pe.sigma_b == 1);
    CHECK(pe.sigma_a == 1);
    CHECK(pe.tau_a == 0);
    CHECK(pe.tau_b_ne_sigma_b);
    CHECK(pe.tau_a_ne_sigma_a);
    CHECK(std::fabs(pe.mod_beta[0].mid_d() - 0.017559) < 1e-5);
    CHECK(std::fabs(pe.mod_beta[1].mid_d() - 7.546400) < 1e-4);
    CHECK(std::fabs(pe.mod_alpha_eps[0].mid_d() - 0.327480) < 1e-5);
    // T_b(1/2) = {tau_b}: the complex moduli are way above |tau_b(beta)|^nu
    CHECK(pe.T_b == std::vector<int>{0});
    // sigma_a's conjugate partner shares the maximum: Sigma_a = {1, 2}
    CHECK(pe.Sigma_a == std::vector<int>{1, 2});
    CHECK(pe.borderline.empty());

    // privileged bounds: tau <= phi <= sigma for every embedding
    for (int i = 0; i < 3; ++i) {
        CHECK(pe.mod_alpha_eps[pe.tau_a].le(pe.mod_alpha_eps[i]) != Tri::False);
        CHECK(pe.mod_alpha_eps[i].le(pe.mod_alpha_eps[pe.sigma_a]) != Tri::False);
        CHECK(pe.mod_beta[pe.tau_b].le(pe.mod_beta[i]) != Tri::False);
        CHECK(pe.mod_beta[i].le(pe.mod_beta[pe.sigma_b]) != Tri::False);
    }
}

TEST_CASE("degenerate rational beta: full sets and lowest-index tie-break") {
    NumberField K = x3m2();
    FieldElement ae = K.generator() * elem(K, {-1, 1, 0});
    PrecPolicy pp;
    PrivilegedEmbeddings pe = privileged(ae, K.one(), mpq_class(1, 2), pp);
    CHECK(pe.sigma_b == 0);
    CHECK(pe.tau_b == 0);
    CHECK(!pe.tau_b_ne_sigma_b);
    // |beta| = 1 everywhere: both threshold conditions hold with equality
    CHECK(pe.Sigma_b == std::vector<int>{0, 1, 2});
    CHECK(pe.T_b == std::vector<int>{0, 1, 2});
}

TEST_CASE("Sigma_a shrinks as nu grows") {
    NumberField K = x3m2();
    FieldElement ae = K.generator() * elem(K, {-1, 1, 0}).pow(-2);
    FieldElement beta = K.from_rational(1) - ae.scale(2);
    PrecPolicy pp;
    PrivilegedEmbeddings lo = privileged(ae, beta, mpq_class(1, 10), pp);
    PrivilegedEmbeddings hi = privileged(ae, beta, mpq_class(9, 10), pp);
    CHECK(std::includes(lo.Sigma_a.begin(), lo.Sigma_a.end(), hi.Sigma_a.begin(), hi.Sigma_a.end()));
    CHECK(std::includes(lo.Sigma_b.begin(), lo.Sigma_b.end(), hi.Sigma_b.begin(), hi.Sigma_b.end()));
}

TEST_CASE("arg extremum tie-break picks the lowest index") {
    NumberField K = x3m2();
    PrecPolicy pp;
    // rational element: all moduli equal, candidates never separate
    CHECK(arg_extreme_modulus(K.from_rational(7), true, pp) == 0);
    CHECK(arg_extreme_modulus(K.from_rational(7), false, pp) == 0);
    // complex pair attains the maximum for alpha(alpha-1): indices 1,2 tie
    FieldElement ae = K.generator() * elem(K, {-1, 1, 0});
    CHECK(arg_extreme_modulus(ae, true, pp) == 1);
    CHECK(arg_extreme_modulus(ae, false, pp) == 0);
}
