#include "thuelab/classify.hpp"

#include <algorithm>

namespace thuelab {

namespace {

std::vector<RealInterval> moduli_of(const FieldElement& g, long prec) {
    EmbeddingValues ev = embeddings(g, prec);
    std::vector<RealInterval> m;
    m.reserve(ev.values.size());
    for (const auto& b : ev.values) m.push_back(b.abs());
    return m;
}

// Conjugate partner of an embedding index, -1 for real embeddings.
int conj_partner(const NumberField& K, int i) {
    int r1 = K.r1(), r2 = K.r2();
    if (i < r1) return -1;
    if (i < r1 + r2) return i + r2;
    return i - r2;
}

// Candidate set for the extremum at one precision: indices whose modulus is
// not provably beaten by another.
std::vector<int> extremum_candidates(const std::vector<RealInterval>& mods, bool maximize) {
    size_t n = mods.size();
    // best provable bound over all entries
    Mp bound(mods[0].prec());
    bool first = true;
    for (const auto& m : mods) {
        mpfr_srcptr b = maximize ? m.lo() : m.hi();
        if (first || (maximize ? mpfr_cmp(b, bound.get()) > 0 : mpfr_cmp(b, bound.get()) < 0)) {
            mpfr_set(bound.get(), b, MPFR_RNDN);
            first = false;
        }
    }
    std::vector<int> c;
    for (size_t i = 0; i < n; ++i) {
        mpfr_srcptr edge = maximize ? mods[i].hi() : mods[i].lo();
        bool alive = maximize ? mpfr_cmp(edge, bound.get()) >= 0
                              : mpfr_cmp(edge, bound.get()) <= 0;
        if (alive) c.push_back((int)i);
    }
    return c;
}

// True when the remaining candidates form one conjugate pair: their moduli
// are equal by construction, so no precision separates them.
bool only_structural_ties(const NumberField& K, const std::vector<int>& cand) {
    if (cand.size() == 1) return true;
    if (cand.size() == 2) return conj_partner(K, cand[0]) == cand[1];
    return false;
}

int arg_extreme_from(const NumberField& K, const FieldElement& g, bool maximize,
                     const PrecPolicy& pp) {
    std::vector<int> cand;
    for (long p = pp.start;; p = std::min(p * 2, pp.max)) {
        cand = extremum_candidates(moduli_of(g, p), maximize);
        if (cand.size() == 1 || only_structural_ties(K, cand)) break;
        if (p >= pp.max) break; // tie-break below; attained value is what matters
    }
    return *std::min_element(cand.begin(), cand.end());
}

} // namespace

int arg_extreme_modulus(const FieldElement& g, bool maximize, const PrecPolicy& pp) {
    return arg_extreme_from(g.field(), g, maximize, pp);
}

namespace {

// Tri-state: |phi| >= base^nu, escalating the shared precision.
struct ThresholdTest {
    const FieldElement* elem;
    mpq_class nu;

    // compare every modulus against house^nu / min^nu at precision p
    struct Row {
        std::vector<Tri> ge_house_nu; // mods[i] >= house^nu
        std::vector<Tri> le_min_nu;   // mods[i] <= min^nu
        std::vector<RealInterval> mods;
        RealInterval house, minmod;
        Row(long prec, size_t n)
            : ge_house_nu(n, Tri::Unknown), le_min_nu(n, Tri::Unknown),
              house(prec), minmod(prec) {}
    };

    Row eval(long p) const {
        std::vector<RealInterval> mods = moduli_of(*elem, p);
        Row row(p, mods.size());
        row.mods = mods;
        row.house = mods[0];
        row.minmod = mods[0];
        for (size_t i = 1; i < mods.size(); ++i) {
            row.house = row.house.max_with(mods[i]);
            row.minmod = row.minmod.min_with(mods[i]);
        }
        if (elem->is_rational()) {
            // all moduli equal |q| exactly: x >= x^nu iff x >= 1, decidable
            mpq_class q = abs(elem->coords()[0]);
            Tri ge = q >= 1 ? Tri::True : Tri::False;
            Tri le = q <= 1 ? Tri::True : Tri::False;
            for (size_t i = 0; i < mods.size(); ++i) {
                row.ge_house_nu[i] = ge;
                row.le_min_nu[i] = le;
            }
            return row;
        }
        RealInterval nu_i = RealInterval::from_mpq(nu, p);
        try {
            RealInterval th_hi = row.house.pow_exact(nu_i);
            for (size_t i = 0; i < mods.size(); ++i) {
                Tri t = th_hi.le(mods[i]);
                row.ge_house_nu[i] = t;
            }
        } catch (const IntervalDomainError&) {
            // house range touches 0; leave Unknown
        }
        try {
            RealInterval th_lo = row.minmod.pow_exact(nu_i);
            for (size_t i = 0; i < mods.size(); ++i) row.le_min_nu[i] = mods[i].le(th_lo);
        } catch (const IntervalDomainError&) {
        }
        return row;
    }
};

} // namespace

ClassificationRecord classify_unit(const UnitGroupBasis& basis, const FieldElement& alpha,
                                   const UnitExponent& e, const mpq_class& nu,
                                   const PrecPolicy& pp) {
    if (!(nu > 0 && nu < 1)) throw InputError("nu must satisfy 0 < nu < 1");
    const NumberField& K = basis.field();
    int d = K.degree();
    int r1 = K.r1();

    ClassificationRecord rec;
    rec.e = e;
    rec.nu = nu;

    FieldElement u = unit_from_exponent(basis, e);
    FieldElement au = alpha * u;
    if (au.is_zero()) throw InputError("alpha*eps is zero");
    CharMin cm = char_min_poly(au);
    rec.delta = cm.delta;
    rec.in_E = (cm.delta == d);
    rec.house_alpha_eps = house(au, pp.start);

    // nu-threshold tests need house > 1
    Tri big = Tri::Unknown;
    for (long p = pp.start; big == Tri::Unknown; p = std::min(p * 2, pp.max)) {
        rec.house_alpha_eps = house(au, p);
        big = RealInterval::from_long(1, p).lt(rec.house_alpha_eps);
        if (p >= pp.max) break;
    }
    if (big != Tri::True) {
        rec.nu_tests_applicable = false;
        rec.flag = big == Tri::False ? "house(alpha*eps) <= 1, nu-classification skipped"
                                     : "house(alpha*eps) vs 1 undecided at max precision";
        return rec;
    }

    // E_nu: the arg-max always witnesses |phi_1| = house; a second embedding
    // with modulus >= house^nu is automatic for a conjugate-pair maximum.
    auto decide_E_nu = [&](const FieldElement& g, int& w1, int& w2) -> Tri {
        int sa = arg_extreme_from(K, g, /*maximize=*/true, pp);
        w1 = sa;
        int partner = conj_partner(K, sa);
        if (partner >= 0) {
            w2 = partner;
            return Tri::True;
        }
        ThresholdTest tt{&g, nu};
        bool unknown_left = false;
        for (long p = pp.start;; p = std::min(p * 2, pp.max)) {
            ThresholdTest::Row row = tt.eval(p);
            unknown_left = false;
            for (int i = 0; i < d; ++i) {
                if (i == sa) continue;
                if (row.ge_house_nu[i] == Tri::True) {
                    w2 = i;
                    return Tri::True;
                }
                if (row.ge_house_nu[i] == Tri::Unknown) unknown_left = true;
            }
            if (!unknown_left) return Tri::False;
            if (p >= pp.max) return Tri::Unknown;
        }
    };

    (void)r1;
    if (rec.in_E) {
        rec.in_E_nu = decide_E_nu(au, rec.witness1, rec.witness2);
        if (rec.in_E_nu == Tri::True) {
            FieldElement inv = au.inverse();
            Tri inv_big = Tri::Unknown;
            for (long p = pp.start; inv_big == Tri::Unknown; p = std::min(p * 2, pp.max)) {
                inv_big = RealInterval::from_long(1, p).lt(house(inv, p));
                if (p >= pp.max) break;
            }
            if (inv_big == Tri::True) {
                int iw1 = -1, iw2 = -1;
                rec.in_tilde_E_nu = decide_E_nu(inv, iw1, iw2);
            } else if (inv_big == Tri::False) {
                rec.in_tilde_E_nu = Tri::False;
                rec.flag = "house((alpha*eps)^-1) <= 1, inverse nu-test skipped";
            } else {
                rec.in_tilde_E_nu = Tri::Unknown;
                rec.flag = "inverse house vs 1 undecided";
            }
        } else {
            rec.in_tilde_E_nu = rec.in_E_nu == Tri::False ? Tri::False : Tri::Unknown;
        }
    }
    if (rec.in_E_nu == Tri::Unknown || rec.in_tilde_E_nu == Tri::Unknown)
        if (rec.flag.empty()) rec.flag = "borderline nu-threshold at max precision";
    return rec;
}

PrivilegedEmbeddings privileged(const FieldElement& alpha_eps, const FieldElement& beta,
                                const mpq_class& nu, const PrecPolicy& pp) {
    if (alpha_eps.is_zero() || beta.is_zero()) throw InputError("privileged embeddings of zero");
    if (!(nu > 0 && nu < 1)) throw InputError("nu must satisfy 0 < nu < 1");
    const NumberField& K = alpha_eps.field();
    int d = K.degree();

    PrivilegedEmbeddings pe;
    pe.sigma_a = arg_extreme_from(K, alpha_eps, true, pp);
    pe.tau_a = arg_extreme_from(K, alpha_eps, false, pp);
    pe.sigma_b = arg_extreme_from(K, beta, true, pp);
    pe.tau_b = arg_extreme_from(K, beta, false, pp);
    pe.tau_a_ne_sigma_a = pe.tau_a != pe.sigma_a;
    pe.tau_b_ne_sigma_b = pe.tau_b != pe.sigma_b;

    ThresholdTest ta{&alpha_eps, nu}, tb{&beta, nu};
    std::vector<Tri> in_Sigma_a(d, Tri::Unknown), in_T_a(d, Tri::Unknown);
    std::vector<Tri> in_Sigma_b(d, Tri::Unknown), in_T_b(d, Tri::Unknown);
    long p = pp.start;
    for (;;) {
        ThresholdTest::Row ra = ta.eval(p), rb = tb.eval(p);
        bool unknown = false;
        for (int i = 0; i < d; ++i) {
            if (in_Sigma_a[i] == Tri::Unknown) in_Sigma_a[i] = ra.ge_house_nu[i];
            if (in_T_a[i] == Tri::Unknown) in_T_a[i] = ra.le_min_nu[i];
            if (in_Sigma_b[i] == Tri::Unknown) in_Sigma_b[i] = rb.ge_house_nu[i];
            if (in_T_b[i] == Tri::Unknown) in_T_b[i] = rb.le_min_nu[i];
            unknown = unknown || in_Sigma_a[i] == Tri::Unknown || in_T_a[i] == Tri::Unknown ||
                      in_Sigma_b[i] == Tri::Unknown || in_T_b[i] == Tri::Unknown;
        }
        if (!unknown || p >= pp.max) {
            pe.prec = p;
            pe.mod_alpha_eps = ra.mods;
            pe.mod_beta = rb.mods;
            pe.house_alpha_eps = ra.house;
            pe.min_alpha_eps = ra.minmod;
            pe.house_beta = rb.house;
            pe.min_beta = rb.minmod;
            break;
        }
        p = std::min(p * 2, pp.max);
    }
    for (int i = 0; i < d; ++i) {
        if (in_Sigma_a[i] == Tri::True) pe.Sigma_a.push_back(i);
        if (in_T_a[i] == Tri::True) pe.T_a.push_back(i);
        if (in_Sigma_b[i] == Tri::True) pe.Sigma_b.push_back(i);
        if (in_T_b[i] == Tri::True) pe.T_b.push_back(i);
        if (in_Sigma_a[i] == Tri::Unknown || in_T_a[i] == Tri::Unknown ||
            in_Sigma_b[i] == Tri::Unknown || in_T_b[i] == Tri::Unknown)
            pe.borderline.push_back(i);
    }
    if (!pe.borderline.empty()) pe.flag = "borderline threshold membership at max precision";
    return pe;
}

FamilyClassification classify_family(const UnitGroupBasis& basis, const FieldElement& alpha,
                                     const mpq_class& N, const mpq_class& nu,
                                     const PrecPolicy& pp) {
    if (!(N > 1)) throw InputError("house bound must exceed 1");
    FamilyClassification fc;
    EnumerationResult er = enumerate_units(basis, alpha, N, pp);
    fc.undecided_units = er.undecided;
    fc.box = er.box;
    for (const auto& eu : er.units) {
        ClassificationRecord rec = classify_unit(basis, alpha, eu.e, nu, pp);
        rec.house_alpha_eps = eu.house_alpha_u;
        ++fc.counts.total;
        if (rec.in_E) ++fc.counts.E;
        if (rec.in_E_nu == Tri::True) ++fc.counts.E_nu;
        if (rec.in_tilde_E_nu == Tri::True) ++fc.counts.tilde_E_nu;
        if (rec.in_E_nu == Tri::Unknown || rec.in_tilde_E_nu == Tri::Unknown)
            ++fc.counts.borderline;
        fc.records.push_back(std::move(rec));
    }
    return fc;
}

} // namespace thuelab
