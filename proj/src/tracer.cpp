#include "thuelab/tracer.hpp"

#include <algorithm>
#include <array>
#include <iterator>

namespace thuelab {

namespace {

RealInterval tighten_height(const FieldElement& g, const PrecPolicy& pp, double target = 1e-10) {
    long p = pp.start;
    RealInterval h = abs_log_height(g, p);
    while (h.width_d() > target && p < pp.max) {
        p = std::min(p * 2, pp.max);
        h = abs_log_height(g, p);
    }
    return h;
}

RealInterval max1(const RealInterval& x) {
    return x.max_with(RealInterval::from_long(1, x.prec()));
}

} // namespace

SolutionTrace trace(const UnitGroupBasis& basis, const FieldElement& alpha,
                    const SolutionRecord& sol, const mpq_class& nu, const mpz_class& m,
                    const PrecPolicy& pp, const TraceParams& params) {
    const NumberField& K = basis.field();
    int d = K.degree();
    if (sol.x == 0 || sol.y == 0) throw InputError("trace requires xy != 0");

    SolutionTrace tr;
    tr.solution = sol;
    tr.A = sol.e.A();

    FieldElement eps = unit_from_exponent(basis, sol.e);
    FieldElement ae = alpha * eps;
    FieldElement beta = K.from_rational(mpq_class(sol.x)) - ae.scale(mpq_class(sol.y));
    if (beta.is_zero()) throw InternalError("beta = x - alpha eps y vanished with xy != 0");

    tr.A_tilde = max1(tighten_height(ae, pp));
    tr.B_tilde = max1(tighten_height(beta, pp));
    tr.beta_dec = decompose_beta(basis, beta, pp);
    tr.B = tr.beta_dec->B;
    tr.privileged = privileged(ae, beta, nu, pp);
    const PrivilegedEmbeddings& pe = tr.privileged;
    long prec = pe.prec;

    // regime: min(A, B) vs c * log m (c from the conjugate-size lemma)
    {
        RealInterval c = basis.c_lemma4(prec);
        RealInterval logm = m >= 2 ? RealInterval::from_mpz(m, prec).log()
                                   : RealInterval::from_long(0, prec);
        tr.regime_threshold = c * logm;
        RealInterval minab = RealInterval::from_long(std::min(tr.A, tr.B), prec);
        tr.small_regime = minab.lt(tr.regime_threshold);
    }

    EmbeddingValues eva = embeddings(ae, prec);
    EmbeddingValues evb = embeddings(beta, prec);
    RealInterval absx = RealInterval::from_mpz(abs(sol.x), prec);
    RealInterval absy = RealInterval::from_mpz(abs(sol.y), prec);
    RealInterval two = RealInterval::from_long(2, prec);

    auto add_margin = [&](std::string id, RealInterval lhs, RealInterval rhs, Tri holds,
                          std::string note = "") {
        tr.margins.push_back(Margin{std::move(id), std::move(lhs), std::move(rhs), holds,
                                    std::move(note)});
    };

    // (i) |y sigma_a(alpha eps)| <= 4 |sigma_b(beta)|
    {
        RealInterval lhs = absy * pe.mod_alpha_eps[pe.sigma_a];
        RealInterval rhs = pe.mod_beta[pe.sigma_b].mul_long(4);
        add_margin("lemma8_majysigmaa", lhs, rhs, lhs.le(rhs));
    }
    // (ii) |tau_b(alpha eps)| <= 2
    {
        RealInterval lhs = pe.mod_alpha_eps[pe.tau_b];
        add_margin("lemma11_taub_alphaeps", lhs, two, lhs.le(two));
    }
    // (iii) singletons
    {
        Tri tb = pe.borderline.empty()
                     ? (pe.T_b == std::vector<int>{pe.tau_b} ? Tri::True : Tri::False)
                     : Tri::Unknown;
        add_margin("lemma10_Tb_singleton", RealInterval::from_long((long)pe.T_b.size(), prec),
                   RealInterval::from_long(1, prec), tb, "T_b(nu) == {tau_b}");
        Tri sa = pe.borderline.empty()
                     ? (pe.Sigma_a == std::vector<int>{pe.sigma_a} ? Tri::True : Tri::False)
                     : Tri::Unknown;
        add_margin("cor14_Sigmaa_singleton", RealInterval::from_long((long)pe.Sigma_a.size(), prec),
                   RealInterval::from_long(1, prec), sa, "Sigma_a(nu) == {sigma_a}");
    }
    // (v) disjointness under the size conditions
    {
        mpq_class half(1, 2);
        Tri size_a = pe.house_alpha_eps.ge_q(2) == Tri::True &&
                             pe.min_alpha_eps.le_q(half) == Tri::True
                         ? Tri::True
                         : Tri::False;
        std::vector<int> inter;
        std::set_intersection(pe.T_a.begin(), pe.T_a.end(), pe.Sigma_a.begin(), pe.Sigma_a.end(),
                              std::back_inserter(inter));
        Tri verdict = pe.borderline.empty() ? (inter.empty() ? Tri::True : Tri::False)
                                            : Tri::Unknown;
        add_margin("sec5_disjoint_Ta_Sigmaa", RealInterval::from_long((long)inter.size(), prec),
                   RealInterval::zero(prec), verdict,
                   size_a == Tri::True ? "size conditions hold" : "size conditions not verified");
        inter.clear();
        Tri size_b = pe.house_beta.ge_q(2) == Tri::True && pe.min_beta.le_q(half) == Tri::True
                         ? Tri::True
                         : Tri::False;
        std::set_intersection(pe.T_b.begin(), pe.T_b.end(), pe.Sigma_b.begin(), pe.Sigma_b.end(),
                              std::back_inserter(inter));
        verdict = pe.borderline.empty() ? (inter.empty() ? Tri::True : Tri::False) : Tri::Unknown;
        add_margin("sec5_disjoint_Tb_Sigmab", RealInterval::from_long((long)inter.size(), prec),
                   RealInterval::zero(prec), verdict,
                   size_b == Tri::True ? "size conditions hold" : "size conditions not verified");
    }
    // (iv) per-embedding small/large comparisons against tau_b
    {
        RealInterval lam = RealInterval::from_mpq(params.lambda, prec);
        RealInterval muv = RealInterval::from_mpq(params.mu, prec);
        RealInterval taub_ae = pe.mod_alpha_eps[pe.tau_b];
        RealInterval taub_b = pe.mod_beta[pe.tau_b];
        for (int i = 0; i < d; ++i) {
            Tri hyp_a = pe.mod_alpha_eps[i].le(lam * taub_ae);
            std::string id = "lemma12a_phi" + std::to_string(i);
            if (hyp_a == Tri::True) {
                RealInterval lhs = (evb.values[i] - ComplexBall::from_mpq(mpq_class(sol.x), 0, prec)).abs();
                RealInterval rhs = lam * absx + lam * taub_b;
                add_margin(id, lhs, rhs, lhs.le(rhs));
            } else {
                add_margin(id, pe.mod_alpha_eps[i], lam * taub_ae, Tri::True,
                           hyp_a == Tri::False ? "hypothesis not satisfied"
                                               : "hypothesis borderline");
            }
            Tri hyp_b = (muv * taub_ae).le(pe.mod_alpha_eps[i]);
            id = "lemma12b_phi" + std::to_string(i);
            if (hyp_b == Tri::True) {
                ComplexBall yb = ComplexBall::from_mpq(mpq_class(sol.y), 0, prec);
                RealInterval lhs = (evb.values[i] + eva.values[i] * yb).abs();
                RealInterval rhs = (pe.mod_alpha_eps[i] * absy) / muv + taub_b;
                add_margin(id, lhs, rhs, lhs.le(rhs));
            } else {
                add_margin(id, pe.mod_alpha_eps[i], muv * taub_ae, Tri::True,
                           hyp_b == Tri::False ? "hypothesis not satisfied"
                                               : "hypothesis borderline");
            }
        }
    }
    // height-vs-exponent sandwiches with computed constants
    {
        RealInterval c2 = basis.sum_unit_heights(prec);
        RealInterval h_alpha = tighten_height(alpha, pp);
        RealInterval upA = c2.mul_long(tr.A) + h_alpha + RealInterval::from_long(1, prec);
        add_margin("sandwich_Atilde_upper", tr.A_tilde, upA, tr.A_tilde.le(upA),
                   "A~ <= (sum h(eps_j)) A + h(alpha) + 1");
        RealInterval c1 = basis.c_lemma4(prec).div_long(d);
        EmbeddingValues ev_alpha = embeddings(alpha, prec);
        RealInterval min_alpha = ev_alpha.values[0].abs();
        for (int i = 1; i < d; ++i) min_alpha = min_alpha.min_with(ev_alpha.values[i].abs());
        RealInterval slack = (-min_alpha.log()).max_with(RealInterval::zero(prec)).div_long(d);
        RealInterval loA = c1.mul_long(tr.A) - slack;
        add_margin("sandwich_Atilde_lower", loA, tr.A_tilde, loA.le(tr.A_tilde),
                   "c A - slack <= A~ with c from the conjugate-size lemma");

        const FieldElement& rho = tr.beta_dec->rho;
        RealInterval h_rho = tr.beta_dec->rho_height;
        RealInterval upB = c2.mul_long(tr.B) + h_rho + RealInterval::from_long(1, prec);
        add_margin("sandwich_Btilde_upper", tr.B_tilde, upB, tr.B_tilde.le(upB),
                   "B~ <= (sum h(eps_j)) B + h(rho) + 1");
        EmbeddingValues evr = embeddings(rho, prec);
        RealInterval min_rho = evr.values[0].abs();
        for (int i = 1; i < d; ++i) min_rho = min_rho.min_with(evr.values[i].abs());
        Tri lowB_ok = Tri::Unknown;
        RealInterval loB = RealInterval::zero(prec);
        if (min_rho.is_positive()) {
            loB = c1.mul_long(tr.B) - (-min_rho.log()).max_with(RealInterval::zero(prec)).div_long(d);
            lowB_ok = loB.le(tr.B_tilde);
        }
        add_margin("sandwich_Btilde_lower", loB, tr.B_tilde, lowB_ok,
                   "c B - slack <= B~ with rho-dependent slack");
        // Eq.(5)-style bound on h(rho) through the Babai witness
        RealInterval mu_b = basis.mu_babai(prec);
        mpq_class absnorm = abs(norm(beta));
        RealInterval rho_bound =
            RealInterval::from_mpq(absnorm, prec).log().div_long(d).max_with(RealInterval::zero(prec)) + mu_b;
        add_margin("rho_height_babai", h_rho, rho_bound, h_rho.le(rho_bound),
                   "h(rho) <= (1/d) log|N(beta)| + mu");
    }

    // linear forms
    {
        auto ratio_entry = [&](const std::string& id, int p1, int p2, int p3, int p4,
                               std::string note) {
            LinearFormEntry ent;
            ent.id = id;
            ent.phis = {p1, p2, p3, p4};
            ent.note = std::move(note);
            try {
                ComplexBall num = eva.values[p1] * evb.values[p2];
                ComplexBall den = eva.values[p3] * evb.values[p4];
                ComplexBall ratio = num / den - ComplexBall::from_long(1, 0, prec);
                ent.value = ratio.abs();
                ent.degenerate = ent.value.contains_zero() && !(p1 == p3 && p2 == p4);
                if (p1 == p3 && p2 == p4) {
                    ent.degenerate = true;
                    ent.note += " (identical tuple, excluded by hypothesis)";
                }
            } catch (const IntervalDomainError&) {
                ent.degenerate = true;
                ent.note += " (denominator range contains 0)";
            }
            RealInterval logm = m >= 2 ? RealInterval::from_mpz(m, prec).log()
                                       : RealInterval::from_long(1, prec);
            ent.witness = RealInterval::from_long(2, prec) +
                          RealInterval::from_long(tr.A + tr.B, prec) / logm;
            tr.linear_forms.push_back(std::move(ent));
        };
        ratio_entry("lemma7_default", pe.sigma_a, pe.sigma_b, pe.tau_a, pe.tau_b,
                    "witness is C = 2 + (A+B)/log m; no lower bound asserted");
        for (const auto& t : params.tuples)
            ratio_entry("lemma7_user", t[0], t[1], t[2], t[3],
                        "witness is C = 2 + (A+B)/log m; no lower bound asserted");

        // Eq.(10) left side and its right-side witness, one entry per phi
        for (int i = 0; i < d; ++i) {
            if (i == pe.sigma_b || i == pe.tau_b) continue;
            LinearFormEntry ent;
            ent.id = "eq10_phi" + std::to_string(i);
            ent.phis = {i, pe.sigma_b, pe.tau_b, -1};
            try {
                ComplexBall dphi = eva.values[i] - eva.values[pe.tau_b];
                ComplexBall lhs = (evb.values[i] / evb.values[pe.sigma_b]) *
                                      ((eva.values[pe.sigma_b] - eva.values[pe.tau_b]) / dphi) -
                                  ComplexBall::from_long(1, 0, prec);
                ent.value = lhs.abs();
                ComplexBall delta = (eva.values[i] - eva.values[pe.sigma_b]) / dphi;
                ent.witness = (evb.values[pe.tau_b] / evb.values[pe.sigma_b]).abs() * delta.abs();
                ent.note = "identity: value equals witness exactly";
            } catch (const IntervalDomainError&) {
                ent.degenerate = true;
                ent.note = "denominator range contains 0";
            }
            tr.linear_forms.push_back(std::move(ent));
        }
        // Lemma 10 display for phi in T_b(nu) \ {tau_b}
        for (int i : pe.T_b) {
            if (i == pe.tau_b) continue;
            LinearFormEntry ent;
            ent.id = "lemma10_phi" + std::to_string(i);
            ent.phis = {i, pe.tau_b, -1, -1};
            try {
                ComplexBall r = eva.values[i] / eva.values[pe.tau_b] - ComplexBall::from_long(1, 0, prec);
                ent.value = r.abs();
                ent.witness = pe.mod_beta[i].mul_long(4);
                RealInterval alt = (-(basis.c_lemma4(prec) * RealInterval::from_mpq(nu, prec))
                                        .mul_long(tr.B)).exp().mul_long(4);
                ent.note = "witness 4|phi(beta)|; 4 e^{-c nu B} = " + alt.mid_rad_strings().first;
            } catch (const IntervalDomainError&) {
                ent.degenerate = true;
                ent.note = "denominator range contains 0";
            }
            tr.linear_forms.push_back(std::move(ent));
        }
    }

    // six-term unit-equation residuals over all embedding triples
    {
        tr.six_terms_contain_zero = true;
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = j + 1; k < d; ++k) {
                    ComplexBall u[3] = {eva.values[i], eva.values[j], eva.values[k]};
                    ComplexBall v[3] = {evb.values[i], evb.values[j], evb.values[k]};
                    ComplexBall res = six_term_residual(u, v);
                    if (!res.contains_zero()) tr.six_terms_contain_zero = false;
                    tr.six_term_max_width =
                        std::max(tr.six_term_max_width, 2.0 * res.rad_d());
                }
        if (!tr.six_terms_contain_zero) ++tr.internal_inconsistencies;
    }

    return tr;
}

} // namespace thuelab
