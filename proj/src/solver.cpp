#include "thuelab/solver.hpp"

#include <algorithm>
#include <set>

#include "thuelab/roots.hpp"

namespace thuelab {

namespace {

struct SolKey {
    mpz_class ay, ax, x, y;
    bool operator<(const SolKey& o) const {
        if (ay != o.ay) return ay < o.ay;
        if (ax != o.ax) return ax < o.ax;
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

SolKey key_of(const SolutionRecord& s) {
    return SolKey{abs(s.y), abs(s.x), s.x, s.y};
}

} // namespace

std::vector<SolutionRecord> solve_box(const BinaryForm& form, const mpz_class& m, long X,
                                      const UnitExponent& tag) {
    if (m < 0 || X < 1) throw InputError("solve_box needs m >= 0 and X >= 1");
    if (form.coeffs.empty() || form.coeffs.front() <= 0)
        throw InputError("form must have positive leading coefficient");
    int d = form.delta;
    ZPoly f(form.coeffs.rbegin(), form.coeffs.rend());
    poly::normalize_z(f);
    if (poly::degree_z(f) != d) throw InputError("degenerate form");

    // Candidate x per y: |F(x,y)| = b0 prod |x - theta_i y| <= m forces
    // min_i |x - theta_i y| <= (m / b0)^{1/d}, so x lies within R of some
    // Re(theta_i) y.  Root enclosures at modest precision, padded outward.
    ZPoly sf = poly::squarefree_part(f);
    RootSet rs = isolate_roots(sf, 96);
    long prec = 96;
    RealInterval R = (RealInterval::from_mpz(m, prec).max_with(RealInterval::from_long(1, prec)) /
                      RealInterval::from_mpz(form.coeffs.front(), prec))
                         .pow_exact(RealInterval::from_long(1, prec).div_long(d));

    std::vector<SolutionRecord> out;
    std::set<long> cand;
    for (long y = 1; y <= X; ++y) {
        cand.clear();
        RealInterval yi = RealInterval::from_long(y, prec);
        for (const auto& root : rs.roots) {
            RealInterval center = root.real_part() * yi;
            RealInterval lo = center - R - RealInterval::from_long(1, prec);
            RealInterval hi = center + R + RealInterval::from_long(1, prec);
            Mp fl(64), ce(64);
            mpfr_floor(fl.get(), lo.lo());
            mpfr_ceil(ce.get(), hi.hi());
            long a = mpfr_get_si(fl.get(), MPFR_RNDD);
            long b = mpfr_get_si(ce.get(), MPFR_RNDU);
            a = std::max(a, -X);
            b = std::min(b, X);
            for (long x = a; x <= b; ++x)
                if (x != 0) cand.insert(x);
        }
        for (long x : cand) {
            mpz_class v = evaluate(form, x, y);
            if (abs(v) <= m) {
                out.push_back(SolutionRecord{mpz_class(x), mpz_class(y), tag, v, m, false});
                // mirror (-x, -y): |F| is invariant under the sign flip
                mpz_class vm = d % 2 == 0 ? v : mpz_class(-v);
                out.push_back(SolutionRecord{mpz_class(-x), mpz_class(-y), tag, vm, m, false});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SolutionRecord& a, const SolutionRecord& b) { return key_of(a) < key_of(b); });
    return out;
}

FamilySolveResult solve_family(const UnitGroupBasis& basis, const FieldElement& alpha,
                               const mpq_class& nu, const mpz_class& m, const mpq_class& N,
                               long X, SetFilter filter, const PrecPolicy& pp) {
    FamilySolveResult res;
    res.classification = classify_family(basis, alpha, N, nu, pp);
    for (const auto& rec : res.classification.records) {
        bool chosen = false;
        switch (filter) {
        case SetFilter::E: chosen = rec.in_E; break;
        case SetFilter::E_nu: chosen = rec.in_E_nu == Tri::True; break;
        case SetFilter::TildeE_nu: chosen = rec.in_tilde_E_nu == Tri::True; break;
        }
        if (!chosen) continue;
        FieldElement eps = unit_from_exponent(basis, rec.e);
        TwistedForm tf = twisted_form(alpha, eps);

        std::vector<SolutionRecord> part;
        for (auto& s : solve_box(tf.form, m, X, rec.e))
            if (abs(s.x) <= abs(s.y)) part.push_back(std::move(s));
        BinaryForm rec_form = reciprocal_form(tf.form);
        for (auto& s : solve_box(rec_form, m, X, rec.e)) {
            if (!(abs(s.x) <= abs(s.y))) continue;
            if (abs(s.x) == abs(s.y)) continue; // kept by the unswapped branch
            SolutionRecord sw;
            sw.x = s.y;
            sw.y = s.x;
            sw.e = rec.e;
            sw.value = evaluate(tf.form, sw.x, sw.y);
            sw.m = m;
            sw.swapped = true;
            if (abs(sw.value) > m) throw InternalError("reciprocal-orientation value exceeds bound");
            part.push_back(std::move(sw));
        }
        std::sort(part.begin(), part.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
            return key_of(a) < key_of(b);
        });
        for (auto& s : part) res.solutions.push_back(std::move(s));
    }
    return res;
}

std::pair<RealInterval, RealInterval> recover_xy(const FieldElement& alpha_eps,
                                                 const FieldElement& beta, int phi1, int phi2,
                                                 const PrecPolicy& pp) {
    if (phi1 == phi2) throw InputError("recover_xy needs distinct embeddings");
    int d = alpha_eps.field().degree();
    if (phi1 < 0 || phi2 < 0 || phi1 >= d || phi2 >= d) throw InputError("embedding index out of range");
    return resolve_with_precision(pp, [&](long p) -> std::optional<std::pair<RealInterval, RealInterval>> {
        EmbeddingValues ua = embeddings(alpha_eps, p);
        EmbeddingValues vb = embeddings(beta, p);
        const ComplexBall& u1 = ua.values[phi1];
        const ComplexBall& u2 = ua.values[phi2];
        const ComplexBall& v1 = vb.values[phi1];
        const ComplexBall& v2 = vb.values[phi2];
        ComplexBall den = u2 - u1;
        if (den.contains_zero()) return std::nullopt; // coincident or unresolved
        ComplexBall yb = (v1 - v2) / den;
        ComplexBall xb = (u2 * v1 - u1 * v2) / den;
        return std::make_pair(xb.real_part(), yb.real_part());
    }, "recover_xy (coincident embeddings or zero denominator)");
}

ComplexBall six_term_residual(const ComplexBall u[3], const ComplexBall v[3]) {
    return u[0] * v[1] - u[0] * v[2] + u[1] * v[2] - u[1] * v[0] + u[2] * v[0] - u[2] * v[1];
}

ExponentReport empirical_exponent(const std::vector<SolutionRecord>& solutions,
                                  const UnitGroupBasis& basis, const FieldElement& alpha,
                                  const mpz_class& m, const PrecPolicy& pp) {
    if (m < 2) throw InputError("empirical exponent needs m >= 2");
    ExponentReport rep;
    long prec = pp.start;
    RealInterval logm = RealInterval::from_mpz(m, prec).log();
    for (const auto& s : solutions) {
        FieldElement ae = alpha * unit_from_exponent(basis, s.e);
        long p = prec;
        RealInterval h = abs_log_height(ae, p);
        while (h.width_d() > 1e-12 && p < pp.max) {
            p = std::min(p * 2, pp.max);
            h = abs_log_height(ae, p);
        }
        RealInterval top = RealInterval::from_mpz(abs(s.x) > abs(s.y) ? abs(s.x) : abs(s.y), p)
                               .max_with(h.exp());
        RealInterval margin = top.log() / logm;
        rep.entries.push_back({s, h, margin});
        if (!rep.kappa_emp) rep.kappa_emp = margin;
        else rep.kappa_emp = rep.kappa_emp->max_with(margin);
    }
    return rep;
}

} // namespace thuelab
