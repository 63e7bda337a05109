#include "thuelab/units.hpp"

#include <algorithm>
#include <sstream>

namespace thuelab {

namespace {

using IMat = std::vector<std::vector<RealInterval>>;
using IVec = std::vector<RealInterval>;

RealInterval det_laplace(const IMat& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    RealInterval acc = RealInterval::from_long(0, m[0][0].prec());
    for (size_t j = 0; j < n; ++j) {
        IMat minor;
        for (size_t i = 1; i < n; ++i) {
            IVec row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        RealInterval term = m[0][j] * det_laplace(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// Cramer solve; throws IntervalDomainError when det straddles 0.
IVec solve_cramer(const IMat& a, const IVec& b) {
    RealInterval d = det_laplace(a);
    if (d.contains_zero()) throw IntervalDomainError("interval system is singular at this precision");
    size_t n = a.size();
    IVec x;
    for (size_t j = 0; j < n; ++j) {
        IMat aj = a;
        for (size_t i = 0; i < n; ++i) aj[i][j] = b[i];
        x.push_back(det_laplace(aj) / d);
    }
    return x;
}

// Nearest integer to the midpoint with half-ties rounded toward zero.
long round_half_toward_zero(mpfr_srcptr mid) {
    Mp t(mpfr_get_prec(mid)), f(mpfr_get_prec(mid));
    bool neg = mpfr_sgn(mid) < 0;
    mpfr_abs(t.get(), mid, MPFR_RNDN);
    mpfr_add_d(t.get(), t.get(), 0.5, MPFR_RNDN);
    mpfr_floor(f.get(), t.get());
    long k = mpfr_get_si(f.get(), MPFR_RNDN);
    if (mpfr_integer_p(t.get())) k -= 1; // exact half: toward zero
    return neg ? -k : k;
}

} // namespace

std::string UnitExponent::to_string() const {
    std::ostringstream os;
    os << "(" << torsion_power << ";";
    for (size_t i = 0; i < exps.size(); ++i) os << " " << exps[i];
    os << ")";
    return os.str();
}

LogVector log_embedding(const FieldElement& g, long prec) {
    if (g.is_zero()) throw InputError("log embedding of zero");
    const NumberField& K = g.field();
    EmbeddingValues ev = embeddings(g, prec);
    LogVector lv;
    lv.deltas = K.deltas();
    int n = K.r1() + K.r2();
    for (int i = 0; i < n; ++i) {
        RealInterval a = ev.values[i].abs();
        lv.t.push_back(a.log().mul_long(lv.deltas[i]));
    }
    return lv;
}

std::vector<std::vector<RealInterval>> UnitGroupBasis::log_matrix(long prec) const {
    int n = K_.r1() + K_.r2();
    std::vector<std::vector<RealInterval>> m(n, std::vector<RealInterval>(rank(), RealInterval(prec)));
    for (int j = 0; j < rank(); ++j) {
        LogVector lv = log_embedding(units_[j], prec);
        for (int i = 0; i < n; ++i) m[i][j] = lv.t[i];
    }
    return m;
}

std::vector<std::vector<RealInterval>> UnitGroupBasis::log_matrix_unweighted(long prec) const {
    auto m = log_matrix(prec);
    auto d = K_.deltas();
    for (size_t i = 0; i < m.size(); ++i)
        for (auto& x : m[i]) x = x.div_long(d[i]);
    return m;
}

RealInterval UnitGroupBasis::regulator(long prec) const {
    auto m = log_matrix(prec);
    IMat top(rank(), IVec(rank(), RealInterval(prec)));
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) top[i][j] = m[i][j];
    return det_laplace(top).abs();
}

RealInterval UnitGroupBasis::c_lemma4(long prec) const {
    auto L = log_matrix_unweighted(prec);
    int r = rank();
    int n = (int)L.size();
    // lambda_min(L^T L) >= det / trace^{r-1} for a psd matrix
    IMat g(r, IVec(r, RealInterval::from_long(0, prec)));
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            RealInterval s = RealInterval::from_long(0, prec);
            for (int i = 0; i < n; ++i) s = s + L[i][a] * L[i][b];
            g[a][b] = s;
        }
    RealInterval det = det_laplace(g);
    RealInterval tr = RealInterval::from_long(0, prec);
    for (int a = 0; a < r; ++a) tr = tr + g[a][a];
    RealInterval lam = det;
    for (int k = 1; k < r; ++k) lam = lam / tr;
    if (!lam.is_positive()) throw IntervalDomainError("singular value bound not positive");
    RealInterval smin = lam.sqrt();
    RealInterval denom = RealInterval::from_long(n, prec).sqrt().mul_long(std::max(1, K_.degree() - 1));
    return smin / denom;
}

RealInterval UnitGroupBasis::kappa_house(long prec) const {
    auto L = log_matrix_unweighted(prec);
    RealInterval acc = RealInterval::from_long(0, prec);
    for (int j = 0; j < rank(); ++j) {
        RealInterval mj = RealInterval::from_long(0, prec);
        for (size_t i = 0; i < L.size(); ++i) mj = mj.max_with(L[i][j].abs());
        acc = acc + mj;
    }
    return acc;
}

RealInterval UnitGroupBasis::mu_babai(long prec) const {
    return kappa_house(prec).div_long(2);
}

RealInterval UnitGroupBasis::sum_unit_heights(long prec) const {
    RealInterval acc = RealInterval::from_long(0, prec);
    for (const auto& u : units_) acc = acc + abs_log_height(u, prec);
    return acc;
}

UnitGroupBasis validate_basis(const NumberField& K, const std::vector<FieldElement>& fund_units,
                              int torsion_order, const FieldElement& torsion_gen,
                              const std::optional<mpq_class>& reference_regulator,
                              const PrecPolicy& pp) {
    int r = K.unit_rank();
    if ((int)fund_units.size() != r)
        throw InputError("expected " + std::to_string(r) + " fundamental units, got " +
                         std::to_string(fund_units.size()));
    for (const auto& u : fund_units)
        if (!is_unit(u)) throw InputError("supplied element is not a unit: " + u.to_string());
    if (torsion_order < 2) throw InputError("torsion order must be >= 2");
    if (!is_unit(torsion_gen)) throw InputError("torsion generator is not a unit");
    FieldElement p = torsion_gen;
    for (int k = 1; k < torsion_order; ++k) {
        if (p == K.one()) throw InputError("torsion generator order is smaller than declared");
        p = p * torsion_gen;
    }
    if (!(p == K.one())) throw InputError("torsion generator order differs from declared order");

    UnitGroupBasis basis(K, fund_units, torsion_order, torsion_gen);

    // multiplicative independence: regulator bounded away from 0
    RealInterval R(pp.start);
    bool independent = false;
    for (long prec = pp.start; prec <= pp.max; prec *= 2) {
        R = basis.regulator(prec);
        // column sums of the log matrix must contain 0 (norm +-1)
        auto m = basis.log_matrix(prec);
        for (int j = 0; j < r; ++j) {
            RealInterval s = RealInterval::from_long(0, prec);
            for (size_t i = 0; i < m.size(); ++i) s = s + m[i][j];
            if (!s.contains_zero()) throw InternalError("unit log vector does not sum to zero");
        }
        if (R.is_positive()) { independent = true; break; }
        if (prec == pp.max) break;
    }
    if (!independent)
        throw InputError("units are multiplicatively dependent "
                         "(regulator indistinguishable from 0 at max precision)");

    if (reference_regulator && *reference_regulator > 0) {
        RealInterval ref = RealInterval::from_mpq(*reference_regulator, pp.start);
        RealInterval ratio = R / ref;
        if (mpfr_cmp_d(ratio.lo(), 1.5) > 0) basis.nonfund_index_ = ratio.mid_d();
    }
    return basis;
}

FieldElement unit_from_exponent(const UnitGroupBasis& basis, const UnitExponent& e) {
    if ((int)e.exps.size() != basis.rank()) throw InputError("exponent vector has wrong length");
    FieldElement acc = basis.field().one();
    int t = ((e.torsion_power % basis.torsion_order()) + basis.torsion_order()) % basis.torsion_order();
    if (t != 0) acc = basis.torsion_gen().pow(t);
    for (int j = 0; j < basis.rank(); ++j)
        if (e.exps[j] != 0) acc = acc * basis.fund_units()[j].pow(e.exps[j]);
    return acc;
}

std::vector<long> exponent_box_bounds(const UnitGroupBasis& basis, const RealInterval& M,
                                      const LogVector* translate, long prec) {
    int r = basis.rank();
    auto G = basis.log_matrix(prec);
    auto deltas = basis.field().deltas();
    int d = basis.field().degree();
    IMat top(r, IVec(r, RealInterval(prec)));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) top[i][j] = G[i][j];

    std::vector<long> K(r, 0);
    // H(M) is the simplex with vertices: x_i = M for i != k, x_k forced.
    for (int k = 0; k < r + 1; ++k) {
        IVec rhs;
        for (int i = 0; i < r; ++i) {
            RealInterval t = (i == k) ? M.mul_long(-(d - deltas[i])) : M.mul_long(deltas[i]);
            if (translate) t = t - translate->t[i];
            rhs.push_back(t);
        }
        IVec c = solve_cramer(top, rhs);
        for (int j = 0; j < r; ++j) {
            Mp f(64);
            mpfr_floor(f.get(), c[j].abs().hi());
            long b = mpfr_get_si(f.get(), MPFR_RNDN);
            K[j] = std::max(K[j], std::max(0L, b));
        }
    }
    return K;
}

EnumerationResult enumerate_units(const UnitGroupBasis& basis, const FieldElement& alpha,
                                  const mpq_class& N, const PrecPolicy& pp,
                                  std::optional<long> box_override) {
    if (!(N > 0)) throw InputError("house bound must be positive");
    if (alpha.is_zero()) throw InputError("alpha must be nonzero");
    const NumberField& K = basis.field();
    int r = basis.rank();
    int w = basis.torsion_order();

    EnumerationResult out;
    // M+ = log N + log house(alpha^{-1})
    {
        long prec = pp.start;
        RealInterval Mplus =
            RealInterval::from_mpq(N, prec).log() + house(alpha.inverse(), prec).log();
        out.box = exponent_box_bounds(basis, Mplus, nullptr, prec);
    }
    if (box_override) {
        for (auto& k : out.box) k = *box_override;
    }

    // power tables per unit
    std::vector<std::vector<FieldElement>> tbl;
    for (int j = 0; j < r; ++j) {
        std::vector<FieldElement> ts;
        FieldElement inv = basis.fund_units()[j].inverse();
        for (long k = -out.box[j]; k <= out.box[j]; ++k)
            ts.push_back(k >= 0 ? basis.fund_units()[j].pow(k) : inv.pow(-k));
        tbl.push_back(std::move(ts));
    }
    std::vector<FieldElement> torsion_tbl;
    for (int t = 0; t < w; ++t) torsion_tbl.push_back(basis.torsion_gen().pow(t));

    std::vector<long> a(r);
    for (int j = 0; j < r; ++j) a[j] = -out.box[j];
    for (;;) {
        FieldElement u0 = K.one();
        for (int j = 0; j < r; ++j) u0 = u0 * tbl[j][a[j] + out.box[j]];
        FieldElement au = alpha * u0;
        Tri verdict = Tri::Unknown;
        RealInterval h(pp.start);
        for (long p = pp.start;; p = std::min(p * 2, pp.max)) {
            h = house(au, p);
            verdict = h.le_q(N);
            if (verdict != Tri::Unknown || p >= pp.max) break;
        }
        if (verdict == Tri::True) {
            for (int t = 0; t < w; ++t) {
                UnitExponent e{t, a};
                FieldElement u = t == 0 ? u0 : torsion_tbl[t] * u0;
                out.units.push_back({e, u, h});
            }
        } else if (verdict == Tri::Unknown) {
            out.undecided.push_back(UnitExponent{0, a});
        }
        // odometer, lexicographic
        int j = r - 1;
        while (j >= 0 && a[j] == out.box[j]) {
            a[j] = -out.box[j];
            --j;
        }
        if (j < 0) break;
        ++a[j];
    }
    return out;
}

ReduceResult lattice_reduce(const UnitGroupBasis& basis, const FieldElement& g,
                            const PrecPolicy& pp) {
    if (g.is_zero()) throw InputError("lattice reduction of zero");
    int r = basis.rank();
    int d = basis.field().degree();
    auto deltas = basis.field().deltas();
    mpq_class n = norm(g);
    if (n == 0) throw InternalError("nonzero element with zero norm");
    mpq_class absn = abs(n);

    std::vector<long> k(r, 0);
    bool decided = false;
    for (long prec = pp.start;; prec = std::min(prec * 2, pp.max)) {
        try {
            LogVector lv = log_embedding(g, prec);
            RealInterval logn = RealInterval::from_mpq(absn, prec).log();
            auto G = basis.log_matrix(prec);
            IMat top(r, IVec(r, RealInterval(prec)));
            IVec rhs;
            for (int i = 0; i < r; ++i) {
                for (int j = 0; j < r; ++j) top[i][j] = G[i][j];
                rhs.push_back(lv.t[i] - logn.mul_long(deltas[i]).div_long(d));
            }
            IVec c = solve_cramer(top, rhs);
            bool all_pinned = true;
            for (int j = 0; j < r; ++j) {
                // pinned when the enclosure sits inside (k-1/2, k+1/2]
                long cand = round_half_toward_zero(c[j].hi());
                mpq_class lo_b(2 * cand - 1, 2), hi_b(2 * cand + 1, 2);
                bool inside = mpfr_cmp_q(c[j].lo(), lo_b.get_mpq_t()) > 0 &&
                              mpfr_cmp_q(c[j].hi(), hi_b.get_mpq_t()) <= 0;
                if (!inside) {
                    all_pinned = false;
                    if (prec >= pp.max) {
                        // cell-boundary ambiguity: deterministic midpoint rounding
                        Mp mid(prec);
                        mpfr_add(mid.get(), c[j].lo(), c[j].hi(), MPFR_RNDN);
                        mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
                        cand = round_half_toward_zero(mid.get());
                        all_pinned = true;
                    } else {
                        break;
                    }
                }
                k[j] = cand;
            }
            if (all_pinned) { decided = true; }
        } catch (const IntervalDomainError&) {
            if (prec >= pp.max) throw UndecidedError("lattice rounding undecided at max precision");
        }
        if (decided) break;
        if (prec >= pp.max && !decided)
            throw UndecidedError("lattice rounding undecided at max precision");
    }

    UnitExponent e;
    e.torsion_power = 0;
    e.exps.resize(r);
    for (int j = 0; j < r; ++j) e.exps[j] = -k[j];
    ReduceResult rr{e, unit_from_exponent(basis, e) * g};
    return rr;
}

BetaDecomposition decompose_beta(const UnitGroupBasis& basis, const FieldElement& beta,
                                 const PrecPolicy& pp) {
    if (beta.is_zero()) throw InputError("decomposition of zero");
    ReduceResult rr = lattice_reduce(basis, beta, pp);
    BetaDecomposition bd{rr.reduced, UnitExponent{}, 1, RealInterval(pp.start)};
    bd.b.torsion_power = 0;
    bd.b.exps.resize(basis.rank());
    for (int j = 0; j < basis.rank(); ++j) bd.b.exps[j] = -rr.e.exps[j];
    bd.B = bd.b.A();
    // exact round trip
    if (!(bd.rho * unit_from_exponent(basis, bd.b) == beta))
        throw InternalError("beta decomposition does not reconstruct beta");
    long p = pp.start;
    RealInterval h = abs_log_height(bd.rho, p);
    while (h.width_d() > 1e-9 && p < pp.max) {
        p = std::min(p * 2, pp.max);
        h = abs_log_height(bd.rho, p);
    }
    bd.rho_height = h;
    return bd;
}

} // namespace thuelab
