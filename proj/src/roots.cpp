#include "thuelab/roots.hpp"

#include <algorithm>
#include <cmath>

namespace thuelab {

namespace {

// Plain (non-rigorous) complex value used inside the Aberth iteration.
struct Cx {
    Mp re, im;
    explicit Cx(long p) : re(p), im(p) {}
};

void cx_set(Cx& z, const Cx& a) {
    mpfr_set(z.re.get(), a.re.get(), MPFR_RNDN);
    mpfr_set(z.im.get(), a.im.get(), MPFR_RNDN);
}

void cx_sub(Cx& z, const Cx& a, const Cx& b) {
    mpfr_sub(z.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(z.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void cx_add_inplace(Cx& z, const Cx& a) {
    mpfr_add(z.re.get(), z.re.get(), a.re.get(), MPFR_RNDN);
    mpfr_add(z.im.get(), z.im.get(), a.im.get(), MPFR_RNDN);
}

void cx_mul(Cx& z, const Cx& a, const Cx& b) {
    Mp t(z.re.prec());
    mpfr_fmms(t.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(z.im.get(), a.re.get(), b.im.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_set(z.re.get(), t.get(), MPFR_RNDN);
}

void cx_div(Cx& z, const Cx& a, const Cx& b) {
    long p = z.re.prec();
    Mp den(p), tr(p), ti(p);
    mpfr_fmma(den.get(), b.re.get(), b.re.get(), b.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmma(tr.get(), a.re.get(), b.re.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_fmms(ti.get(), a.im.get(), b.re.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_div(z.re.get(), tr.get(), den.get(), MPFR_RNDN);
    mpfr_div(z.im.get(), ti.get(), den.get(), MPFR_RNDN);
}

double cx_abs_d(const Cx& z) {
    Mp h(53);
    mpfr_hypot(h.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return h.d();
}

// f and f' at z, Horner.
void eval_poly_pair(const std::vector<Cx>& coeff, const Cx& z, Cx& f, Cx& df, long prec) {
    Cx acc(prec), dacc(prec), t(prec);
    // acc = c_n, dacc = 0, then dacc = dacc*z + acc; acc = acc*z + c_i
    cx_set(acc, coeff.back());
    mpfr_set_zero(dacc.re.get(), 1);
    mpfr_set_zero(dacc.im.get(), 1);
    for (size_t i = coeff.size() - 1; i-- > 0;) {
        cx_mul(t, dacc, z);
        cx_set(dacc, t);
        cx_add_inplace(dacc, acc);
        cx_mul(t, acc, z);
        cx_set(acc, t);
        cx_add_inplace(acc, coeff[i]);
    }
    cx_set(f, acc);
    cx_set(df, dacc);
}

// Aberth-Ehrlich simultaneous iteration; returns approximate roots.
std::vector<Cx> aberth(const ZPoly& p, long prec, const std::vector<Cx>* seed) {
    int d = poly::degree_z(p);
    std::vector<Cx> coeff;
    coeff.reserve(p.size());
    for (const auto& c : p) {
        Cx z(prec);
        mpfr_set_z(z.re.get(), c.get_mpz_t(), MPFR_RNDN);
        mpfr_set_zero(z.im.get(), 1);
        coeff.push_back(std::move(z));
    }

    std::vector<Cx> z;
    z.reserve(d);
    if (seed && (int)seed->size() == d) {
        for (const auto& s : *seed) {
            Cx w(prec);
            mpfr_set(w.re.get(), s.re.get(), MPFR_RNDN);
            mpfr_set(w.im.get(), s.im.get(), MPFR_RNDN);
            z.push_back(std::move(w));
        }
    } else {
        // Cauchy bound based ring of start points, slightly irrational angle
        // offset so symmetric configurations do not stall.
        double radius = 0.0;
        double lead = std::abs(p.back().get_d());
        for (int i = 0; i < d; ++i) radius = std::max(radius, std::abs(p[i].get_d()) / lead);
        radius = 1.0 + radius;
        for (int k = 0; k < d; ++k) {
            double ang = 2.0 * M_PI * (k + 0.3540) / d + 0.7;
            Cx w(prec);
            mpfr_set_d(w.re.get(), 0.7 * radius * std::cos(ang), MPFR_RNDN);
            mpfr_set_d(w.im.get(), 0.7 * radius * std::sin(ang), MPFR_RNDN);
            z.push_back(std::move(w));
        }
    }

    Mp tol(64);
    mpfr_set_ui_2exp(tol.get(), 1, -(prec - 8), MPFR_RNDN);

    Cx f(prec), df(prec), ratio(prec), sum(prec), diff(prec), t(prec), corr(prec), den(prec);
    for (int iter = 0; iter < 600; ++iter) {
        bool moved = false;
        for (int k = 0; k < d; ++k) {
            eval_poly_pair(coeff, z[k], f, df, prec);
            if (mpfr_zero_p(f.re.get()) && mpfr_zero_p(f.im.get())) continue;
            cx_div(ratio, f, df); // Newton correction f/f'
            mpfr_set_zero(sum.re.get(), 1);
            mpfr_set_zero(sum.im.get(), 1);
            for (int j = 0; j < d; ++j) {
                if (j == k) continue;
                cx_sub(diff, z[k], z[j]);
                Cx one(prec);
                mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                mpfr_set_zero(one.im.get(), 1);
                cx_div(t, one, diff);
                cx_add_inplace(sum, t);
            }
            // corr = ratio / (1 - ratio*sum)
            cx_mul(t, ratio, sum);
            mpfr_ui_sub(den.re.get(), 1, t.re.get(), MPFR_RNDN);
            mpfr_neg(den.im.get(), t.im.get(), MPFR_RNDN);
            cx_div(corr, ratio, den);
            cx_sub(z[k], z[k], corr);
            // relative movement check
            double c = cx_abs_d(corr);
            double zs = std::max(1e-300, cx_abs_d(z[k]));
            if (c > mpfr_get_d(tol.get(), MPFR_RNDN) * zs) moved = true;
        }
        if (!moved) break;
    }
    return z;
}

struct Disk {
    Mp re, im;   // center
    Mp r;        // certified radius (upper bound)
    Disk(long p) : re(p), im(p), r(ComplexBall::kRadPrec) {}
};

ComplexBall disk_to_ball(const Disk& d, long prec) {
    return ComplexBall::from_centers(d.re, d.im, d.r);
}

} // namespace

// Certification: every disk B(z_k, d*|f(z_k)/f'(z_k)|) contains at least one
// root; d pairwise disjoint disks of a squarefree degree-d polynomial contain
// exactly one root each.
RootSet isolate_roots(const ZPoly& squarefree, long prec, long work_cap) {
    ZPoly p = squarefree;
    poly::normalize_z(p);
    int d = poly::degree_z(p);
    if (d < 1) throw InputError("root isolation requires degree >= 1");
    ZPoly dp = poly::derivative_z(p);
    int r1 = poly::count_real_roots(p);

    for (long wp = std::max(prec + 64, 96L); wp <= work_cap; wp *= 2) {
        std::vector<Cx> approx = aberth(p, wp, nullptr);
        std::vector<Disk> disks;
        disks.reserve(d);
        bool ok = true;
        for (int k = 0; k < d && ok; ++k) {
            Disk dk(wp);
            mpfr_set(dk.re.get(), approx[k].re.get(), MPFR_RNDN);
            mpfr_set(dk.im.get(), approx[k].im.get(), MPFR_RNDN);
            ComplexBall z = ComplexBall::from_centers(dk.re, dk.im, Mp(ComplexBall::kRadPrec));
            RealInterval fu = poly::eval_ball(p, z).abs();
            RealInterval dfl = poly::eval_ball(dp, z).abs();
            if (!dfl.is_positive()) { ok = false; break; }
            // r = d * upper|f| / lower|f'|
            Mp r(ComplexBall::kRadPrec);
            mpfr_div(r.get(), fu.hi(), dfl.lo(), MPFR_RNDU);
            mpfr_mul_si(r.get(), r.get(), d, MPFR_RNDU);
            mpfr_set(dk.r.get(), r.get(), MPFR_RNDU);
            disks.push_back(std::move(dk));
        }
        if (!ok) continue;

        std::vector<ComplexBall> balls;
        balls.reserve(d);
        for (const auto& dk : disks) balls.push_back(disk_to_ball(dk, wp));
        for (int i = 0; i < d && ok; ++i)
            for (int j = i + 1; j < d && ok; ++j)
                if (!balls[i].disjoint_from(balls[j])) ok = false;
        if (!ok) continue;

        // Split into provably-real / upper / lower candidates.
        std::vector<int> real_idx, upper_idx, lower_idx;
        for (int i = 0; i < d; ++i) {
            RealInterval im = balls[i].imag_part();
            if (im.is_positive()) upper_idx.push_back(i);
            else if (im.is_negative()) lower_idx.push_back(i);
            else real_idx.push_back(i);
        }
        if ((int)real_idx.size() != r1 || upper_idx.size() != lower_idx.size()) continue;
        int r2 = (int)upper_idx.size();

        // Real roots: project the disk onto the axis (a real root inside a
        // disk meeting the axis is within the same radius of Re center).
        std::vector<ComplexBall> reals;
        for (int i : real_idx) {
            Mp re(wp), im(wp);
            mpfr_set(re.get(), balls[i].re(), MPFR_RNDN);
            mpfr_set_zero(im.get(), 1);
            Mp r(ComplexBall::kRadPrec);
            mpfr_set(r.get(), balls[i].rad(), MPFR_RNDU);
            reals.push_back(ComplexBall::from_centers(re, im, r));
        }
        std::sort(reals.begin(), reals.end(), [](const ComplexBall& a, const ComplexBall& b) {
            return mpfr_cmp(a.re(), b.re()) < 0;
        });
        // order must be rigorous: neighbouring real balls must be separated
        bool sep = true;
        for (size_t i = 0; i + 1 < reals.size(); ++i) {
            Tri t = reals[i].real_part().lt(reals[i + 1].real_part());
            if (t != Tri::True) { sep = false; break; }
        }
        if (!sep) continue;

        // Conjugate-pair representatives: positive imaginary part, sorted by
        // (Re, Im); both coordinates must be rigorously comparable.
        std::vector<ComplexBall> reps;
        for (int i : upper_idx) reps.push_back(balls[i]);
        std::sort(reps.begin(), reps.end(), [](const ComplexBall& a, const ComplexBall& b) {
            int c = mpfr_cmp(a.re(), b.re());
            if (c != 0) return c < 0;
            return mpfr_cmp(a.im(), b.im()) < 0;
        });
        for (size_t i = 0; i + 1 < reps.size() && sep; ++i) {
            Tri lt_re = reps[i].real_part().lt(reps[i + 1].real_part());
            if (lt_re == Tri::True) continue;
            Tri gt_re = reps[i + 1].real_part().lt(reps[i].real_part());
            if (gt_re == Tri::True) { sep = false; continue; } // sort bug, treat as unresolved
            // Re ranges overlap: order must be justified by Im.
            Tri lt_im = reps[i].imag_part().lt(reps[i + 1].imag_part());
            if (lt_im != Tri::True) sep = false;
        }
        if (!sep) continue;

        RootSet rs;
        rs.prec = prec;
        rs.r1 = r1;
        rs.r2 = r2;
        for (const auto& b : reals) rs.roots.push_back(b.round_to(prec));
        for (const auto& b : reps) rs.roots.push_back(b.round_to(prec));
        for (const auto& b : reps) rs.roots.push_back(b.conj().round_to(prec));
        return rs;
    }
    throw UndecidedError("root isolation failed below working-precision cap");
}

RootSet refine_roots(const ZPoly& squarefree, const RootSet& base, long prec, long work_cap) {
    (void)work_cap;
    // A fresh ball's root lies in exactly one base ball; if the fresh ball
    // meets exactly one base ball, the shared root identifies the index.
    for (long p = prec;; p *= 2) {
        RootSet fresh = isolate_roots(squarefree, p, work_cap);
        if (fresh.roots.size() != base.roots.size())
            throw InternalError("refinement changed root count");
        std::vector<int> perm(base.roots.size(), -1);
        bool ok = true;
        for (size_t j = 0; j < fresh.roots.size() && ok; ++j) {
            int hit = -1;
            for (size_t i = 0; i < base.roots.size(); ++i) {
                if (!fresh.roots[j].disjoint_from(base.roots[i])) {
                    if (hit >= 0) { hit = -2; break; }
                    hit = (int)i;
                }
            }
            if (hit < 0) { ok = false; break; }
            if (perm[hit] != -1) { ok = false; break; }
            perm[hit] = (int)j;
        }
        if (ok) {
            RootSet out;
            out.prec = prec;
            out.r1 = fresh.r1;
            out.r2 = fresh.r2;
            for (size_t i = 0; i < perm.size(); ++i)
                out.roots.push_back(fresh.roots[perm[i]].round_to(prec));
            return out;
        }
        if (p > work_cap) throw InternalError("root refinement could not match base ordering");
    }
}

} // namespace thuelab
