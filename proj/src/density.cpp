#include "thuelab/density.hpp"

#include <algorithm>
#include <cmath>

namespace thuelab {

const char* region_kind_name(RegionKind k) {
    switch (k) {
    case RegionKind::H_M: return "H_M";
    case RegionKind::D_nu: return "D_nu";
    case RegionKind::Dp_nu: return "Dp_nu";
    case RegionKind::Dt_nu: return "Dt_nu";
    case RegionKind::Dpp_nu: return "Dpp_nu";
    case RegionKind::Dtp_nu: return "Dtp_nu";
    }
    return "?";
}

std::optional<RegionKind> region_kind_from_name(const std::string& s) {
    for (RegionKind k : {RegionKind::H_M, RegionKind::D_nu, RegionKind::Dp_nu, RegionKind::Dt_nu,
                         RegionKind::Dpp_nu, RegionKind::Dtp_nu})
        if (s == region_kind_name(k)) return k;
    return std::nullopt;
}

std::vector<int> RegionSpec::deltas() const {
    std::vector<int> d;
    for (int i = 0; i < r1; ++i) d.push_back(1);
    for (int i = 0; i < r2; ++i) d.push_back(2);
    return d;
}

RegionSpec RegionSpec::make(RegionKind kind, int r1, int r2, mpq_class M, mpq_class nu) {
    RegionSpec s;
    s.kind = kind;
    s.frame = kind == RegionKind::H_M ? Frame::T : Frame::X;
    s.r1 = r1;
    s.r2 = r2;
    s.M = std::move(M);
    s.nu = std::move(nu);
    if (s.r1 < 0 || s.r2 < 0 || s.dim() < 2) throw InputError("invalid signature");
    if (!(s.nu > 0 && s.nu < 1)) throw InputError("nu must satisfy 0 < nu < 1");
    return s;
}

namespace {

Tri tri_and(Tri a, Tri b) {
    if (a == Tri::False || b == Tri::False) return Tri::False;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::True;
}

Tri tri_or(Tri a, Tri b) {
    if (a == Tri::True || b == Tri::True) return Tri::True;
    if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
    return Tri::False;
}

template <class T> struct NumOps;

template <> struct NumOps<double> {
    static Tri le(double a, double b) { return a <= b ? Tri::True : Tri::False; }
    static double neg(double a) { return -a; }
};

template <> struct NumOps<mpq_class> {
    static Tri le(const mpq_class& a, const mpq_class& b) { return a <= b ? Tri::True : Tri::False; }
    static mpq_class neg(const mpq_class& a) { return -a; }
};

template <> struct NumOps<RealInterval> {
    static Tri le(const RealInterval& a, const RealInterval& b) { return a.le(b); }
    static RealInterval neg(const RealInterval& a) { return -a; }
};

// Membership over x-frame coordinates.
template <class T>
Tri member_x(RegionKind kind, int r1, int r2, const T& M, const T& nuM, const std::vector<T>& x) {
    using Ops = NumOps<T>;
    int n = r1 + r2;
    auto in_H = [&](const std::vector<T>& v) {
        Tri acc = Tri::True;
        for (int i = 0; i < n; ++i) acc = tri_and(acc, Ops::le(v[i], M));
        return acc;
    };
    auto in_D = [&](const std::vector<T>& v) {
        Tri any = Tri::False;
        for (int i = 0; i < r1; ++i)
            for (int j = i + 1; j < r1; ++j)
                any = tri_or(any, tri_and(Ops::le(nuM, v[i]), Ops::le(nuM, v[j])));
        return tri_and(in_H(v), any);
    };
    auto in_Dp = [&](const std::vector<T>& v) {
        Tri any = Tri::False;
        for (int i = r1; i < n; ++i) any = tri_or(any, Ops::le(nuM, v[i]));
        return tri_and(in_H(v), any);
    };
    auto negated = [&](const std::vector<T>& v) {
        std::vector<T> w;
        w.reserve(v.size());
        for (const auto& c : v) w.push_back(Ops::neg(c));
        return w;
    };
    switch (kind) {
    case RegionKind::H_M: return in_H(x);
    case RegionKind::D_nu: return in_D(x);
    case RegionKind::Dp_nu: return in_Dp(x);
    case RegionKind::Dt_nu: return tri_and(in_D(x), in_D(negated(x)));
    case RegionKind::Dpp_nu: return tri_and(in_D(x), in_Dp(negated(x)));
    case RegionKind::Dtp_nu: return tri_and(in_Dp(x), in_Dp(negated(x)));
    }
    return Tri::Unknown;
}

} // namespace

bool region_membership(const RegionSpec& spec, const std::vector<double>& pt, double tol) {
    int n = spec.dim();
    if ((int)pt.size() != n) throw InputError("point has wrong dimension");
    auto deltas = spec.deltas();
    double scale = 1.0, sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double xi = spec.frame == Frame::T ? pt[i] / deltas[i] : pt[i];
        sum += deltas[i] * xi;
        scale = std::max(scale, std::fabs(xi));
    }
    if (std::fabs(sum) > tol * scale * n) throw InputError("point is off the hyperplane");
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = spec.frame == Frame::T ? pt[i] / deltas[i] : pt[i];
    double M = spec.M.get_d();
    double nuM = spec.nu.get_d() * M;
    return member_x<double>(spec.kind, spec.r1, spec.r2, M, nuM, x) == Tri::True;
}

bool region_membership_q(const RegionSpec& spec, const std::vector<mpq_class>& pt) {
    int n = spec.dim();
    if ((int)pt.size() != n) throw InputError("point has wrong dimension");
    auto deltas = spec.deltas();
    std::vector<mpq_class> x(n);
    mpq_class sum = 0;
    for (int i = 0; i < n; ++i) {
        x[i] = spec.frame == Frame::T ? mpq_class(pt[i] / deltas[i]) : pt[i];
        sum += deltas[i] * x[i];
    }
    if (sum != 0) throw InputError("point is off the hyperplane");
    mpq_class nuM = spec.nu * spec.M;
    return member_x<mpq_class>(spec.kind, spec.r1, spec.r2, spec.M, nuM, x) == Tri::True;
}

Tri region_membership_tri(const RegionSpec& spec, const std::vector<RealInterval>& pt,
                          const RealInterval& M) {
    int n = spec.dim();
    if ((int)pt.size() != n) throw InputError("point has wrong dimension");
    auto deltas = spec.deltas();
    std::vector<RealInterval> x;
    x.reserve(n);
    for (int i = 0; i < n; ++i)
        x.push_back(spec.frame == Frame::T ? pt[i].div_long(deltas[i]) : pt[i]);
    RealInterval nuM = M.mul_q(spec.nu);
    return member_x<RealInterval>(spec.kind, spec.r1, spec.r2, M, nuM, x);
}

namespace {

struct PaperBox {
    // per-coordinate closed interval, unset = unconstrained
    std::vector<std::optional<std::pair<mpq_class, mpq_class>>> iv;
};

mpq_class q_min(const mpq_class& a, const mpq_class& b) { return a < b ? a : b; }

// Builds the explicit inscribed box at scale M; false with a reason when the
// signature or nu range rules the construction out.
bool build_paper_box(const RegionSpec& spec, PaperBox& box, mpq_class& a, mpq_class& b,
                     mpq_class& c, std::string& reason) {
    int n = spec.dim();
    int r = spec.rank();
    auto deltas = spec.deltas();
    const mpq_class& nu = spec.nu;
    box.iv.assign(n, std::nullopt);
    if (!(spec.M > 0)) { reason = "M must be positive"; return false; }

    auto part_c_params = [&](int delta_lim) {
        mpq_class g = mpq_class(delta_lim) / 2 - nu;
        a = nu + g / 3;
        b = nu + g * 2 / 3;
        c = q_min(1, mpq_class(delta_lim) - 2 * b) / 2;
    };
    auto mid_range = [&](int lo_i, int hi_i, int denom) {
        for (int i = lo_i; i <= hi_i; ++i) {
            mpq_class w = c / (deltas[i] * denom);
            box.iv[i] = std::make_pair(-w, w);
        }
    };

    switch (spec.kind) {
    case RegionKind::H_M:
        reason = "H_M volume is closed-form, no inscribed box";
        return false;
    case RegionKind::D_nu: {
        if (spec.r1 < 2) { reason = "D_nu is empty unless r1 >= 2"; return false; }
        int dl = deltas[n - 1];
        if (!(nu < mpq_class(dl) / 2)) { reason = "box construction needs nu < delta_{r+1}/2"; return false; }
        part_c_params(dl);
        box.iv[0] = std::make_pair(a, b);
        box.iv[1] = std::make_pair(a, b);
        if (r >= 3) mid_range(2, r - 1, r - 2);
        break;
    }
    case RegionKind::Dp_nu: {
        if (spec.r2 < 1) { reason = "Dp_nu is empty unless r2 >= 1"; return false; }
        int dl = deltas[n - 2]; // delta_r
        if (!(nu < mpq_class(dl) / 2)) { reason = "box construction needs nu < delta_r/2"; return false; }
        part_c_params(dl);
        box.iv[n - 1] = std::make_pair(a, b);
        if (r >= 2) mid_range(0, r - 2, r - 1);
        break;
    }
    case RegionKind::Dt_nu: {
        if (spec.r1 < 4) { reason = "Dt_nu is empty unless r1 >= 4"; return false; }
        a = (1 + nu) / 2;
        b = (3 + nu) / 4;
        c = (1 + nu) / 4;
        box.iv[0] = std::make_pair(a, b);
        box.iv[1] = std::make_pair(a, b);
        box.iv[2] = std::make_pair(-b, -a);
        box.iv[3] = std::make_pair(-b, -a);
        if (r >= 5) mid_range(4, r - 1, r - 4);
        break;
    }
    case RegionKind::Dpp_nu: {
        if (spec.r1 < 2 || spec.r2 < 1) { reason = "Dpp_nu is empty unless r1 >= 2 and r2 >= 1"; return false; }
        a = (1 + nu) / 2;
        b = (3 + nu) / 4;
        c = (1 + nu) / 4;
        box.iv[0] = std::make_pair(a, b);
        box.iv[1] = std::make_pair(a, b);
        box.iv[n - 1] = std::make_pair(-b, -a);
        if (r >= 4) mid_range(2, r - 2, r - 3);
        break;
    }
    case RegionKind::Dtp_nu: {
        if (spec.r2 < 2) { reason = "Dtp_nu is empty unless r2 >= 2"; return false; }
        a = (1 + nu) / 2;
        b = (3 + nu) / 4;
        c = (1 + nu) / 4;
        box.iv[n - 1] = std::make_pair(a, b);
        box.iv[n - 2] = std::make_pair(-b, -a);
        if (r >= 3) mid_range(1, r - 2, r - 2);
        break;
    }
    }
    for (auto& o : box.iv)
        if (o) {
            o->first *= spec.M;
            o->second *= spec.M;
        }
    a *= spec.M;
    b *= spec.M;
    c *= spec.M;
    return true;
}

mpq_class q_pow(const mpq_class& x, int e) {
    mpq_class r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

mpz_class factorial(int n) {
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// vol{y in prod [0, h_i] : sum y_i <= t} for r boxes, exact.
mpq_class orthant_box_cdf(const std::vector<mpq_class>& h, const mpq_class& t) {
    int r = (int)h.size();
    mpq_class acc = 0;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        mpq_class s = t;
        int bits = 0;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) {
                s -= h[i];
                ++bits;
            }
        if (s <= 0) continue;
        mpq_class term = q_pow(s, r) / mpq_class(factorial(r));
        acc += (bits % 2 == 0) ? term : -term;
    }
    return acc;
}

// Projected volume (drop coordinate r+1) of box ∩ hyperplane, x-frame.
mpq_class box_volume(const RegionSpec& spec, const PaperBox& box) {
    int n = spec.dim();
    int r = spec.rank();
    auto deltas = spec.deltas();
    std::vector<int> free_idx;
    for (int i = 0; i < r; ++i)
        if (!box.iv[i]) free_idx.push_back(i);

    if (!box.iv[n - 1]) {
        if (!free_idx.empty()) throw InternalError("unbounded box volume");
        mpq_class v = 1;
        for (int i = 0; i < r; ++i) v *= box.iv[i]->second - box.iv[i]->first;
        return v;
    }
    mpq_class A = box.iv[n - 1]->first, B = box.iv[n - 1]->second;
    if (free_idx.size() == 1) {
        int i0 = free_idx[0];
        mpq_class v = mpq_class(deltas[n - 1]) * (B - A) / deltas[i0];
        for (int i = 0; i < r; ++i)
            if (i != i0) v *= box.iv[i]->second - box.iv[i]->first;
        return v;
    }
    if (!free_idx.empty()) throw InternalError("box volume with several free coordinates");
    // slab case: sum_{i<r} delta_i x_i in [-delta_n B', -delta_n A'] intersect box
    mpq_class L = -mpq_class(deltas[n - 1]) * B;
    mpq_class U = -mpq_class(deltas[n - 1]) * A;
    std::vector<mpq_class> h(r);
    mpq_class shift = 0, dprod = 1;
    for (int i = 0; i < r; ++i) {
        h[i] = mpq_class(deltas[i]) * (box.iv[i]->second - box.iv[i]->first);
        shift += mpq_class(deltas[i]) * box.iv[i]->first;
        dprod *= deltas[i];
    }
    mpq_class vol_y = orthant_box_cdf(h, U - shift) - orthant_box_cdf(h, L - shift);
    if (vol_y < 0) throw InternalError("negative slab volume");
    return vol_y / dprod;
}

} // namespace

VolumeResult region_volume_box(const RegionSpec& spec) {
    VolumeResult vr;
    if (spec.kind == RegionKind::H_M) {
        // projection of the simplex {x_i <= M, sum delta_i x_i = 0}
        vr.feasible = spec.M > 0;
        if (!vr.feasible) { vr.reason = "M must be positive"; return vr; }
        int r = spec.rank();
        auto deltas = spec.deltas();
        mpq_class v = q_pow(mpq_class(spec.degree()) * spec.M, r) / mpq_class(factorial(r));
        if (spec.frame == Frame::X)
            for (int i = 0; i < r; ++i) v /= deltas[i];
        vr.exact = v;
        vr.has_exact = true;
        return vr;
    }
    PaperBox box;
    std::string reason;
    if (!build_paper_box(spec, box, vr.box_a, vr.box_b, vr.box_c, reason)) {
        vr.feasible = false;
        vr.reason = reason;
        vr.has_exact = true;
        vr.exact = 0;
        return vr;
    }
    vr.feasible = true;
    vr.exact = box_volume(spec, box);
    vr.has_exact = true;
    return vr;
}

std::vector<std::vector<mpq_class>> inscribed_box_points(const RegionSpec& spec) {
    std::vector<std::vector<mpq_class>> out;
    PaperBox box;
    mpq_class a, b, c;
    std::string reason;
    if (!build_paper_box(spec, box, a, b, c, reason)) return out;
    int n = spec.dim();
    auto deltas = spec.deltas();

    // implied coordinate: the single unconstrained one, else coordinate n-1
    int implied = n - 1;
    for (int i = 0; i < n; ++i)
        if (!box.iv[i]) implied = i;

    std::vector<int> iter_idx;
    for (int i = 0; i < n; ++i)
        if (i != implied && box.iv[i]) iter_idx.push_back(i);

    std::vector<int> choice(iter_idx.size(), 0);
    for (;;) {
        std::vector<mpq_class> pt(n, mpq_class(0));
        for (size_t k = 0; k < iter_idx.size(); ++k) {
            const auto& [lo, hi] = *box.iv[iter_idx[k]];
            pt[iter_idx[k]] = choice[k] == 0 ? lo : (choice[k] == 1 ? (lo + hi) / 2 : hi);
        }
        mpq_class s = 0;
        for (int i = 0; i < n; ++i)
            if (i != implied) s += deltas[i] * pt[i];
        pt[implied] = -s / deltas[implied];
        bool keep = true;
        if (box.iv[implied]) {
            const auto& [lo, hi] = *box.iv[implied];
            keep = pt[implied] >= lo && pt[implied] <= hi;
        }
        if (keep) out.push_back(pt);
        // odometer over {lo, mid, hi}
        size_t k = 0;
        while (k < choice.size() && choice[k] == 2) choice[k++] = 0;
        if (k == choice.size()) break;
        ++choice[k];
    }
    return out;
}

VolumeResult region_volume_mc(const RegionSpec& spec, unsigned long samples, std::uint64_t seed) {
    VolumeResult vr;
    vr.samples = samples;
    vr.seed = seed;
    int n = spec.dim();
    int r = spec.rank();
    auto deltas = spec.deltas();
    double M = spec.M.get_d();
    if (M <= 0) { vr.reason = "M must be positive"; return vr; }
    vr.feasible = true;

    std::vector<double> lo(r), hi(r);
    double boxvol = 1.0;
    for (int i = 0; i < r; ++i) {
        if (spec.frame == Frame::T) {
            lo[i] = -2.0 * r * M;
            hi[i] = deltas[i] * M;
        } else {
            lo[i] = -(double)(spec.degree() - deltas[i]) * M / deltas[i];
            hi[i] = M;
        }
        boxvol *= hi[i] - lo[i];
    }
    SplitMix64 rng(seed);
    unsigned long hits = 0;
    std::vector<double> pt(n);
    for (unsigned long s = 0; s < samples; ++s) {
        double acc = 0.0;
        for (int i = 0; i < r; ++i) {
            pt[i] = lo[i] + (hi[i] - lo[i]) * rng.uniform();
            acc += spec.frame == Frame::T ? pt[i] : deltas[i] * pt[i];
        }
        pt[n - 1] = spec.frame == Frame::T ? -acc : -acc / deltas[n - 1];
        if (region_membership(spec, pt, 1e-7)) ++hits;
    }
    double p = samples ? (double)hits / (double)samples : 0.0;
    vr.has_estimate = true;
    vr.estimate = p * boxvol;
    vr.stderr_est = boxvol * std::sqrt(std::max(0.0, p * (1.0 - p) / (double)std::max(1UL, samples)));
    return vr;
}

long count_lattice_points(const UnitGroupBasis& basis, const FieldElement* translate,
                          const RegionSpec& spec, const RealInterval& M, const PrecPolicy& pp) {
    int r = basis.rank();
    int n = spec.dim();
    if (n != basis.field().r1() + basis.field().r2())
        throw InputError("region signature does not match the field");
    for (long prec = pp.start;; prec = std::min(prec * 2, pp.max)) {
        RealInterval Mp_ = M.round_to(prec);
        std::optional<LogVector> t0;
        if (translate) t0 = log_embedding(*translate, prec);
        std::vector<long> box =
            exponent_box_bounds(basis, Mp_, t0 ? &*t0 : nullptr, prec);
        auto G = basis.log_matrix(prec);
        std::vector<long> a(r);
        for (int j = 0; j < r; ++j) a[j] = -box[j];
        long hits = 0;
        bool undecided = false;
        for (;;) {
            std::vector<RealInterval> t;
            t.reserve(n);
            for (int i = 0; i < n; ++i) {
                RealInterval s = t0 ? t0->t[i] : RealInterval::zero(prec);
                for (int j = 0; j < r; ++j)
                    if (a[j] != 0) s = s + G[i][j].mul_long(a[j]);
                t.push_back(s);
            }
            Tri m = region_membership_tri(spec, t, Mp_);
            if (m == Tri::True) ++hits;
            if (m == Tri::Unknown) { undecided = true; break; }
            int j = r - 1;
            while (j >= 0 && a[j] == box[j]) {
                a[j] = -box[j];
                --j;
            }
            if (j < 0) break;
            ++a[j];
        }
        if (!undecided) return hits * basis.torsion_order();
        if (prec >= pp.max)
            throw UndecidedError("lattice point on the region boundary at max precision");
    }
}

std::vector<DensityRow> density_series(const UnitGroupBasis& basis, const FieldElement& alpha,
                                       const mpq_class& nu, const std::vector<mpq_class>& N_grid,
                                       const PrecPolicy& pp) {
    for (size_t i = 1; i < N_grid.size(); ++i)
        if (!(N_grid[i] > N_grid[i - 1])) throw InputError("N grid must be increasing");
    std::vector<DensityRow> rows;
    int r = basis.rank();
    for (const auto& N : N_grid) {
        FamilyClassification fc = classify_family(basis, alpha, N, nu, pp);
        DensityRow row;
        row.N = N;
        row.counts = fc.counts;
        RealInterval logN = RealInterval::from_mpq(N, pp.start).log();
        RealInterval denom = logN;
        for (int k = 1; k < r; ++k) denom = denom * logN;
        row.ratio_total = RealInterval::from_long(fc.counts.total, pp.start) / denom;
        row.ratio_E = RealInterval::from_long(fc.counts.E, pp.start) / denom;
        row.ratio_E_nu = RealInterval::from_long(fc.counts.E_nu, pp.start) / denom;
        row.ratio_tilde = RealInterval::from_long(fc.counts.tilde_E_nu, pp.start) / denom;
        rows.push_back(std::move(row));
    }
    return rows;
}

CmVerdict cm_field_check(const NumberField& K) {
    bool totally_imaginary = K.r1() == 0 && 2 * K.r2() == K.degree();
    bool rank_matches = K.unit_rank() == K.degree() / 2 - 1;
    return totally_imaginary && rank_matches ? CmVerdict::CmWithTotallyRealSubfield
                                             : CmVerdict::NotCm;
}

} // namespace thuelab
