#include "thuelab/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "thuelab/roots.hpp"

namespace thuelab {

struct NumberField::Impl {
    ZPoly f;          // ascending, primitive, positive lead
    int d = 0;
    int r1 = 0;
    int r2 = 0;
    PrecPolicy pp;
    // reduction row: alpha^d = sum red[i] alpha^i
    std::vector<mpq_class> red;

    mutable std::mutex mu;
    mutable std::optional<RootSet> base_roots;
    mutable std::map<long, RootSet> root_cache;

    const RootSet& roots_at(long prec) const {
        std::lock_guard<std::mutex> lk(mu);
        auto it = root_cache.find(prec);
        if (it != root_cache.end()) return it->second;
        if (!base_roots) {
            base_roots = isolate_roots(f, std::max(prec, 96L));
            if (base_roots->r1 != r1) throw InternalError("signature mismatch in root cache");
        }
        RootSet rs = refine_roots(f, *base_roots, prec);
        auto [pos, ok] = root_cache.emplace(prec, std::move(rs));
        (void)ok;
        return pos->second;
    }
};

namespace {

// Irreducibility by factor reconstruction from certified roots: a monic
// factor over Z corresponds to a conjugation-closed subset S of the roots
// with a_0 * e_j(S) integral for all j.  Rejection by enclosure is rigorous;
// acceptance is confirmed by exact division.
bool has_proper_factor(const ZPoly& f, int r1, int r2, long start_prec) {
    int d = poly::degree_z(f);
    mpz_class a0 = f.back();
    for (long prec = start_prec;; prec *= 2) {
        if (prec > (1L << 16)) throw UndecidedError("irreducibility test: precision blowup");
        RootSet rs = isolate_roots(f, prec);
        // Real-coefficient building blocks: (X - rho_i) for real roots,
        // (X^2 - 2 Re(z_j) X + |z_j|^2) for conjugate pairs.
        std::vector<std::vector<RealInterval>> lin, quad;
        for (int i = 0; i < r1; ++i) {
            RealInterval rho = rs.roots[i].real_part();
            lin.push_back({-rho, RealInterval::from_long(1, prec)});
        }
        for (int j = 0; j < r2; ++j) {
            const ComplexBall& z = rs.roots[r1 + j];
            RealInterval re = z.real_part();
            RealInterval m2 = z.abs().square();
            quad.push_back({m2, re.mul_long(-2), RealInterval::from_long(1, prec)});
        }

        bool undecided = false;
        for (unsigned maskR = 0; maskR < (1u << r1) && !undecided; ++maskR) {
            for (unsigned maskC = 0; maskC < (1u << r2) && !undecided; ++maskC) {
                int sz = __builtin_popcount(maskR) + 2 * __builtin_popcount(maskC);
                if (sz == 0 || sz == d) continue;
                if (2 * sz > d) continue; // complement factor is smaller
                std::vector<RealInterval> prod = {RealInterval::from_long(1, prec)};
                auto mul_in = [&](const std::vector<RealInterval>& g) {
                    std::vector<RealInterval> out(prod.size() + g.size() - 1,
                                                  RealInterval::from_long(0, prec));
                    for (size_t i = 0; i < prod.size(); ++i)
                        for (size_t j = 0; j < g.size(); ++j) out[i + j] = out[i + j] + prod[i] * g[j];
                    prod = std::move(out);
                };
                for (int i = 0; i < r1; ++i)
                    if (maskR & (1u << i)) mul_in(lin[i]);
                for (int j = 0; j < r2; ++j)
                    if (maskC & (1u << j)) mul_in(quad[j]);
                // candidate coefficients a0 * e_j must pin unique integers
                ZPoly cand(prod.size());
                bool reject = false;
                for (size_t i = 0; i < prod.size() && !reject; ++i) {
                    RealInterval c = prod[i] * RealInterval::from_mpz(a0, prec);
                    auto [zlo, zhi] = c.integer_range();
                    if (zlo > zhi) reject = true;        // no integer in range
                    else if (zlo != zhi) undecided = true; // too wide, refine roots
                    else cand[i] = zlo;
                }
                if (reject || undecided) continue;
                poly::normalize_z(cand);
                if (poly::degree_z(cand) != sz) { undecided = true; continue; }
                // primitive part, then exact division test
                mpz_class g = poly::content(cand);
                if (g != 0)
                    for (auto& c : cand) c /= g;
                QPoly q, r;
                poly::divrem(poly::from_z(f), poly::from_z(cand), q, r);
                if (r.empty()) return true;
            }
        }
        if (!undecided) return false;
    }
}

} // namespace

NumberField NumberField::load(const std::vector<mpz_class>& coeffs_desc, const PrecPolicy& pp) {
    if (coeffs_desc.empty()) throw InputError("empty coefficient list");
    if (coeffs_desc.front() == 0) throw InputError("leading coefficient is zero");
    ZPoly f(coeffs_desc.rbegin(), coeffs_desc.rend());
    poly::normalize_z(f);
    int d = poly::degree_z(f);
    if (d < 3) throw InputError("degree < 3");
    if (f.back() < 0)
        for (auto& c : f) c = -c;
    mpz_class cont = poly::content(f);
    if (cont > 1)
        for (auto& c : f) c /= cont;

    // squarefree check (a repeated factor already implies reducibility here)
    QPoly g = poly::gcd_monic(poly::from_z(f), poly::from_z(poly::derivative_z(f)));
    if (poly::degree(g) > 0) throw InputError("polynomial is not squarefree, hence reducible");

    int r1 = poly::count_real_roots(f);
    int r2 = (d - r1) / 2;
    if (r1 + 2 * r2 != d) throw InternalError("signature arithmetic failed");

    if (has_proper_factor(f, r1, r2, 192)) throw InputError("polynomial is reducible over Q");

    auto impl = std::make_shared<Impl>();
    impl->f = f;
    impl->d = d;
    impl->r1 = r1;
    impl->r2 = r2;
    impl->pp = pp;
    impl->red.assign(d, mpq_class(0));
    // a0 alpha^d = -(a_{d-1}... ) in ascending storage: f = sum f[i] X^i
    for (int i = 0; i < d; ++i) impl->red[i] = mpq_class(-f[i]) / mpq_class(f[d]);
    return NumberField(std::move(impl));
}

int NumberField::degree() const { return impl_->d; }
int NumberField::r1() const { return impl_->r1; }
int NumberField::r2() const { return impl_->r2; }
int NumberField::unit_rank() const { return impl_->r1 + impl_->r2 - 1; }
const ZPoly& NumberField::poly_asc() const { return impl_->f; }
const PrecPolicy& NumberField::prec_policy() const { return impl_->pp; }

std::vector<int> NumberField::deltas() const {
    std::vector<int> d;
    for (int i = 0; i < impl_->r1; ++i) d.push_back(1);
    for (int i = 0; i < impl_->r2; ++i) d.push_back(2);
    return d;
}

std::vector<mpz_class> NumberField::coeffs_desc() const {
    return std::vector<mpz_class>(impl_->f.rbegin(), impl_->f.rend());
}

const std::vector<ComplexBall>& NumberField::roots(long prec) const {
    return impl_->roots_at(prec).roots;
}

FieldElement NumberField::element(std::vector<mpq_class> coords) const {
    if ((int)coords.size() != impl_->d) throw InputError("coordinate vector has wrong length");
    return FieldElement(*this, std::move(coords));
}

FieldElement NumberField::from_rational(const mpq_class& q) const {
    std::vector<mpq_class> c(impl_->d, mpq_class(0));
    c[0] = q;
    return FieldElement(*this, std::move(c));
}

FieldElement NumberField::generator() const {
    std::vector<mpq_class> c(impl_->d, mpq_class(0));
    if (impl_->d > 1) c[1] = 1;
    return FieldElement(*this, std::move(c));
}

FieldElement NumberField::zero() const { return from_rational(0); }
FieldElement NumberField::one() const { return from_rational(1); }

bool FieldElement::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return c_ == o.c_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    std::vector<mpq_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] + o.c_[i];
    return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    std::vector<mpq_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] - o.c_[i];
    return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator-() const {
    std::vector<mpq_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    int d = (int)c_.size();
    const auto& red = K_.impl_->red;
    std::vector<mpq_class> t(2 * d - 1, mpq_class(0));
    for (int i = 0; i < d; ++i) {
        if (c_[i] == 0) continue;
        for (int j = 0; j < d; ++j) {
            if (o.c_[j] == 0) continue;
            t[i + j] += c_[i] * o.c_[j];
        }
    }
    for (int k = 2 * d - 2; k >= d; --k) {
        if (t[k] == 0) continue;
        mpq_class c = t[k];
        t[k] = 0;
        for (int i = 0; i < d; ++i)
            if (red[i] != 0) t[k - d + i] += c * red[i];
    }
    t.resize(d);
    return FieldElement(K_, std::move(t));
}

FieldElement FieldElement::scale(const mpq_class& q) const {
    std::vector<mpq_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * q;
    return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw InputError("inverse of zero");
    // extended Euclid: u*g + v*f = 1 in Q[X]
    QPoly g(c_.begin(), c_.end());
    poly::normalize(g);
    QPoly f = poly::from_z(K_.impl_->f);
    QPoly r0 = f, r1 = g;
    QPoly s0 = {}, s1 = {mpq_class(1)};
    while (!r1.empty() && poly::degree(r1) > 0) {
        QPoly q, r;
        poly::divrem(r0, r1, q, r);
        QPoly s2 = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw InternalError("element shares a factor with f (f reducible?)");
    // r1 is a nonzero constant: inverse = s1 / r1
    QPoly inv = poly::scale(s1, 1 / r1[0]);
    std::vector<mpq_class> c(c_.size(), mpq_class(0));
    for (size_t i = 0; i < inv.size(); ++i) c[i] = inv[i];
    return FieldElement(K_, std::move(c));
}

FieldElement FieldElement::pow(long e) const {
    FieldElement base = e >= 0 ? *this : inverse();
    unsigned long k = e >= 0 ? (unsigned long)e : (unsigned long)(-(e + 1)) + 1UL;
    FieldElement acc = K_.one();
    while (k > 0) {
        if (k & 1UL) acc = acc * base;
        k >>= 1UL;
        if (k > 0) base = base * base;
    }
    return acc;
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].get_str();
    }
    os << ")";
    return os.str();
}

EmbeddingValues embeddings(const FieldElement& g, long prec) {
    const NumberField& K = g.field();
    const auto& roots = K.roots(prec);
    int d = K.degree();
    int r1 = K.r1(), r2 = K.r2();
    QPoly gp(g.coords().begin(), g.coords().end());
    EmbeddingValues ev;
    ev.prec = prec;
    ev.values.reserve(d);
    for (int i = 0; i < r1 + r2; ++i)
        ev.values.push_back(poly::eval_ball_q(gp, roots[i], prec));
    // conjugate slots are exact mirrors of the representatives
    for (int i = 0; i < r2; ++i)
        ev.values.push_back(ev.values[r1 + i].conj());
    return ev;
}

EmbeddingValues embeddings_nonzero(const FieldElement& g, const PrecPolicy& pp) {
    if (g.is_zero()) throw InputError("zero element");
    return resolve_with_precision(pp, [&](long p) -> std::optional<EmbeddingValues> {
        EmbeddingValues ev = embeddings(g, p);
        for (const auto& b : ev.values)
            if (b.contains_zero()) return std::nullopt;
        return ev;
    }, "nonzero embedding values");
}

RealInterval house(const FieldElement& g, long prec) {
    if (g.is_zero()) throw InputError("house of zero");
    EmbeddingValues ev = embeddings(g, prec);
    RealInterval h = ev.values[0].abs();
    for (size_t i = 1; i < ev.values.size(); ++i) h = h.max_with(ev.values[i].abs());
    return h;
}

CharMin char_min_poly(const FieldElement& g) {
    const NumberField& K = g.field();
    int d = K.degree();
    // multiplication matrix: column j = coordinates of g * alpha^j
    std::vector<std::vector<mpq_class>> M(d, std::vector<mpq_class>(d));
    FieldElement col = g;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) M[i][j] = col.coords()[i];
        if (j + 1 < d) col = col * K.generator();
    }
    // Faddeev-LeVerrier: char(X) = X^d + c1 X^{d-1} + ... + cd
    std::vector<mpq_class> c(d + 1);
    c[0] = 1;
    std::vector<std::vector<mpq_class>> Mk = M;
    for (int k = 1; k <= d; ++k) {
        if (k > 1) {
            // Mk = M * (Mk_prev + c_{k-1} I)
            std::vector<std::vector<mpq_class>> t = Mk;
            for (int i = 0; i < d; ++i) t[i][i] += c[k - 1];
            std::vector<std::vector<mpq_class>> nm(d, std::vector<mpq_class>(d, mpq_class(0)));
            for (int i = 0; i < d; ++i)
                for (int l = 0; l < d; ++l) {
                    if (M[i][l] == 0) continue;
                    for (int j = 0; j < d; ++j) nm[i][j] += M[i][l] * t[l][j];
                }
            Mk = std::move(nm);
        }
        mpq_class tr(0);
        for (int i = 0; i < d; ++i) tr += Mk[i][i];
        c[k] = -tr / k;
    }
    CharMin cm;
    cm.char_monic.assign(d + 1, mpq_class(0));
    for (int k = 0; k <= d; ++k) cm.char_monic[d - k] = c[k];
    // min = squarefree part of char (char is a power of the irreducible min)
    QPoly dch = poly::derivative(cm.char_monic);
    QPoly gcd = poly::gcd_monic(cm.char_monic, dch);
    QPoly min_q, rem;
    poly::divrem(cm.char_monic, gcd, min_q, rem);
    if (!rem.empty()) throw InternalError("char/gcd division not exact");
    cm.min_primitive = poly::primitive_from_q(min_q);
    cm.delta = poly::degree_z(cm.min_primitive);
    if (cm.delta <= 0 || d % cm.delta != 0) throw InternalError("min poly degree does not divide d");
    return cm;
}

mpq_class norm(const FieldElement& g) {
    if (g.is_zero()) return 0;
    CharMin cm = char_min_poly(g);
    mpq_class n = cm.char_monic[0];
    if (g.field().degree() % 2 != 0) n = -n;
    return n;
}

RealInterval abs_log_height(const FieldElement& g, long prec) {
    if (g.is_zero()) throw InputError("height of zero");
    const NumberField& K = g.field();
    int d = K.degree();
    CharMin cm = char_min_poly(g);
    // h(g) = (1/delta) log lead(min) + (1/d) sum_i log max(1, |sigma_i(g)|)
    EmbeddingValues ev = embeddings(g, prec);
    RealInterval one = RealInterval::from_long(1, prec);
    RealInterval acc = RealInterval::from_long(0, prec);
    for (const auto& b : ev.values) acc = acc + b.abs().max_with(one).log();
    acc = acc.div_long(d);
    RealInterval lead = RealInterval::from_mpz(cm.min_primitive.back(), prec);
    return acc + lead.log().div_long(cm.delta);
}

bool is_unit(const FieldElement& g) {
    if (g.is_zero()) return false;
    CharMin cm = char_min_poly(g);
    if (cm.min_primitive.back() != 1) return false;
    mpz_class c0 = cm.min_primitive.front();
    return c0 == 1 || c0 == -1;
}

} // namespace thuelab
