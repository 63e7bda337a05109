#include "thuelab/rat_poly.hpp"

#include <sstream>

namespace thuelab {
namespace poly {

void normalize(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void normalize_z(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) { return (int)p.size() - 1; }
int degree_z(const ZPoly& p) { return (int)p.size() - 1; }

QPoly from_z(const ZPoly& p) {
    QPoly q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = mpq_class(p[i]);
    return q;
}

QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    normalize(r);
    return r;
}

QPoly scale(const QPoly& a, const mpq_class& c) {
    if (c == 0) return {};
    QPoly r = a;
    for (auto& x : r) x *= c;
    return r;
}

void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    if (b.empty()) throw InternalError("polynomial division by zero");
    r = a;
    normalize(r);
    q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, mpq_class(0));
    const mpq_class& lead = b.back();
    while ((int)r.size() >= (int)b.size() && !r.empty()) {
        mpq_class c = r.back() / lead;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        normalize(r);
        if (!r.empty() && r.size() > shift + b.size() - 1) throw InternalError("divrem degree bug");
    }
    normalize(q);
}

QPoly derivative(const QPoly& p) {
    if (p.size() <= 1) return {};
    QPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * (long)i;
    normalize(r);
    return r;
}

QPoly monic(const QPoly& p) {
    if (p.empty()) return p;
    QPoly r = p;
    mpq_class inv = 1 / p.back();
    for (auto& c : r) c *= inv;
    return r;
}

QPoly gcd_monic(QPoly a, QPoly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        QPoly q, r;
        divrem(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return a;
    return monic(a);
}

mpq_class eval_q(const QPoly& p, const mpq_class& x) {
    mpq_class acc(0);
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

mpz_class content(const ZPoly& p) {
    mpz_class g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly primitive_from_q(const QPoly& p) {
    if (p.empty()) return {};
    mpz_class den(1);
    for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        mpq_class t = p[i] * mpq_class(den);
        if (t.get_den() != 1) throw InternalError("denominator clearing failed");
        z[i] = t.get_num();
    }
    mpz_class g = content(z);
    if (g != 0)
        for (auto& c : z) c /= g;
    if (!z.empty() && z.back() < 0)
        for (auto& c : z) c = -c;
    return z;
}

ZPoly derivative_z(const ZPoly& p) {
    if (p.size() <= 1) return {};
    ZPoly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * (long)i;
    normalize_z(r);
    return r;
}

ZPoly squarefree_part(const ZPoly& p) {
    QPoly q = from_z(p);
    QPoly g = gcd_monic(q, from_z(derivative_z(p)));
    if (degree(g) <= 0) {
        ZPoly r = p;
        mpz_class c = content(r);
        if (c != 0)
            for (auto& x : r) x /= c;
        if (!r.empty() && r.back() < 0)
            for (auto& x : r) x = -x;
        return r;
    }
    QPoly s, rem;
    divrem(q, g, s, rem);
    if (!rem.empty()) throw InternalError("squarefree division not exact");
    return primitive_from_q(s);
}

namespace {

int sign_q(const mpq_class& x) { return sgn(x); }

// Sign variation count in a sequence, zeros skipped.
int variations(const std::vector<int>& s) {
    int v = 0, prev = 0;
    for (int x : s) {
        if (x == 0) continue;
        if (prev != 0 && x != prev) ++v;
        prev = x;
    }
    return v;
}

} // namespace

int count_real_roots(const ZPoly& p_squarefree) {
    QPoly a = from_z(p_squarefree);
    if (degree(a) <= 0) return 0;
    std::vector<QPoly> chain;
    chain.push_back(a);
    chain.push_back(derivative(a));
    while (!chain.back().empty() && degree(chain.back()) > 0) {
        QPoly q, r;
        divrem(chain[chain.size() - 2], chain.back(), q, r);
        for (auto& c : r) c = -c;
        normalize(r);
        if (r.empty()) break;
        chain.push_back(r);
    }
    std::vector<int> at_minf, at_pinf;
    for (const auto& p : chain) {
        if (p.empty()) continue;
        int lead = sign_q(p.back());
        int d = degree(p);
        at_pinf.push_back(lead);
        at_minf.push_back(d % 2 == 0 ? lead : -lead);
    }
    return variations(at_minf) - variations(at_pinf);
}

ComplexBall eval_ball(const ZPoly& p, const ComplexBall& z) {
    long prec = z.prec();
    ComplexBall acc = ComplexBall::from_long(0, 0, prec);
    for (size_t i = p.size(); i-- > 0;) {
        acc = acc * z + ComplexBall::from_mpq(mpq_class(p[i]), 0, prec);
    }
    return acc;
}

ComplexBall eval_ball_q(const QPoly& p, const ComplexBall& z, long prec) {
    ComplexBall acc = ComplexBall::from_long(0, 0, prec);
    for (size_t i = p.size(); i-- > 0;) {
        acc = acc * z + ComplexBall::from_mpq(p[i], 0, prec);
    }
    return acc;
}

RealInterval eval_interval(const ZPoly& p, const RealInterval& x) {
    long prec = x.prec();
    RealInterval acc = RealInterval::from_long(0, prec);
    for (size_t i = p.size(); i-- > 0;) {
        acc = acc * x + RealInterval::from_mpz(p[i], prec);
    }
    return acc;
}

std::string to_string(const ZPoly& p, const char* var) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = p.size(); i-- > 0;) {
        if (p[i] == 0) continue;
        mpz_class c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            os << var;
            if (i >= 2) os << "^" << i;
        }
    }
    return os.str();
}

} // namespace poly
} // namespace thuelab
