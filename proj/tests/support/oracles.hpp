#pragma once

// Test-only oracles, independent of the implementation paths they check:
// exact bisection for real roots, a cofactor-expansion characteristic
// polynomial, and a naive double-loop Thue solver.

#include <tuple>
#include <vector>

#include "thuelab/field.hpp"
#include "thuelab/forms.hpp"
#include "thuelab/rat_poly.hpp"

namespace thuelab::testing {

inline int sign_at(const ZPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return sgn(acc);
}

// Requires a sign change on [lo, hi]; shrinks the bracket to width <= eps by
// exact rational bisection and returns it.
inline std::pair<mpq_class, mpq_class> bisect_root(const ZPoly& p, mpq_class lo, mpq_class hi,
                                                   const mpq_class& eps) {
    int slo = sign_at(p, lo);
    REQUIRE(slo != 0);
    REQUIRE(sign_at(p, hi) == -slo);
    while (hi - lo > eps) {
        mpq_class mid = (lo + hi) / 2;
        int sm = sign_at(p, mid);
        if (sm == 0) return {mid - eps / 2, mid + eps / 2};
        if (sm == slo) lo = mid;
        else hi = mid;
    }
    return {lo, hi};
}

// The enclosure intersects the exact rational bracket [lo, hi].
inline bool overlaps_bracket(const RealInterval& x, const mpq_class& lo, const mpq_class& hi) {
    return mpfr_cmp_q(x.hi(), lo.get_mpq_t()) >= 0 && mpfr_cmp_q(x.lo(), hi.get_mpq_t()) <= 0;
}

// det(X I - M_g) by cofactor expansion over Q[X].
inline QPoly charpoly_cofactor(const FieldElement& g) {
    const NumberField& K = g.field();
    int d = K.degree();
    std::vector<std::vector<QPoly>> m(d, std::vector<QPoly>(d));
    FieldElement col = g;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            QPoly e;
            if (col.coords()[i] != 0) e.push_back(-col.coords()[i]);
            if (i == j) {
                e.resize(2, mpq_class(0));
                e[1] = 1;
            }
            poly::normalize(e);
            m[i][j] = e;
        }
        if (j + 1 < d) col = col * K.generator();
    }
    std::vector<int> rows(d);
    for (int i = 0; i < d; ++i) rows[i] = i;
    // recursive Laplace over the first column
    std::function<QPoly(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> ri, std::vector<int> ci) -> QPoly {
        if (ri.size() == 1) return m[ri[0]][ci[0]];
        QPoly acc;
        for (size_t k = 0; k < ri.size(); ++k) {
            std::vector<int> ri2;
            for (size_t t = 0; t < ri.size(); ++t)
                if (t != k) ri2.push_back(ri[t]);
            std::vector<int> ci2(ci.begin() + 1, ci.end());
            QPoly term = poly::mul(m[ri[k]][ci[0]], det(ri2, ci2));
            if (k % 2 == 1)
                for (auto& c : term) c = -c;
            acc = poly::add(acc, term);
        }
        return acc;
    };
    std::vector<int> cols = rows;
    return det(rows, cols);
}

inline std::vector<std::tuple<mpz_class, mpz_class, mpz_class>> naive_solve(const BinaryForm& f,
                                                                            const mpz_class& m,
                                                                            long X) {
    std::vector<std::tuple<mpz_class, mpz_class, mpz_class>> out;
    for (long y = -X; y <= X; ++y) {
        if (y == 0) continue;
        for (long x = -X; x <= X; ++x) {
            if (x == 0) continue;
            mpz_class v = evaluate(f, x, y);
            if (abs(v) <= m) out.emplace_back(x, y, v);
        }
    }
    return out;
}

} // namespace thuelab::testing
