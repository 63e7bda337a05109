#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <vector>

#include "thuelab/ball.hpp"
#include "thuelab/interval.hpp"
#include "thuelab/rat_poly.hpp"
#include "thuelab/util.hpp"

namespace thuelab {

class FieldElement;

// Rigorous embedding images of an element, one complex ball per embedding in
// the field's embedding order; conjugate-pair entries are exact mirrors.
struct EmbeddingValues {
    long prec = 0;
    std::vector<ComplexBall> values;
};

// Characteristic polynomial data of multiplication-by-g.
struct CharMin {
    QPoly char_monic;     // degree d, monic, exact
    ZPoly min_primitive;  // primitive, positive leading coefficient
    int delta = 0;        // deg(min); divides d
};

// K = Q(alpha) for an irreducible integer polynomial
// f(X) = a_0 X^d + ... + a_d with a_0 > 0 and d >= 3.
class NumberField {
public:
    // Validates, sign-normalizes, strips content, checks irreducibility
    // exactly and computes the signature by rigorous root isolation.
    static NumberField load(const std::vector<mpz_class>& coeffs_desc,
                            const PrecPolicy& pp = PrecPolicy());

    int degree() const;
    int r1() const;
    int r2() const;
    int unit_rank() const; // r1 + r2 - 1
    // delta_i weights over the r1 + r2 distinguished embeddings.
    std::vector<int> deltas() const;
    const ZPoly& poly_asc() const;
    std::vector<mpz_class> coeffs_desc() const;
    // Certified roots in embedding order at >= prec bits (cached).
    const std::vector<ComplexBall>& roots(long prec) const;

    FieldElement element(std::vector<mpq_class> coords) const;
    FieldElement from_rational(const mpq_class& q) const;
    FieldElement generator() const; // alpha
    FieldElement zero() const;
    FieldElement one() const;

    bool same_field(const NumberField& o) const { return impl_ == o.impl_; }
    const PrecPolicy& prec_policy() const;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
    explicit NumberField(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    friend class FieldElement;
};

// An element of K in the power basis 1, alpha, ..., alpha^{d-1}, exact
// rational coordinates.  Immutable value type.
class FieldElement {
public:
    const NumberField& field() const { return K_; }
    const std::vector<mpq_class>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const; // fails only on zero
    FieldElement pow(long e) const;
    FieldElement scale(const mpq_class& q) const;

    std::string to_string() const;

private:
    NumberField K_;
    std::vector<mpq_class> c_;
    FieldElement(NumberField K, std::vector<mpq_class> c) : K_(std::move(K)), c_(std::move(c)) {}
    friend class NumberField;
};

// --- field_core operations ---

EmbeddingValues embeddings(const FieldElement& g, long prec);
// max_i |sigma_i(g)|; g != 0.
RealInterval house(const FieldElement& g, long prec);
CharMin char_min_poly(const FieldElement& g);
mpq_class norm(const FieldElement& g);
// h(g) = (1/delta) log M(g); g != 0.
RealInterval abs_log_height(const FieldElement& g, long prec);
bool is_unit(const FieldElement& g);

// House as an adaptive predicate helper: escalates until |sigma_i(g)| is
// bounded away from 0 for all i (g != 0 guarantees termination in theory;
// the precision cap bounds it in practice).
EmbeddingValues embeddings_nonzero(const FieldElement& g, const PrecPolicy& pp);

} // namespace thuelab
