#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "thuelab/field.hpp"

namespace thuelab {

// Integer binary form b0 X^delta + b1 X^{delta-1} Y + ... + b_delta Y^delta,
// primitive with b0 > 0.
struct BinaryForm {
    std::vector<mpz_class> coeffs; // descending in X
    int delta = 0;

    std::string to_string() const;
    bool operator==(const BinaryForm& o) const { return coeffs == o.coeffs; }
};

// The form attached to the minimal polynomial of alpha*eps; delta = deg.
// Requires eps a unit and alpha*eps != 0.
struct TwistedForm {
    BinaryForm form;
    int delta = 0;
};

TwistedForm twisted_form(const FieldElement& alpha, const FieldElement& eps);
// Form of an arbitrary nonzero element (same construction, no unit check).
BinaryForm form_of_element(const FieldElement& g);

mpz_class evaluate(const BinaryForm& f, const mpz_class& x, const mpz_class& y);

// Coefficients reversed (Y^d f(1/Y) shape), sign-normalized; requires a
// nonzero constant coefficient.
BinaryForm reciprocal_form(const BinaryForm& f);

} // namespace thuelab
