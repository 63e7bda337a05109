#include "thuelab/forms.hpp"

#include <sstream>

namespace thuelab {

std::string BinaryForm::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        const mpz_class& c = coeffs[i];
        if (c == 0) continue;
        int dx = delta - (int)i;
        int dy = (int)i;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        mpz_class a = abs(c);
        if (a != 1 || (dx == 0 && dy == 0)) os << a.get_str();
        if (dx > 0) { os << "X"; if (dx > 1) os << "^" << dx; }
        if (dy > 0) { os << "Y"; if (dy > 1) os << "^" << dy; }
    }
    if (first) os << "0";
    return os.str();
}

BinaryForm form_of_element(const FieldElement& g) {
    if (g.is_zero()) throw InputError("form of zero element");
    CharMin cm = char_min_poly(g);
    BinaryForm f;
    f.delta = cm.delta;
    f.coeffs.assign(cm.min_primitive.rbegin(), cm.min_primitive.rend());
    return f;
}

TwistedForm twisted_form(const FieldElement& alpha, const FieldElement& eps) {
    if (!is_unit(eps)) throw InputError("twist element is not a unit");
    FieldElement ae = alpha * eps;
    if (ae.is_zero()) throw InputError("alpha*eps is zero");
    TwistedForm tf;
    tf.form = form_of_element(ae);
    tf.delta = tf.form.delta;
    return tf;
}

mpz_class evaluate(const BinaryForm& f, const mpz_class& x, const mpz_class& y) {
    mpz_class acc(0), yp(1);
    // sum b_i x^{delta-i} y^i, Horner in x with running powers of y
    for (size_t i = 0; i < f.coeffs.size(); ++i) {
        acc = acc * x + f.coeffs[i] * yp;
        if (i + 1 < f.coeffs.size()) yp *= y;
    }
    return acc;
}

BinaryForm reciprocal_form(const BinaryForm& f) {
    if (f.coeffs.empty() || f.coeffs.back() == 0)
        throw InputError("reciprocal form requires a nonzero constant coefficient");
    BinaryForm r;
    r.delta = f.delta;
    r.coeffs.assign(f.coeffs.rbegin(), f.coeffs.rend());
    if (r.coeffs.front() < 0)
        for (auto& c : r.coeffs) c = -c;
    return r;
}

} // namespace thuelab
