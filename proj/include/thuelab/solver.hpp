#pragma once

#include <optional>
#include <vector>

#include "thuelab/classify.hpp"
#include "thuelab/forms.hpp"
#include "thuelab/units.hpp"

namespace thuelab {

struct SolutionRecord {
    mpz_class x, y;
    UnitExponent e;
    mpz_class value; // F_eps(x, y)
    mpz_class m;
    bool swapped = false; // solved through the reciprocal form (|y| <= |x| branch)
};

// Exactly the pairs 0 < |x|,|y| <= X with |F(x,y)| <= m, sorted by
// (|y|, |x|, x, y).  Complete by construction: per y, integer candidates are
// taken from rigorous root neighbourhoods, then filtered by exact evaluation.
std::vector<SolutionRecord> solve_box(const BinaryForm& form, const mpz_class& m, long X,
                                      const UnitExponent& tag = UnitExponent{});

enum class SetFilter { E, E_nu, TildeE_nu };

struct FamilySolveResult {
    std::vector<SolutionRecord> solutions;
    FamilyClassification classification;
};

// Solves |F_eps(x,y)| <= m over the chosen unit set, both orientations:
// |x| <= |y| on F_eps and |y| <= |x| through the reciprocal form.
FamilySolveResult solve_family(const UnitGroupBasis& basis, const FieldElement& alpha,
                               const mpq_class& nu, const mpz_class& m, const mpq_class& N,
                               long X, SetFilter filter, const PrecPolicy& pp);

// Elimination of x (resp. y) between phi_1, phi_2: rigorous enclosures of the
// solution coordinates.  Throws when the embeddings coincide on alpha*eps.
std::pair<RealInterval, RealInterval> recover_xy(const FieldElement& alpha_eps,
                                                 const FieldElement& beta, int phi1, int phi2,
                                                 const PrecPolicy& pp);

// u1 v2 - u1 v3 + u2 v3 - u2 v1 + u3 v1 - u3 v2.
ComplexBall six_term_residual(const ComplexBall u[3], const ComplexBall v[3]);

struct ExponentEntry {
    SolutionRecord sol;
    RealInterval h_alpha_eps;
    RealInterval margin; // log max{|x|,|y|,e^h} / log m
};

struct ExponentReport {
    std::optional<RealInterval> kappa_emp;
    std::vector<ExponentEntry> entries;
};

ExponentReport empirical_exponent(const std::vector<SolutionRecord>& solutions,
                                  const UnitGroupBasis& basis, const FieldElement& alpha,
                                  const mpz_class& m, const PrecPolicy& pp);

} // namespace thuelab
