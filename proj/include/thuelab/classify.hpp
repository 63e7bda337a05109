#pragma once

#include <string>
#include <vector>

#include "thuelab/units.hpp"

namespace thuelab {

struct ClassificationRecord {
    UnitExponent e;
    bool in_E = false;
    Tri in_E_nu = Tri::False;
    Tri in_tilde_E_nu = Tri::False;
    mpq_class nu;
    RealInterval house_alpha_eps;
    int witness1 = -1, witness2 = -1; // embedding indices when in_E_nu
    int delta = 0;
    bool nu_tests_applicable = true;  // false when house(alpha eps) <= 1
    std::string flag;
};

struct PrivilegedEmbeddings {
    int sigma_a = -1, sigma_b = -1, tau_a = -1, tau_b = -1;
    std::vector<int> Sigma_a, Sigma_b, T_a, T_b;
    std::vector<int> borderline;       // indices with undecided set membership
    bool tau_a_ne_sigma_a = false, tau_b_ne_sigma_b = false;
    long prec = 0;
    std::vector<RealInterval> mod_alpha_eps, mod_beta;
    RealInterval house_alpha_eps, house_beta, min_alpha_eps, min_beta;
    std::string flag;
};

struct FamilyCounts {
    long total = 0;       // |Z_K^x(N)|
    long E = 0;           // |E(N)|
    long E_nu = 0;
    long tilde_E_nu = 0;
    long borderline = 0;
};

struct FamilyClassification {
    std::vector<ClassificationRecord> records;
    FamilyCounts counts;
    std::vector<UnitExponent> undecided_units; // enumeration boundary cases
    std::vector<long> box;
};

// Membership in E, E_nu, tilde E_nu for one unit exponent; 0 < nu < 1.
ClassificationRecord classify_unit(const UnitGroupBasis& basis, const FieldElement& alpha,
                                   const UnitExponent& e, const mpq_class& nu,
                                   const PrecPolicy& pp);

// Arg-max/arg-min embeddings and the four nu-threshold sets for one
// (alpha eps, beta) pair.
PrivilegedEmbeddings privileged(const FieldElement& alpha_eps, const FieldElement& beta,
                                const mpq_class& nu, const PrecPolicy& pp);

// Classifies every unit with house(alpha eps) <= N.
FamilyClassification classify_family(const UnitGroupBasis& basis, const FieldElement& alpha,
                                     const mpq_class& N, const mpq_class& nu,
                                     const PrecPolicy& pp);

// Lowest index attaining the maximum (or minimum) modulus; deterministic
// tie-break by index once enclosures stop separating.
int arg_extreme_modulus(const FieldElement& g, bool maximize, const PrecPolicy& pp);

} // namespace thuelab
