#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thuelab/classify.hpp"
#include "thuelab/solver.hpp"

namespace thuelab {

struct Margin {
    std::string id;
    RealInterval lhs, rhs;
    Tri holds = Tri::Unknown;
    std::string note;
};

struct LinearFormEntry {
    std::string id;
    std::vector<int> phis;
    bool degenerate = false;
    RealInterval value;
    RealInterval witness;
    std::string note;
};

struct TraceParams {
    mpq_class lambda{1, 2}; // Lemma "small |phi(alpha eps)|" parameter, in (0,1)
    mpq_class mu{3, 2};     // Lemma "large |phi(alpha eps)|" parameter, > 1
    std::vector<std::array<int, 4>> tuples; // extra four-embedding ratios
};

struct SolutionTrace {
    SolutionRecord solution;
    long A = 1;
    long B = 1;
    RealInterval A_tilde, B_tilde;
    std::optional<BetaDecomposition> beta_dec;
    PrivilegedEmbeddings privileged;
    std::vector<Margin> margins;
    std::vector<LinearFormEntry> linear_forms;
    Tri small_regime = Tri::Unknown; // min(A,B) < c * log m for the computed witness c
    RealInterval regime_threshold;
    bool six_terms_contain_zero = false;
    double six_term_max_width = 0.0;
    int internal_inconsistencies = 0;
};

// Computes beta = x - alpha eps y, its decomposition, the privileged
// embeddings, every margin and the evaluated linear forms.  Total: invalid
// hypotheses yield labeled verdicts, never exceptions.
SolutionTrace trace(const UnitGroupBasis& basis, const FieldElement& alpha,
                    const SolutionRecord& sol, const mpq_class& nu, const mpz_class& m,
                    const PrecPolicy& pp, const TraceParams& params = TraceParams());

} // namespace thuelab
