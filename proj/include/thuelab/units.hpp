#pragma once

#include <optional>
#include <vector>

#include "thuelab/field.hpp"

namespace thuelab {

// delta-weighted logarithmic embedding over the r+1 distinguished embeddings.
struct LogVector {
    std::vector<RealInterval> t;
    std::vector<int> deltas;
};

LogVector log_embedding(const FieldElement& g, long prec);

// Exponent in the unit group: zeta^torsion_power * prod eps_j^{exps[j]}.
struct UnitExponent {
    int torsion_power = 0;
    std::vector<long> exps;

    long A() const {
        long a = 1;
        for (long e : exps) a = std::max(a, std::labs(e));
        return a;
    }
    bool is_identity() const {
        if (torsion_power != 0) return false;
        for (long e : exps)
            if (e != 0) return false;
        return true;
    }
    bool operator==(const UnitExponent& o) const {
        return torsion_power == o.torsion_power && exps == o.exps;
    }
    std::string to_string() const;
};

class UnitGroupBasis {
public:
    const NumberField& field() const { return K_; }
    const std::vector<FieldElement>& fund_units() const { return units_; }
    int rank() const { return (int)units_.size(); }
    int torsion_order() const { return w_; }
    const FieldElement& torsion_gen() const { return tgen_; }
    // Set when a reference regulator was supplied and R/ref is provably > 1.5:
    // the supplied system is independent but not fundamental.
    std::optional<double> nonfundamental_index() const { return nonfund_index_; }

    // (r+1) x r matrix of lambda(eps_j), delta-weighted.
    std::vector<std::vector<RealInterval>> log_matrix(long prec) const;
    // Unweighted log|sigma_i(eps_j)| over the r+1 distinguished embeddings.
    std::vector<std::vector<RealInterval>> log_matrix_unweighted(long prec) const;
    RealInterval regulator(long prec) const;
    // Constant of the two-sided conjugate-size lemma: for gamma = prod eps^c
    // with C = max|c_j| >= 1 there are embeddings with |sigma(gamma)| >= e^{cC}
    // and |tau(gamma)| <= e^{-cC}.  Derived from a smallest-singular-value
    // lower bound of the unweighted log matrix; safe to use its lower end.
    RealInterval c_lemma4(long prec) const;
    // kappa with |log|phi(gamma)|| <= kappa * C for all embeddings phi.
    RealInterval kappa_house(long prec) const;
    // Babai rounding bound: house(reduced) <= |N|^{1/d} e^{mu}.
    RealInterval mu_babai(long prec) const;
    RealInterval sum_unit_heights(long prec) const;

private:
    NumberField K_;
    std::vector<FieldElement> units_;
    int w_ = 2;
    FieldElement tgen_;
    std::optional<double> nonfund_index_;

    UnitGroupBasis(NumberField K, std::vector<FieldElement> u, int w, FieldElement t)
        : K_(std::move(K)), units_(std::move(u)), w_(w), tgen_(std::move(t)) {}
    friend UnitGroupBasis validate_basis(const NumberField&, const std::vector<FieldElement>&,
                                         int, const FieldElement&,
                                         const std::optional<mpq_class>&, const PrecPolicy&);
};

// Builds and checks the basis: unit test on every entry, exact torsion order,
// multiplicative independence via a regulator bounded away from 0.
UnitGroupBasis validate_basis(const NumberField& K, const std::vector<FieldElement>& fund_units,
                              int torsion_order, const FieldElement& torsion_gen,
                              const std::optional<mpq_class>& reference_regulator = std::nullopt,
                              const PrecPolicy& pp = PrecPolicy());

FieldElement unit_from_exponent(const UnitGroupBasis& basis, const UnitExponent& e);

struct EnumeratedUnit {
    UnitExponent e;
    FieldElement u;            // the unit itself
    RealInterval house_alpha_u; // house(alpha * u)
};

struct EnumerationResult {
    std::vector<EnumeratedUnit> units;     // house(alpha u) <= N, proven
    std::vector<UnitExponent> undecided;   // boundary cases at max precision
    std::vector<long> box;                 // per-coordinate exponent bounds used
};

// All units u (torsion included) with house(alpha*u) <= N, each exactly once,
// lexicographic in (exps, torsion_power).  Completeness comes from covering
// H(M+) with M+ = log N + log house(alpha^{-1}).
EnumerationResult enumerate_units(const UnitGroupBasis& basis, const FieldElement& alpha,
                                  const mpq_class& N, const PrecPolicy& pp,
                                  std::optional<long> box_override = std::nullopt);

// Integer exponent box that covers {a : t0 + sum_j a_j lambda(eps_j) in H(M)}.
std::vector<long> exponent_box_bounds(const UnitGroupBasis& basis, const RealInterval& M,
                                      const LogVector* translate, long prec);

struct ReduceResult {
    UnitExponent e;           // g_reduced = unit(e) * g
    FieldElement reduced;
};

// Babai rounding in the unit lattice along the norm direction.
ReduceResult lattice_reduce(const UnitGroupBasis& basis, const FieldElement& g,
                            const PrecPolicy& pp);

struct BetaDecomposition {
    FieldElement rho;
    UnitExponent b;           // beta = rho * unit(b), torsion folded into rho
    long B = 1;
    RealInterval rho_height;
};

BetaDecomposition decompose_beta(const UnitGroupBasis& basis, const FieldElement& beta,
                                 const PrecPolicy& pp);

} // namespace thuelab
