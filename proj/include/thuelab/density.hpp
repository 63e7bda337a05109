#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thuelab/classify.hpp"
#include "thuelab/units.hpp"

namespace thuelab {

enum class RegionKind { H_M, D_nu, Dp_nu, Dt_nu, Dpp_nu, Dtp_nu };
enum class Frame { T, X };

const char* region_kind_name(RegionKind k);
std::optional<RegionKind> region_kind_from_name(const std::string& s);

// A region of the Dirichlet hyperplane, parametrized by threshold M,
// exponent nu and the signature; H_M lives naturally in the t-frame, the
// D-family in the x-frame (t_i = delta_i x_i).
struct RegionSpec {
    RegionKind kind = RegionKind::H_M;
    Frame frame = Frame::T;
    mpq_class M = 1;
    mpq_class nu{1, 2};
    int r1 = 0, r2 = 0;

    int dim() const { return r1 + r2; }       // r + 1
    int rank() const { return r1 + r2 - 1; }  // r
    int degree() const { return r1 + 2 * r2; }
    std::vector<int> deltas() const;

    static RegionSpec make(RegionKind kind, int r1, int r2, mpq_class M, mpq_class nu);
};

// Exact membership; the point must satisfy the hyperplane equation
// (within `tol` for the double overload, exactly for the rational one).
bool region_membership(const RegionSpec& spec, const std::vector<double>& pt, double tol = 1e-9);
bool region_membership_q(const RegionSpec& spec, const std::vector<mpq_class>& pt);
// Rigorous membership for enclosure points (hyperplane assumed).
Tri region_membership_tri(const RegionSpec& spec, const std::vector<RealInterval>& pt,
                          const RealInterval& M);

struct VolumeResult {
    bool feasible = false;
    std::string reason;          // set when infeasible
    // analytic-box path
    bool has_exact = false;
    mpq_class exact = 0;
    mpq_class box_a = 0, box_b = 0, box_c = 0;
    // monte-carlo path
    bool has_estimate = false;
    double estimate = 0.0;
    double stderr_est = 0.0;
    unsigned long samples = 0;
    std::uint64_t seed = 0;
};

// Exact volume of H(M) (closed form) or of the paper's inscribed box for the
// D-family, under the projection convention dropping coordinate r+1.
VolumeResult region_volume_box(const RegionSpec& spec);
// Monte-Carlo estimate of the region volume itself.
VolumeResult region_volume_mc(const RegionSpec& spec, unsigned long samples, std::uint64_t seed);

// Exact rational points inside the paper's inscribed box (corner combinations
// filtered by the hyperplane constraint); empty iff infeasible.
std::vector<std::vector<mpq_class>> inscribed_box_points(const RegionSpec& spec);

// Counts points of (lambda(translate) +) lambda(Z_K^x) inside the region,
// torsion multiplicity included.  M is passed separately as an enclosure so
// irrational thresholds (log N +- log house) stay rigorous; spec.M is ignored.
long count_lattice_points(const UnitGroupBasis& basis, const FieldElement* translate,
                          const RegionSpec& spec, const RealInterval& M, const PrecPolicy& pp);

struct DensityRow {
    mpq_class N;
    FamilyCounts counts;
    RealInterval ratio_total, ratio_E, ratio_E_nu, ratio_tilde; // count / (log N)^r
};

std::vector<DensityRow> density_series(const UnitGroupBasis& basis, const FieldElement& alpha,
                                       const mpq_class& nu, const std::vector<mpq_class>& N_grid,
                                       const PrecPolicy& pp);

enum class CmVerdict { NotCm, CmWithTotallyRealSubfield };

// Structural test: totally imaginary with the unit rank of a totally real
// field of half the degree.
CmVerdict cm_field_check(const NumberField& K);

struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return (double)(next() >> 11) * 0x1.0p-53; }
};

} // namespace thuelab
