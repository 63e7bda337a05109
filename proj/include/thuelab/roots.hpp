#pragma once

#include <vector>

#include "thuelab/ball.hpp"
#include "thuelab/rat_poly.hpp"

namespace thuelab {

// Certified roots of a squarefree integer polynomial, one disjoint ball per
// root, arranged in embedding order:
//   real roots ascending, then one representative per conjugate pair
//   (positive imaginary part) ordered by (real part, imaginary part),
//   then the mirrored conjugates in matching order.
struct RootSet {
    long prec = 0;
    int r1 = 0;
    int r2 = 0;
    std::vector<ComplexBall> roots;
};

// Isolates all roots with radius roughly 2^-prec.  Escalates its internal
// working precision as needed; throws UndecidedError past work_cap bits.
RootSet isolate_roots(const ZPoly& squarefree, long prec, long work_cap = 1L << 20);

// Refines to a higher precision keeping the index order of `base`
// (each refined ball is matched to the base ball containing its center).
RootSet refine_roots(const ZPoly& squarefree, const RootSet& base, long prec, long work_cap = 1L << 20);

} // namespace thuelab
