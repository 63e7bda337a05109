#pragma once

#include <gmpxx.h>

#include <vector>

#include "thuelab/ball.hpp"
#include "thuelab/interval.hpp"

namespace thuelab {

// Dense polynomials, coefficients stored ascending (coeffs[i] is the X^i term).
using QPoly = std::vector<mpq_class>;
using ZPoly = std::vector<mpz_class>;

namespace poly {

void normalize(QPoly& p);                  // drop trailing zeros
void normalize_z(ZPoly& p);
int degree(const QPoly& p);                // -1 for zero polynomial
int degree_z(const ZPoly& p);

QPoly from_z(const ZPoly& p);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const mpq_class& c);
// a = q*b + r with deg r < deg b (b != 0)
void divrem(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly derivative(const QPoly& p);
QPoly monic(const QPoly& p);
QPoly gcd_monic(QPoly a, QPoly b);
mpq_class eval_q(const QPoly& p, const mpq_class& x);

mpz_class content(const ZPoly& p);
// Clears denominators and content; leading coefficient made positive.
ZPoly primitive_from_q(const QPoly& p);
ZPoly derivative_z(const ZPoly& p);
// Squarefree part p / gcd(p, p') as a primitive integer polynomial.
ZPoly squarefree_part(const ZPoly& p);

// Number of real roots of a squarefree integer polynomial (Sturm, exact).
int count_real_roots(const ZPoly& p_squarefree);

// Horner evaluation with rigorous enclosures.
ComplexBall eval_ball(const ZPoly& p, const ComplexBall& z);
ComplexBall eval_ball_q(const QPoly& p, const ComplexBall& z, long prec);
RealInterval eval_interval(const ZPoly& p, const RealInterval& x);

std::string to_string(const ZPoly& p, const char* var = "X");

} // namespace poly
} // namespace thuelab
