#pragma once

// Dense complex polynomials, coefficient k multiplying z^k.

#include <complex>
#include <span>
#include <vector>

namespace bdiv::poly {

using cplx = std::complex<double>;
using Poly = std::vector<cplx>;

Poly multiply(const Poly& a, const Poly& b);
Poly subtract(const Poly& a, const Poly& b);
Poly scale(const Poly& a, cplx s);
Poly derivative(const Poly& a);
// z * a(z)
Poly shift(const Poly& a, int k = 1);
cplx eval(const Poly& a, cplx z);

// Monic polynomial with the given roots; coefficients are signed elementary
// symmetric functions.
Poly from_roots(std::span<const cplx> roots);

// Drops leading coefficients below rel_tol times the largest magnitude.
void trim(Poly& a, double rel_tol = 0.0);

// Eigenvalues of the companion matrix followed by `polish_steps` Newton
// steps (each accepted only if it lowers |p|). Degree-0 input yields no roots.
std::vector<cplx> roots(Poly a, int polish_steps = 2);

}  // namespace bdiv::poly
