#pragma once

#include "nsbl/field.hpp"

namespace nsbl {

// Heat semigroup on the torus: multiply each mode by exp(-|k|^2 t).
// t = 0 is the identity; rejects t < 0.
ScalarField heat_evolve_torus(const ScalarField& f, double t);
VectorField heat_evolve_torus(const VectorField& f, double t);

// Fourier-space Leray / Helmholtz projection: w(k) = (I - k k^T/|k|^2) v(k).
// The k = 0 mode passes through (the projector is defined modulo constants on
// the torus); Nyquist-plane modes are zeroed, matching the derivative
// operators. Output is divergence free and the map is idempotent.
VectorField leray_project(const VectorField& v);

// Zero-mean pressure from the Poisson equation
//   -lap p = sum_ij DiDj(u_i u_j),
// with the quadratic products formed in physical space (2/3-rule dealiased by
// default). For divergence-free u the gradient satisfies
//   grad p = P_H(u.grad u) - u.grad u.
ScalarField pressure_solve(const VectorField& u, bool dealias = true);

}  // namespace nsbl
