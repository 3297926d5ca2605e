#pragma once

#include "nsbl/field.hpp"

namespace nsbl {

// Visit every stored mode. fn(s, mx, my, mz) receives the flat storage index
// and the signed integer frequencies (mx in 0..n/2; my, mz in -n/2+1..n/2).
// Physical wavenumbers are dk() times these.
template <class F>
void for_each_mode(const GridSpec& g, F&& fn) {
    const int n = g.n;
    const int nxh = n / 2 + 1;
    std::size_t s = 0;
    for (int iz = 0; iz < n; ++iz) {
        const int mz = g.signed_index(iz);
        for (int iy = 0; iy < n; ++iy) {
            const int my = g.signed_index(iy);
            for (int mx = 0; mx < nxh; ++mx, ++s) {
                fn(s, mx, my, mz);
            }
        }
    }
}

// Spectral derivative along one axis; the Nyquist mode is zeroed (its odd
// derivative has no well-defined sign on a real grid).
ScalarField derivative(const ScalarField& f, int axis);

ScalarField divergence(const VectorField& f);
VectorField curl(const VectorField& f);
VectorField gradient(const ScalarField& f);

// Zero every mode with any |signed frequency| above n/3 (the 2/3 rule).
ScalarField dealias_23(const ScalarField& f);
VectorField dealias_23(const VectorField& f);

// Field average = the k = 0 coefficient.
double mean(const ScalarField& f);
ScalarField subtract_mean(const ScalarField& f);
VectorField subtract_mean(const VectorField& f);

ScalarField scale(const ScalarField& f, double c);
VectorField scale(const VectorField& f, double c);
VectorField axpy(const VectorField& x, double a, const VectorField& y);  // x + a*y, spectral

// Max |coefficient mismatch| between Hermitian-partner entries on the
// self-conjugate planes kx = 0 and kx = n/2 (diagnostic for the real-field
// invariant; zero in exact arithmetic).
double hermitian_defect(const ScalarField& f);
double hermitian_defect(const VectorField& f);

// Sum of |divergence coefficients|, an upper bound for the physical sup of
// the divergence. Cheap solenoidality monitor (no transform).
double divergence_sup_bound(const VectorField& f);

}  // namespace nsbl
