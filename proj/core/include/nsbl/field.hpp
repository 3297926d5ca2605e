#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "nsbl/grid.hpp"

namespace nsbl {

using cplx = std::complex<double>;

enum class Rep : std::uint8_t { physical, spectral };

// Single-component field on a periodic grid. Exactly one representation is
// stored at a time:
//   physical: n^3 real samples, x-fastest row-major (index (iz*n + iy)*n + ix)
//   spectral: n*n*(n/2+1) coefficients, kx halved by Hermitian symmetry,
//             index (mz*n + my)*(n/2+1) + kx
// The spectral normalization is u(x) = sum_k uhat(k) exp(i k.x), i.e. the
// k = 0 coefficient is the field average.
class ScalarField {
public:
    ScalarField() = default;
    static ScalarField physical(const GridSpec& g, std::vector<double> samples);
    static ScalarField spectral(const GridSpec& g, std::vector<cplx> coefs);
    static ScalarField zero(const GridSpec& g, Rep rep = Rep::physical);

    const GridSpec& grid() const { return grid_; }
    Rep rep() const { return rep_; }

    const std::vector<double>& samples() const;
    const std::vector<cplx>& coefs() const;
    std::vector<double>& mutable_samples();
    std::vector<cplx>& mutable_coefs();

private:
    GridSpec grid_;
    Rep rep_ = Rep::physical;
    std::vector<double> phys_;
    std::vector<cplx> spec_;
};

// Three-component field; all components share grid and representation.
class VectorField {
public:
    VectorField() = default;
    explicit VectorField(std::array<ScalarField, 3> comps);
    static VectorField zero(const GridSpec& g, Rep rep = Rep::physical);

    const GridSpec& grid() const { return comp_[0].grid(); }
    Rep rep() const { return comp_[0].rep(); }
    const ScalarField& operator[](int i) const { return comp_[i]; }
    ScalarField& operator[](int i) { return comp_[i]; }

private:
    std::array<ScalarField, 3> comp_;
};

// Representation changes (exact round trip up to roundoff). Total: passing a
// field already in the target representation returns a copy.
ScalarField to_spectral(const ScalarField& f);
ScalarField to_physical(const ScalarField& f);
VectorField to_spectral(const VectorField& f);
VectorField to_physical(const VectorField& f);

}  // namespace nsbl
