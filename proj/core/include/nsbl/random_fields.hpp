#pragma once

#include <cstdint>

#include "nsbl/field.hpp"

namespace nsbl {

// Band-limited random scalar field: white Gaussian noise filtered by the
// radial amplitude profile |k|^2 exp(-(|k|/k0)^2) (energy spectrum
// k^4 exp(-2 (k/k0)^2)), zero mean, deterministic given the seed.
ScalarField random_scalar_field(const GridSpec& g, std::uint64_t seed, double k0 = 2.0);

// Same per component; not divergence free.
VectorField random_vector_field(const GridSpec& g, std::uint64_t seed, double k0 = 2.0);

// Divergence-free zero-mean random velocity: filtered noise, Leray projected,
// rescaled to the requested component-sum L2 norm.
VectorField random_divfree_field(const GridSpec& g, std::uint64_t seed, double k0 = 2.0,
                                 double l2_norm = 1.0);

// C-infinity bump supported in the central eighth of the box (the cube of
// side L/2 around the center), 1 at the center, identically 0 outside.
ScalarField bump_window(const GridSpec& g);

// Bump times band-limited random field: compactly supported smooth samples
// for whole-space inequality checks on the torus.
ScalarField bump_modulated_scalar(const GridSpec& g, std::uint64_t seed, double k0 = 3.0);
VectorField bump_modulated_vector(const GridSpec& g, std::uint64_t seed, double k0 = 3.0);

// Center dilation u -> lambda u(c + lambda (x - c)) for integer lambda >= 1,
// sampled without interpolation (requires n divisible by 2*lambda... exact
// for lattice-compatible lambda). Supports the scaling-invariance checks on
// compactly supported fields.
ScalarField dilate_about_center(const ScalarField& f, int lambda);
VectorField dilate_about_center(const VectorField& f, int lambda);

}  // namespace nsbl
