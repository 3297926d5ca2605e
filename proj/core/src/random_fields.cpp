#include "nsbl/random_fields.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "nsbl/field_ops.hpp"
#include "nsbl/norms.hpp"
#include "nsbl/operators.hpp"

namespace nsbl {

namespace {

// Physical white noise shaped by a real radial multiplier keeps the Hermitian
// structure intact and is deterministic in the fill order.
ScalarField filtered_noise(const GridSpec& g, std::mt19937_64& rng, double k0) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> noise(g.num_points());
    for (double& v : noise) v = gauss(rng);
    ScalarField f = to_spectral(ScalarField::physical(g, std::move(noise)));
    std::vector<cplx> c = f.coefs();
    // |m| in units of the fundamental wavenumber; k0 uses the same units.
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        const double m2 = static_cast<double>(mx) * mx + static_cast<double>(my) * my +
                          static_cast<double>(mz) * mz;
        const double amp = m2 * std::exp(-m2 / (k0 * k0));
        c[s] *= amp;
    });
    return ScalarField::spectral(g, std::move(c));
}

}  // namespace

ScalarField random_scalar_field(const GridSpec& g, std::uint64_t seed, double k0) {
    std::mt19937_64 rng(seed);
    ScalarField f = filtered_noise(g, rng, k0);
    const double nrm = lq_norm(f, 2.0);
    if (nrm > 0.0) f = scale(f, 1.0 / nrm);
    return f;
}

VectorField random_vector_field(const GridSpec& g, std::uint64_t seed, double k0) {
    std::mt19937_64 rng(seed);
    std::array<ScalarField, 3> c = {filtered_noise(g, rng, k0), filtered_noise(g, rng, k0),
                                    filtered_noise(g, rng, k0)};
    VectorField f(std::move(c));
    const double nrm = lq_norm(f, 2.0);
    if (nrm > 0.0) f = scale(f, 1.0 / nrm);
    return f;
}

VectorField random_divfree_field(const GridSpec& g, std::uint64_t seed, double k0, double l2_norm) {
    std::mt19937_64 rng(seed);
    std::array<ScalarField, 3> c = {filtered_noise(g, rng, k0), filtered_noise(g, rng, k0),
                                    filtered_noise(g, rng, k0)};
    VectorField f = leray_project(subtract_mean(VectorField(std::move(c))));
    const double nrm = lq_norm(f, 2.0);
    if (nrm > 0.0) f = scale(f, l2_norm / nrm);
    return f;
}

ScalarField bump_window(const GridSpec& g) {
    const double L = g.length;
    const double c = 0.5 * L;
    const double w = 0.25 * L;
    auto psi = [](double s) {
        const double s2 = s * s;
        if (s2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - s2));
    };
    std::vector<double> vals(g.num_points());
    const double h = g.spacing();
    std::size_t p = 0;
    for (int iz = 0; iz < g.n; ++iz) {
        const double bz = psi((iz * h - c) / w);
        for (int iy = 0; iy < g.n; ++iy) {
            const double by = psi((iy * h - c) / w);
            for (int ix = 0; ix < g.n; ++ix, ++p) {
                vals[p] = psi((ix * h - c) / w) * by * bz;
            }
        }
    }
    return ScalarField::physical(g, std::move(vals));
}

ScalarField bump_modulated_scalar(const GridSpec& g, std::uint64_t seed, double k0) {
    const ScalarField b = bump_window(g);
    const ScalarField r = to_physical(random_scalar_field(g, seed, k0));
    std::vector<double> vals(g.num_points());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = b.samples()[i] * r.samples()[i];
    ScalarField f = ScalarField::physical(g, std::move(vals));
    const double nrm = lq_norm(f, 2.0);
    if (nrm > 0.0) f = scale(f, 1.0 / nrm);
    return f;
}

VectorField bump_modulated_vector(const GridSpec& g, std::uint64_t seed, double k0) {
    const ScalarField b = bump_window(g);
    std::array<ScalarField, 3> comps;
    for (int c = 0; c < 3; ++c) {
        const ScalarField r = to_physical(random_scalar_field(g, seed * 3 + 17 * c + 1, k0));
        std::vector<double> vals(g.num_points());
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = b.samples()[i] * r.samples()[i];
        comps[c] = ScalarField::physical(g, std::move(vals));
    }
    VectorField f(std::move(comps));
    const double nrm = lq_norm(f, 2.0);
    if (nrm > 0.0) f = scale(f, 1.0 / nrm);
    return f;
}

ScalarField dilate_about_center(const ScalarField& f, int lambda) {
    if (lambda < 1) throw std::invalid_argument("dilate_about_center: lambda must be >= 1");
    const GridSpec& g = f.grid();
    if (g.n % 2 != 0) throw std::invalid_argument("dilate_about_center: n must be even");
    const ScalarField fp = to_physical(f);
    const int n = g.n;
    const int half = n / 2;
    // y_index = lambda*i - (lambda-1)*n/2 along each axis; outside the box
    // the dilated field vanishes (compactly supported data assumed).
    auto map_index = [&](int i) { return lambda * i - (lambda - 1) * half; };
    std::vector<double> vals(g.num_points(), 0.0);
    std::size_t p = 0;
    for (int iz = 0; iz < n; ++iz) {
        const int jz = map_index(iz);
        for (int iy = 0; iy < n; ++iy) {
            const int jy = map_index(iy);
            for (int ix = 0; ix < n; ++ix, ++p) {
                const int jx = map_index(ix);
                if (jx < 0 || jx >= n || jy < 0 || jy >= n || jz < 0 || jz >= n) continue;
                vals[p] = lambda * fp.samples()[(static_cast<std::size_t>(jz) * n + jy) * n + jx];
            }
        }
    }
    return ScalarField::physical(g, std::move(vals));
}

VectorField dilate_about_center(const VectorField& f, int lambda) {
    return VectorField({dilate_about_center(f[0], lambda), dilate_about_center(f[1], lambda),
                        dilate_about_center(f[2], lambda)});
}

}  // namespace nsbl
