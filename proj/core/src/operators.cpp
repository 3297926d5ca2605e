#include "nsbl/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "nsbl/field_ops.hpp"

namespace nsbl {

namespace {

ScalarField heat_multiply(const ScalarField& f, double t) {
    const ScalarField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    const double dk2 = g.dk() * g.dk();
    std::vector<cplx> out = fs.coefs();
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        const double k2 = dk2 * (static_cast<double>(mx) * mx + static_cast<double>(my) * my +
                                 static_cast<double>(mz) * mz);
        out[s] *= std::exp(-k2 * t);
    });
    return ScalarField::spectral(g, std::move(out));
}

}  // namespace

ScalarField heat_evolve_torus(const ScalarField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_evolve_torus: t must be >= 0");
    return heat_multiply(f, t);
}

VectorField heat_evolve_torus(const VectorField& f, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_evolve_torus: t must be >= 0");
    return VectorField({heat_multiply(f[0], t), heat_multiply(f[1], t), heat_multiply(f[2], t)});
}

VectorField leray_project(const VectorField& v) {
    const VectorField vs = to_spectral(v);
    const GridSpec& g = vs.grid();
    const int nyq = g.n / 2;
    std::array<std::vector<cplx>, 3> out;
    for (int c = 0; c < 3; ++c) out[c] = vs[c].coefs();
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        if (mx == 0 && my == 0 && mz == 0) return;  // pass-through
        if (mx == nyq || std::abs(my) == nyq || std::abs(mz) == nyq) {
            // Off-diagonal k_i k_j terms have an ambiguous sign at the
            // Nyquist index; these modes are dealiased away anyway.
            for (int c = 0; c < 3; ++c) out[c][s] = cplx{0.0, 0.0};
            return;
        }
        const double k[3] = {static_cast<double>(mx), static_cast<double>(my),
                             static_cast<double>(mz)};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        const cplx kdotv = k[0] * out[0][s] + k[1] * out[1][s] + k[2] * out[2][s];
        for (int c = 0; c < 3; ++c) out[c][s] -= k[c] * (kdotv / k2);
    });
    return VectorField({ScalarField::spectral(g, std::move(out[0])),
                        ScalarField::spectral(g, std::move(out[1])),
                        ScalarField::spectral(g, std::move(out[2]))});
}

ScalarField pressure_solve(const VectorField& u, bool dealias) {
    const VectorField us = dealias ? dealias_23(u) : to_spectral(u);
    const GridSpec& g = us.grid();
    const VectorField up = to_physical(us);

    // Products u_i u_j, symmetric: 6 distinct entries.
    const int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    std::array<ScalarField, 6> what;
    for (int p = 0; p < 6; ++p) {
        const auto& a = up[pairs[p][0]].samples();
        const auto& b = up[pairs[p][1]].samples();
        std::vector<double> prod(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
        ScalarField w = to_spectral(ScalarField::physical(g, std::move(prod)));
        what[p] = dealias ? dealias_23(w) : std::move(w);
    }

    // |k|^2 phat = sum_ij k_i k_j what_ij   =>   phat = k k : what / |k|^2
    const int nyq = g.n / 2;
    std::vector<cplx> ph(g.num_modes(), cplx{0.0, 0.0});
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        if (mx == 0 && my == 0 && mz == 0) return;  // zero mean
        if (mx == nyq || std::abs(my) == nyq || std::abs(mz) == nyq) return;
        const double k[3] = {static_cast<double>(mx), static_cast<double>(my),
                             static_cast<double>(mz)};
        const double k2 = k[0] * k[0] + k[1] * k[1] + k[2] * k[2];
        cplx acc{0.0, 0.0};
        for (int p = 0; p < 6; ++p) {
            const double kk = k[pairs[p][0]] * k[pairs[p][1]];
            const double w = (pairs[p][0] == pairs[p][1]) ? 1.0 : 2.0;
            acc += w * kk * what[p].coefs()[s];
        }
        ph[s] = acc / k2;
    });
    return ScalarField::spectral(g, std::move(ph));
}

}  // namespace nsbl
