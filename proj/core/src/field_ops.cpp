#include "nsbl/field_ops.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nsbl {

namespace {

// Multiplier i*k for signed frequency m; the Nyquist index carries no
// derivative.
inline cplx ik_factor(int m, int n, double dk) {
    if (std::abs(m) == n / 2) return cplx{0.0, 0.0};
    return cplx{0.0, dk * m};
}

}  // namespace

ScalarField derivative(const ScalarField& f, int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("derivative: axis must be 0, 1 or 2");
    const ScalarField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    std::vector<cplx> out(g.num_modes());
    const auto& in = fs.coefs();
    const double dk = g.dk();
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        const int m[3] = {mx, my, mz};
        out[s] = ik_factor(m[axis], g.n, dk) * in[s];
    });
    return ScalarField::spectral(g, std::move(out));
}

ScalarField divergence(const VectorField& f) {
    const VectorField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    std::vector<cplx> out(g.num_modes(), cplx{0.0, 0.0});
    const double dk = g.dk();
    for (int c = 0; c < 3; ++c) {
        const auto& in = fs[c].coefs();
        for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
            const int m[3] = {mx, my, mz};
            out[s] += ik_factor(m[c], g.n, dk) * in[s];
        });
    }
    return ScalarField::spectral(g, std::move(out));
}

VectorField curl(const VectorField& f) {
    const VectorField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    const double dk = g.dk();
    std::array<std::vector<cplx>, 3> out;
    for (auto& v : out) v.assign(g.num_modes(), cplx{0.0, 0.0});
    const auto& u0 = fs[0].coefs();
    const auto& u1 = fs[1].coefs();
    const auto& u2 = fs[2].coefs();
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        const cplx ikx = ik_factor(mx, g.n, dk);
        const cplx iky = ik_factor(my, g.n, dk);
        const cplx ikz = ik_factor(mz, g.n, dk);
        out[0][s] = iky * u2[s] - ikz * u1[s];
        out[1][s] = ikz * u0[s] - ikx * u2[s];
        out[2][s] = ikx * u1[s] - iky * u0[s];
    });
    return VectorField({ScalarField::spectral(g, std::move(out[0])),
                        ScalarField::spectral(g, std::move(out[1])),
                        ScalarField::spectral(g, std::move(out[2]))});
}

VectorField gradient(const ScalarField& f) {
    const ScalarField fs = to_spectral(f);
    return VectorField({derivative(fs, 0), derivative(fs, 1), derivative(fs, 2)});
}

namespace {
ScalarField apply_mask23(const ScalarField& f) {
    const ScalarField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    const int kmax = g.n / 3;
    std::vector<cplx> out = fs.coefs();
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        if (mx > kmax || std::abs(my) > kmax || std::abs(mz) > kmax) out[s] = cplx{0.0, 0.0};
    });
    return ScalarField::spectral(g, std::move(out));
}
}  // namespace

ScalarField dealias_23(const ScalarField& f) { return apply_mask23(f); }

VectorField dealias_23(const VectorField& f) {
    return VectorField({apply_mask23(f[0]), apply_mask23(f[1]), apply_mask23(f[2])});
}

double mean(const ScalarField& f) {
    if (f.rep() == Rep::spectral) return f.coefs()[0].real();
    return to_spectral(f).coefs()[0].real();
}

ScalarField subtract_mean(const ScalarField& f) {
    ScalarField fs = to_spectral(f);
    fs.mutable_coefs()[0] = cplx{0.0, 0.0};
    return fs;
}

VectorField subtract_mean(const VectorField& f) {
    return VectorField({subtract_mean(f[0]), subtract_mean(f[1]), subtract_mean(f[2])});
}

ScalarField scale(const ScalarField& f, double c) {
    ScalarField out = f;
    if (out.rep() == Rep::physical) {
        for (double& v : out.mutable_samples()) v *= c;
    } else {
        for (cplx& v : out.mutable_coefs()) v *= c;
    }
    return out;
}

VectorField scale(const VectorField& f, double c) {
    return VectorField({scale(f[0], c), scale(f[1], c), scale(f[2], c)});
}

VectorField axpy(const VectorField& x, double a, const VectorField& y) {
    if (x.grid() != y.grid()) throw std::invalid_argument("axpy: grid mismatch");
    VectorField xs = to_spectral(x);
    const VectorField ys = to_spectral(y);
    for (int c = 0; c < 3; ++c) {
        auto& xc = xs[c].mutable_coefs();
        const auto& yc = ys[c].coefs();
        for (std::size_t s = 0; s < xc.size(); ++s) xc[s] += a * yc[s];
    }
    return xs;
}

double hermitian_defect(const ScalarField& f) {
    const ScalarField fs = to_spectral(f);
    const GridSpec& g = fs.grid();
    const auto& c = fs.coefs();
    const int n = g.n;
    const int nxh = n / 2 + 1;
    auto at = [&](int mx, int iy, int iz) {
        return c[(static_cast<std::size_t>(iz) * n + iy) * nxh + mx];
    };
    double defect = 0.0;
    // On the planes mx = 0 and mx = n/2 the Hermitian partner of (iy, iz) is
    // (n - iy, n - iz) within the same plane.
    for (int mx : {0, n / 2}) {
        for (int iz = 0; iz < n; ++iz) {
            for (int iy = 0; iy < n; ++iy) {
                const int py = (n - iy) % n;
                const int pz = (n - iz) % n;
                const cplx d = at(mx, iy, iz) - std::conj(at(mx, py, pz));
                defect = std::max(defect, std::abs(d));
            }
        }
    }
    return defect;
}

double hermitian_defect(const VectorField& f) {
    double d = 0.0;
    for (int c = 0; c < 3; ++c) d = std::max(d, hermitian_defect(f[c]));
    return d;
}

double divergence_sup_bound(const VectorField& f) {
    const ScalarField d = divergence(f);
    double sum = 0.0;
    for (const cplx& v : d.coefs()) sum += std::abs(v);
    return sum;
}

}  // namespace nsbl
