#include "nsbl/wholespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nsbl/reduce.hpp"

namespace nsbl {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoOverSqrtPi = 2.0 / 1.7724538509055160273;  // 2/sqrt(pi)
}  // namespace

double HeatKernel::peak() const { return std::pow(4.0 * kPi * t, -1.5); }

double HeatKernel::value(double r2) const { return peak() * std::exp(-r2 / (4.0 * t)); }

double HeatKernel::mass_within(double radius) const {
    // int_{|x|<=d} Phi = erf(u) - (2/sqrt(pi)) u exp(-u^2),  u = d / (2 sqrt(t))
    const double u = radius / (2.0 * std::sqrt(t));
    return std::erf(u) - kTwoOverSqrtPi * u * std::exp(-u * u);
}

double HeatKernel::tail_radius(double tail) const {
    if (!(tail > 0.0 && tail < 1.0)) throw std::invalid_argument("tail_radius: tail in (0,1)");
    double lo = 0.0, hi = 2.0 * std::sqrt(t);
    while (1.0 - mass_within(hi) > tail) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - mass_within(mid) > tail) lo = mid;
        else hi = mid;
    }
    return hi;
}

double heat_kernel_mass_quadrature(double t, double radius, double h) {
    const HeatKernel K(t);
    const int m = static_cast<int>(std::ceil(radius / h)) + 1;
    const double r2max = radius * radius;
    // Cell-centered axis offsets; exploit reflection symmetry in each axis.
    double sum = 0.0;
    for (int iz = 0; iz < m; ++iz) {
        const double z = (iz + 0.5) * h;
        for (int iy = 0; iy < m; ++iy) {
            const double y = (iy + 0.5) * h;
            double row = 0.0;
            for (int ix = 0; ix < m; ++ix) {
                const double x = (ix + 0.5) * h;
                const double r2 = x * x + y * y + z * z;
                if (r2 <= r2max) row += K.value(r2);
            }
            sum += row;
        }
    }
    return 8.0 * sum * h * h * h;  // octant symmetry
}

CompactField CompactField::sample(int n, double extent, double support_radius, int ncomp,
                                  const std::function<double(double, double, double, int)>& sampler) {
    if (n < 2) throw std::invalid_argument("CompactField: n must be >= 2");
    if (!(extent > 0.0)) throw std::invalid_argument("CompactField: extent must be > 0");
    if (!(support_radius > 0.0 && support_radius < extent))
        throw std::invalid_argument("CompactField: support radius must lie inside the lattice");
    if (ncomp != 1 && ncomp != 3) throw std::invalid_argument("CompactField: 1 or 3 components");
    CompactField f;
    f.n_ = n;
    f.extent_ = extent;
    f.support_radius_ = support_radius;
    f.ncomp_ = ncomp;
    f.data_.resize(ncomp);
    for (int c = 0; c < ncomp; ++c) {
        f.data_[c].resize(f.num_points());
        std::size_t p = 0;
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix, ++p)
                    f.data_[c][p] = sampler(f.coord(ix), f.coord(iy), f.coord(iz), c);
    }
    return f;
}

CompactField CompactField::raw(int n, double extent, double support_radius,
                               std::vector<std::vector<double>> data) {
    CompactField f;
    f.n_ = n;
    f.extent_ = extent;
    f.support_radius_ = support_radius;
    f.ncomp_ = static_cast<int>(data.size());
    f.data_ = std::move(data);
    for (const auto& c : f.data_)
        if (c.size() != f.num_points()) throw std::invalid_argument("CompactField: size mismatch");
    return f;
}

double CompactField::max_abs() const {
    double m = 0.0;
    for (const auto& c : data_)
        for (double v : c) m = std::max(m, std::fabs(v));
    return m;
}

double CompactField::support_leak() const {
    const double r2 = support_radius_ * support_radius_;
    double leak = 0.0;
    for (const auto& c : data_) {
        std::size_t p = 0;
        for (int iz = 0; iz < n_; ++iz) {
            const double z = coord(iz);
            for (int iy = 0; iy < n_; ++iy) {
                const double y = coord(iy);
                for (int ix = 0; ix < n_; ++ix, ++p) {
                    const double x = coord(ix);
                    if (x * x + y * y + z * z > r2) leak = std::max(leak, std::fabs(c[p]));
                }
            }
        }
    }
    return leak;
}

void CompactField::validate_support() const {
    if (support_leak() > 1e-14)
        throw std::runtime_error(
            "CompactField: samples do not vanish outside the support radius; "
            "kernel tail-mass criterion unachievable on this lattice");
}

namespace {

// Indices of lattice points inside the support ball (small margin), the only
// points that can contribute to whole-space quadratures.
struct SupportPoints {
    std::vector<std::size_t> idx;
    std::vector<Point3> pos;
};

SupportPoints support_points(const CompactField& f) {
    SupportPoints sp;
    const double r = f.support_radius() + f.spacing();
    const double r2 = r * r;
    std::size_t p = 0;
    for (int iz = 0; iz < f.n(); ++iz) {
        const double z = f.coord(iz);
        for (int iy = 0; iy < f.n(); ++iy) {
            const double y = f.coord(iy);
            for (int ix = 0; ix < f.n(); ++ix, ++p) {
                const double x = f.coord(ix);
                if (x * x + y * y + z * z <= r2) {
                    sp.idx.push_back(p);
                    sp.pos.push_back({x, y, z});
                }
            }
        }
    }
    return sp;
}

}  // namespace

std::vector<std::vector<double>> heat_convolve_r3(const CompactField& f, double t,
                                                  std::span<const Point3> eval_points,
                                                  std::array<int, 3> deriv) {
    if (!(t > 0.0)) throw std::invalid_argument("heat_convolve_r3: t must be > 0");
    const int order = deriv[0] + deriv[1] + deriv[2];
    if (order < 0 || order > 2) throw std::invalid_argument("heat_convolve_r3: |alpha| <= 2");
    f.validate_support();

    const HeatKernel K(t);
    const SupportPoints sp = support_points(f);
    const double vol = std::pow(f.spacing(), 3);

    std::vector<std::vector<double>> out(f.ncomp(), std::vector<double>(eval_points.size(), 0.0));
    parallel_for_chunks(eval_points.size(), [&](std::size_t p) {
        const Point3& x = eval_points[p];
        for (int c = 0; c < f.ncomp(); ++c) {
            const auto& data = f.comp(c);
            double acc = 0.0;
            for (std::size_t q = 0; q < sp.idx.size(); ++q) {
                const double zx = x[0] - sp.pos[q][0];
                const double zy = x[1] - sp.pos[q][1];
                const double zz = x[2] - sp.pos[q][2];
                const double r2 = zx * zx + zy * zy + zz * zz;
                double kern = K.value(r2);
                if (order == 1) {
                    const double z1 = deriv[0] ? zx : (deriv[1] ? zy : zz);
                    kern *= -z1 / (2.0 * t);
                } else if (order == 2) {
                    // D_i D_j Phi = (z_i z_j / 4t^2 - delta_ij / 2t) Phi
                    double zi, zj;
                    bool diag;
                    if (deriv[0] == 2) { zi = zj = zx; diag = true; }
                    else if (deriv[1] == 2) { zi = zj = zy; diag = true; }
                    else if (deriv[2] == 2) { zi = zj = zz; diag = true; }
                    else if (deriv[0] && deriv[1]) { zi = zx; zj = zy; diag = false; }
                    else if (deriv[0] && deriv[2]) { zi = zx; zj = zz; diag = false; }
                    else { zi = zy; zj = zz; diag = false; }
                    kern *= zi * zj / (4.0 * t * t) - (diag ? 1.0 / (2.0 * t) : 0.0);
                }
                acc += kern * data[sp.idx[q]];
            }
            out[c][p] = acc * vol;
        }
    });
    return out;
}

namespace {

// K_ij(z) = Di Dj |z|^(-1): 3 z_i z_j |z|^(-5) off the diagonal,
// (3 z_j^2 - |z|^2) |z|^(-5) on it.
inline void kernel_matrix(double zx, double zy, double zz, double K[3][3]) {
    const double r2 = zx * zx + zy * zy + zz * zz;
    const double r = std::sqrt(r2);
    const double inv5 = 1.0 / (r2 * r2 * r);
    const double z[3] = {zx, zy, zz};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const double v = (i == j) ? (3.0 * z[i] * z[i] - r2) * inv5 : 3.0 * z[i] * z[j] * inv5;
            K[i][j] = v;
            K[j][i] = v;
        }
}

}  // namespace

PvProjection helmholtz_pv_r3(const CompactField& v, std::span<const Point3> eval_points,
                             std::span<const double> eps_sequence) {
    if (v.ncomp() != 3) throw std::invalid_argument("helmholtz_pv_r3: field must have 3 components");
    if (eps_sequence.size() < 2)
        throw std::invalid_argument("helmholtz_pv_r3: need at least two epsilon levels");
    for (std::size_t i = 1; i < eps_sequence.size(); ++i)
        if (!(eps_sequence[i] < eps_sequence[i - 1]))
            throw std::invalid_argument("helmholtz_pv_r3: epsilon sequence must be strictly decreasing");
    const double floor = eps_sequence.back();
    if (floor < 2.0 * v.spacing())
        throw std::invalid_argument("helmholtz_pv_r3: epsilon floor below lattice resolution (< 2h)");
    v.validate_support();

    const SupportPoints sp = support_points(v);
    const double vol = std::pow(v.spacing(), 3);
    const double inv4pi = 1.0 / (4.0 * kPi);
    const std::size_t nlev = eps_sequence.size();

    // S[level][point][j]
    std::vector<std::vector<std::array<double, 3>>> S(
        nlev, std::vector<std::array<double, 3>>(eval_points.size(), {0.0, 0.0, 0.0}));

    parallel_for_chunks(eval_points.size(), [&](std::size_t p) {
        const Point3& x = eval_points[p];
        // One pass over the support; bin each contribution into the smallest
        // epsilon shell containing it, then prefix-sum the shells.
        std::vector<std::array<double, 3>> shell(nlev, {0.0, 0.0, 0.0});
        double K[3][3];
        for (std::size_t q = 0; q < sp.idx.size(); ++q) {
            const double zx = x[0] - sp.pos[q][0];
            const double zy = x[1] - sp.pos[q][1];
            const double zz = x[2] - sp.pos[q][2];
            const double r = std::sqrt(zx * zx + zy * zy + zz * zz);
            if (r < eps_sequence[nlev - 1]) continue;
            // smallest level index whose eps <= r (levels are decreasing)
            std::size_t lev = nlev - 1;
            while (lev > 0 && eps_sequence[lev - 1] <= r) --lev;
            kernel_matrix(zx, zy, zz, K);
            for (int j = 0; j < 3; ++j) {
                double acc = 0.0;
                for (int i = 0; i < 3; ++i) acc += K[i][j] * v.comp(i)[sp.idx[q]];
                shell[lev][j] += acc;
            }
        }
        // level l integrates over |x-y| >= eps_l = shells l..0? No: shells
        // with larger radii belong to every level; accumulate from the
        // outermost (level 0) inward.
        std::array<double, 3> run = {0.0, 0.0, 0.0};
        for (std::size_t l = 0; l < nlev; ++l) {
            for (int j = 0; j < 3; ++j) run[j] += shell[l][j];
            S[l][p] = run;
        }
    });

    PvProjection out;
    out.values.resize(eval_points.size());
    double cauchy = 0.0;
    const double e1 = eps_sequence[nlev - 2];
    const double e2 = eps_sequence[nlev - 1];
    const double rich = e2 * e2 / (e1 * e1 - e2 * e2);
    for (std::size_t p = 0; p < eval_points.size(); ++p) {
        for (int j = 0; j < 3; ++j) {
            const double a = S[nlev - 2][p][j];
            const double b = S[nlev - 1][p][j];
            cauchy = std::max(cauchy, std::fabs(b - a) * inv4pi * vol);
            // Leading punched-ball error is O(eps^2) on the symmetric lattice.
            const double extrap = b + (b - a) * rich;
            out.values[p][j] = extrap * inv4pi * vol;
        }
    }
    out.cauchy_increment = cauchy;

    // Identity term v_j(x) by lattice lookup; eval points are expected to be
    // cell centers or to lie outside the support, where v = 0.
    for (std::size_t p = 0; p < eval_points.size(); ++p) {
        const Point3& x = eval_points[p];
        double vx[3] = {0.0, 0.0, 0.0};
        const double h = v.spacing();
        const int ix = static_cast<int>(std::floor((x[0] + v.extent()) / h));
        const int iy = static_cast<int>(std::floor((x[1] + v.extent()) / h));
        const int iz = static_cast<int>(std::floor((x[2] + v.extent()) / h));
        if (ix >= 0 && ix < v.n() && iy >= 0 && iy < v.n() && iz >= 0 && iz < v.n()) {
            const std::size_t idx = (static_cast<std::size_t>(iz) * v.n() + iy) * v.n() + ix;
            for (int j = 0; j < 3; ++j) vx[j] = v.comp(j)[idx];
        }
        for (int j = 0; j < 3; ++j) out.values[p][j] += vx[j];
    }
    return out;
}

}  // namespace nsbl
