#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "nsbl/field.hpp"

namespace nsbl {

// Whole-space counterparts used to verify the R^3 estimates on compactly
// supported data: direct quadrature, no FFT acceleration.

// Heat kernel Phi(x,t) = (4 pi t)^(-N/2) exp(-|x|^2 / 4t), N = 3.
struct HeatKernel {
    double t;

    explicit HeatKernel(double t_) : t(t_) {
        if (!(t > 0.0)) throw std::invalid_argument("HeatKernel: t must be > 0");
    }

    double peak() const;                 // (4 pi t)^(-3/2)
    double value(double r2) const;       // Phi at |x|^2 = r2
    // Exact kernel mass inside the ball |x| <= radius.
    double mass_within(double radius) const;
    // Radius whose complement carries at most `tail` kernel mass.
    double tail_radius(double tail) const;
};

// Rectangle-rule quadrature of the heat kernel over the cell-centered lattice
// of spacing h restricted to |y| <= radius. Approaches 1 when the tail
// criterion holds and h resolves the kernel.
double heat_kernel_mass_quadrature(double t, double radius, double h);

// Samples of a smooth compactly supported field on a cell-centered lattice
// over [-extent, extent]^3 with n points per axis:
//   x_i = -extent + (i + 1/2) h,  h = 2 extent / n.
// The lattice is symmetric under x -> -x, which cancels the leading
// punched-ball error of the principal-value quadrature below.
class CompactField {
public:
    CompactField() = default;
    // sampler(x, y, z, comp) -> value; ncomp is 1 or 3.
    static CompactField sample(int n, double extent, double support_radius, int ncomp,
                               const std::function<double(double, double, double, int)>& sampler);

    int n() const { return n_; }
    double extent() const { return extent_; }
    double support_radius() const { return support_radius_; }
    int ncomp() const { return ncomp_; }
    double spacing() const { return 2.0 * extent_ / n_; }
    double coord(int i) const { return -extent_ + (i + 0.5) * spacing(); }
    const std::vector<double>& comp(int c) const { return data_[c]; }
    std::vector<double>& mutable_comp(int c) { return data_[c]; }
    std::size_t num_points() const { return static_cast<std::size_t>(n_) * n_ * n_; }

    double max_abs() const;
    // Largest |sample| outside the declared support radius; the invariant
    // requires this to stay below 1e-14.
    double support_leak() const;
    void validate_support() const;

    static CompactField raw(int n, double extent, double support_radius,
                            std::vector<std::vector<double>> data);

private:
    int n_ = 0;
    double extent_ = 0.0;
    double support_radius_ = 0.0;
    int ncomp_ = 0;
    std::vector<std::vector<double>> data_;
};

using Point3 = std::array<double, 3>;

// Heat evolution on R^3 by direct quadrature of the convolution with Phi (or
// a derivative kernel D^alpha Phi, |alpha| <= 2). Returns one value per
// (component, eval point). The truncation to the declared support keeps the
// omitted kernel-tail contribution below 1e-10 relative; a field leaking mass
// outside its support radius makes that criterion unachievable and is
// rejected.
std::vector<std::vector<double>> heat_convolve_r3(const CompactField& f, double t,
                                                  std::span<const Point3> eval_points,
                                                  std::array<int, 3> deriv = {0, 0, 0});

struct PvProjection {
    // values[p] = w(x_p), the projected field at each eval point.
    std::vector<std::array<double, 3>> values;
    // Max |change| between the last two epsilon levels (error proxy).
    double cauchy_increment = 0.0;
};

// Principal-value Helmholtz projection on R^3:
//   w_j(x) = v_j(x) + (1/4pi) sum_i  lim_{eps->0} int_{|x-y|>=eps} K_ij(x-y) v_i(y) dy
// with K_ij(z) = Di Dj |z|^(-1), homogeneous of degree -3. The limit is taken
// over the supplied strictly decreasing epsilon sequence (floor >= 2h) with
// Richardson extrapolation in eps^2 from the last two levels.
PvProjection helmholtz_pv_r3(const CompactField& v, std::span<const Point3> eval_points,
                             std::span<const double> eps_sequence);

}  // namespace nsbl
