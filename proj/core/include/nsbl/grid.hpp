#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace nsbl {

// Uniform periodic grid on [0, L)^3 with n points per axis.
// Wavenumbers are integer multiples of 2*pi/L; the Nyquist index n/2 is
// excluded from every odd-derivative operator (see field_ops).
struct GridSpec {
    int n = 0;
    double length = 0.0;

    GridSpec() = default;
    GridSpec(int n_, double length_) : n(n_), length(length_) { validate(); }

    void validate() const {
        if (n < 4) throw std::invalid_argument("GridSpec: n must be >= 4");
        if (!(length > 0.0)) throw std::invalid_argument("GridSpec: length must be > 0");
    }

    std::size_t num_points() const { return static_cast<std::size_t>(n) * n * n; }
    std::size_t num_modes() const {
        // r2c storage: x is the halved axis.
        return static_cast<std::size_t>(n) * n * (n / 2 + 1);
    }
    double spacing() const { return length / n; }
    double cell_volume() const { double h = spacing(); return h * h * h; }
    // Fundamental wavenumber 2*pi/L.
    double dk() const { return 2.0 * std::numbers::pi / length; }

    // Signed integer frequency for storage index m on a full axis.
    int signed_index(int m) const { return (m <= n / 2) ? m : m - n; }

    bool operator==(const GridSpec& o) const { return n == o.n && length == o.length; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

}  // namespace nsbl
