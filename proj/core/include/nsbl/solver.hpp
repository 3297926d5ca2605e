#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nsbl/diagnostics.hpp"
#include "nsbl/field.hpp"

namespace nsbl {

struct IcSpec {
    std::string kind;  // shear | abc_beltrami | taylor_green | random_divfree
    std::map<std::string, double> params;
    std::uint64_t seed = 0;
};

struct SimConfig {
    GridSpec grid;
    double dt = 1e-3;
    double t_end = 1.0;
    IcSpec ic;
    bool dealias = true;
    int cadence = 1;  // one diagnostic record every `cadence` steps
    std::vector<double> snapshot_times;
    std::string out_dir;  // empty: no artifacts written
    bool heat_only = false;
    RecordOptions record_options;
    CertificateConfig certificate_config;

    void validate() const;
};

// Velocity is kept spectral, divergence free and mean free; the pressure is
// the cached solve for the current velocity.
struct SolverState {
    double time = 0.0;
    VectorField u;
    ScalarField pressure;
};

// Divergence-free, zero-mean initial data. Kinds:
//   shear          (amplitude)        a (sin(2 pi x2/L), 0, 0)
//   abc_beltrami   (A, B, C)          curl eigenfield, curl u = (2 pi/L) u
//   taylor_green   (amplitude)
//   random_divfree (k0, l2_norm)      filtered Gaussian modes, projected
VectorField initial_condition(const std::string& kind,
                              const std::map<std::string, double>& params, const GridSpec& grid,
                              std::uint64_t seed);

// P_H(u . grad u): products in physical space, conservative-form derivative,
// 2/3-rule dealiased, Leray projected. Divergence free by construction.
VectorField nonlinear_term(const VectorField& u, bool dealias = true);

SolverState make_state(const VectorField& f, double time = 0.0, bool dealias = true);

// One integrating-factor RK4 step: the heat part is advanced exactly by
// exp(-|k|^2 dt) multipliers, the projected nonlinearity by classical RK4
// stages. Throws on non-finite state (numerical breakdown is reported by
// simulate as a trajectory event instead).
SolverState step(const SolverState& state, double dt, bool dealias = true,
                 bool heat_only = false);

Trajectory simulate(const SimConfig& config);

// Relative mild-solution defect at a snapshot time t:
//   || u(t) - e^(t lap) f + int_0^t e^((t-s) lap) P_H(u.grad u)(s) ds || / ||u(t)||
// via trapezoidal quadrature over the stored snapshots up to t.
double duhamel_residual(const Trajectory& traj, double t, bool dealias = true);

}  // namespace nsbl
