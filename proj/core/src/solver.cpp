#include "nsbl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nsbl/field_ops.hpp"
#include "nsbl/io.hpp"
#include "nsbl/operators.hpp"
#include "nsbl/random_fields.hpp"

namespace nsbl {

namespace {

constexpr double kPi = std::numbers::pi;

double param_or(const std::map<std::string, double>& params, const std::string& key, double dflt) {
    auto it = params.find(key);
    return it == params.end() ? dflt : it->second;
}

VectorField sample_field(const GridSpec& g,
                         const std::function<void(double, double, double, double*)>& fn) {
    std::array<std::vector<double>, 3> vals;
    for (auto& v : vals) v.resize(g.num_points());
    const double h = g.spacing();
    std::size_t p = 0;
    double out[3];
    for (int iz = 0; iz < g.n; ++iz)
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix, ++p) {
                fn(ix * h, iy * h, iz * h, out);
                vals[0][p] = out[0];
                vals[1][p] = out[1];
                vals[2][p] = out[2];
            }
    return VectorField({ScalarField::physical(g, std::move(vals[0])),
                        ScalarField::physical(g, std::move(vals[1])),
                        ScalarField::physical(g, std::move(vals[2]))});
}

// Heat multipliers exp(-|k|^2 dt/2) and exp(-|k|^2 dt), cached per step loop.
struct StepMultipliers {
    std::vector<double> half;
    std::vector<double> full;

    StepMultipliers(const GridSpec& g, double dt) {
        half.resize(g.num_modes());
        full.resize(g.num_modes());
        const double dk2 = g.dk() * g.dk();
        for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
            const double k2 = dk2 * (static_cast<double>(mx) * mx + static_cast<double>(my) * my +
                                     static_cast<double>(mz) * mz);
            half[s] = std::exp(-0.5 * k2 * dt);
            full[s] = half[s] * half[s];
        });
    }
};

VectorField apply_mult(const VectorField& f, const std::vector<double>& m) {
    VectorField out = to_spectral(f);
    for (int c = 0; c < 3; ++c) {
        auto& v = out[c].mutable_coefs();
        for (std::size_t s = 0; s < v.size(); ++s) v[s] *= m[s];
    }
    return out;
}

bool finite_state(const VectorField& u) {
    for (int c = 0; c < 3; ++c)
        for (const cplx& v : u[c].coefs())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

SolverState step_impl(const SolverState& state, double dt, const StepMultipliers& mult,
                      bool dealias, bool heat_only) {
    const VectorField& u = state.u;
    auto rhs = [&](const VectorField& v) {
        return scale(nonlinear_term(v, dealias), -1.0);  // u_t = lap u - P_H(u.grad u)
    };

    VectorField unew;
    if (heat_only) {
        unew = apply_mult(u, mult.full);
    } else {
        const VectorField f1 = rhs(u);
        const VectorField u2 = apply_mult(axpy(u, 0.5 * dt, f1), mult.half);
        const VectorField f2 = rhs(u2);
        const VectorField u3 = axpy(apply_mult(u, mult.half), 0.5 * dt, f2);
        const VectorField f3 = rhs(u3);
        const VectorField u4 = axpy(apply_mult(u, mult.full), dt, apply_mult(f3, mult.half));
        const VectorField f4 = rhs(u4);

        // u' = E2 u + dt/6 (E2 f1 + 2 E f2 + 2 E f3 + f4)
        unew = apply_mult(axpy(u, dt / 6.0, f1), mult.full);
        unew = axpy(unew, dt / 3.0, apply_mult(axpy(f2, 1.0, f3), mult.half));
        unew = axpy(unew, dt / 6.0, f4);
    }

    // Re-projection: cheap, and keeps the divergence invariant exact against
    // accumulated roundoff.
    unew = leray_project(subtract_mean(unew));
    if (!finite_state(unew))
        throw std::runtime_error("numerical breakdown at t = " + std::to_string(state.time + dt));

    SolverState out;
    out.time = state.time + dt;
    out.u = std::move(unew);
    out.pressure = pressure_solve(out.u, dealias);
    return out;
}

}  // namespace

void SimConfig::validate() const {
    grid.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("SimConfig: t_end must be >= 0");
    if (cadence < 1) throw std::invalid_argument("SimConfig: cadence must be >= 1");
    if (ic.kind.empty()) throw std::invalid_argument("SimConfig: ic.kind missing");
}

VectorField initial_condition(const std::string& kind,
                              const std::map<std::string, double>& params, const GridSpec& grid,
                              std::uint64_t seed) {
    const double kappa = 2.0 * kPi / grid.length;
    VectorField f;
    if (kind == "shear") {
        const double a = param_or(params, "amplitude", 1.0);
        f = sample_field(grid, [&](double, double y, double, double* out) {
            out[0] = a * std::sin(kappa * y);
            out[1] = 0.0;
            out[2] = 0.0;
        });
    } else if (kind == "abc_beltrami") {
        const double A = param_or(params, "A", 1.0);
        const double B = param_or(params, "B", 1.0);
        const double C = param_or(params, "C", 1.0);
        f = sample_field(grid, [&](double x, double y, double z, double* out) {
            out[0] = A * std::sin(kappa * z) + C * std::cos(kappa * y);
            out[1] = B * std::sin(kappa * x) + A * std::cos(kappa * z);
            out[2] = C * std::sin(kappa * y) + B * std::cos(kappa * x);
        });
    } else if (kind == "taylor_green") {
        const double a = param_or(params, "amplitude", 1.0);
        f = sample_field(grid, [&](double x, double y, double z, double* out) {
            out[0] = a * std::sin(kappa * x) * std::cos(kappa * y) * std::cos(kappa * z);
            out[1] = -a * std::cos(kappa * x) * std::sin(kappa * y) * std::cos(kappa * z);
            out[2] = 0.0;
        });
    } else if (kind == "random_divfree") {
        const double k0 = param_or(params, "k0", 2.0);
        const double l2 = param_or(params, "l2_norm", 1.0);
        return random_divfree_field(grid, seed, k0, l2);
    } else {
        throw std::invalid_argument("initial_condition: unknown kind '" + kind + "'");
    }
    return leray_project(subtract_mean(f));
}

VectorField nonlinear_term(const VectorField& u, bool dealias) {
    const VectorField us = dealias ? dealias_23(u) : to_spectral(u);
    const GridSpec& g = us.grid();
    const VectorField up = to_physical(us);

    // Conservative form sum_j Dj(u_j u_i); exactly the convective form for
    // divergence-free band-limited input.
    const int pairs[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
    std::array<ScalarField, 6> what;
    for (int p = 0; p < 6; ++p) {
        const auto& a = up[pairs[p][0]].samples();
        const auto& b = up[pairs[p][1]].samples();
        std::vector<double> prod(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) prod[i] = a[i] * b[i];
        what[p] = to_spectral(ScalarField::physical(g, std::move(prod)));
    }
    auto w_of = [&](int i, int j) -> const ScalarField& {
        static const int lut[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return what[lut[i][j]];
    };

    const double dk = g.dk();
    const int nyq = g.n / 2;
    const int kmax = g.n / 3;
    std::array<std::vector<cplx>, 3> out;
    for (auto& v : out) v.assign(g.num_modes(), cplx{0.0, 0.0});
    for_each_mode(g, [&](std::size_t s, int mx, int my, int mz) {
        if (dealias && (mx > kmax || std::abs(my) > kmax || std::abs(mz) > kmax)) return;
        const int m[3] = {mx, my, mz};
        for (int i = 0; i < 3; ++i) {
            cplx acc{0.0, 0.0};
            for (int j = 0; j < 3; ++j) {
                if (std::abs(m[j]) == nyq) continue;
                acc += cplx{0.0, dk * m[j]} * w_of(j, i).coefs()[s];
            }
            out[i][s] = acc;
        }
    });
    VectorField n({ScalarField::spectral(g, std::move(out[0])),
                   ScalarField::spectral(g, std::move(out[1])),
                   ScalarField::spectral(g, std::move(out[2]))});
    return leray_project(n);
}

SolverState make_state(const VectorField& f, double time, bool dealias) {
    SolverState s;
    s.time = time;
    s.u = leray_project(subtract_mean(f));
    s.pressure = pressure_solve(s.u, dealias);
    return s;
}

SolverState step(const SolverState& state, double dt, bool dealias, bool heat_only) {
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be > 0");
    const StepMultipliers mult(state.u.grid(), dt);
    return step_impl(state, dt, mult, dealias, heat_only);
}

Trajectory simulate(const SimConfig& config) {
    config.validate();
    Trajectory traj;
    traj.options = config.record_options;

    const VectorField f =
        initial_condition(config.ic.kind, config.ic.params, config.grid, config.ic.seed);
    SolverState state = make_state(f, 0.0, config.dealias);

    traj.initial_l2 = lq_norm(state.u, 2.0);
    traj.initial_h1 = dn_lq_norm(state.u, 1, 2.0);
    const VectorField omega0 = curl(state.u);
    traj.initial_omega_l2 = lq_norm(omega0, 2.0);
    for (int c = 0; c < 3; ++c) traj.initial_omega_comp_l1[c] = lq_norm(omega0[c], 1.0);
    traj.initial_omega_l1 = lq_norm(omega0, 1.0);

    // Snapshot schedule: always include t = 0 when snapshots are requested.
    std::vector<double> snap_times = config.snapshot_times;
    std::sort(snap_times.begin(), snap_times.end());
    if (!snap_times.empty() && snap_times.front() > 0.5 * config.dt)
        snap_times.insert(snap_times.begin(), 0.0);
    std::size_t next_snap = 0;
    auto take_snapshots = [&](double t, const VectorField& u) {
        while (next_snap < snap_times.size() && snap_times[next_snap] <= t + 0.5 * config.dt) {
            traj.snapshots.push_back({t, to_spectral(u)});
            ++next_snap;
        }
    };

    traj.records.push_back(record(state.u, state.pressure, 0.0, nullptr, config.record_options));
    take_snapshots(0.0, state.u);

    const long nsteps = std::lround(config.t_end / config.dt);
    const StepMultipliers mult(config.grid, config.dt);
    for (long k = 1; k <= nsteps; ++k) {
        try {
            state = step_impl(state, config.dt, mult, config.dealias, config.heat_only);
        } catch (const std::exception& e) {
            traj.breakdown = true;
            traj.breakdown_time = state.time + config.dt;
            traj.breakdown_reason = e.what();
            if (!traj.records.empty()) traj.records.back().breakdown = true;
            break;
        }
        take_snapshots(state.time, state.u);
        if (k % config.cadence == 0 || k == nsteps) {
            traj.records.push_back(record(state.u, state.pressure, state.time,
                                          &traj.records.back(), config.record_options));
        }
    }

    if (!config.out_dir.empty()) write_trajectory_artifacts(traj, config);
    return traj;
}

double duhamel_residual(const Trajectory& traj, double t, bool dealias) {
    if (traj.snapshots.size() < 2)
        throw std::invalid_argument("duhamel_residual: need stored snapshots");
    if (traj.snapshots.front().time != 0.0)
        throw std::invalid_argument("duhamel_residual: snapshots must start at t = 0");

    // Locate the target snapshot.
    const Snapshot* target = nullptr;
    std::vector<const Snapshot*> upto;
    for (const Snapshot& s : traj.snapshots) {
        if (s.time <= t + 1e-12) upto.push_back(&s);
        if (std::fabs(s.time - t) < 1e-9) target = &s;
    }
    if (!target) throw std::invalid_argument("duhamel_residual: t is not a snapshot time");
    if (t == 0.0) return 0.0;
    if (upto.size() < 3)
        throw std::invalid_argument("duhamel_residual: snapshots too sparse for quadrature");

    // R = u(t) - e^(t lap) f + int_0^t e^((t-s) lap) N(s) ds, N = P_H(u.grad u)
    VectorField acc = axpy(target->u, -1.0, heat_evolve_torus(traj.snapshots.front().u, t));
    for (std::size_t i = 0; i + 1 < upto.size(); ++i) {
        const Snapshot& a = *upto[i];
        const Snapshot& b = *upto[i + 1];
        if (b.time > t + 1e-12) break;
        const double w = 0.5 * (b.time - a.time);
        const VectorField na = heat_evolve_torus(nonlinear_term(a.u, dealias), t - a.time);
        const VectorField nb = heat_evolve_torus(nonlinear_term(b.u, dealias), t - b.time);
        acc = axpy(acc, w, na);
        acc = axpy(acc, w, nb);
    }
    const double unorm = lq_norm(target->u, 2.0);
    const double rnorm = lq_norm(acc, 2.0);
    return (unorm > 0.0) ? rnorm / unorm : rnorm;
}

}  // namespace nsbl
