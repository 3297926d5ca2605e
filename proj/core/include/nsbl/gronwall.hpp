#pragma once

#include <map>
#include <string>
#include <vector>

namespace nsbl {

// Kernel term B * s^(-alpha) * (t-s)^(-beta); admissible when
// alpha + beta < 1 and B > 0.
struct KernelTerm {
    double B;
    double alpha;
    double beta;
};

// One integral-inequality instance:
//   phi(t) <= A + sum_j B_j int_0^t s^(-alpha_j) (t-s)^(-beta_j) phi(s)^p ds
// p = 1 covers the singular/generalized Gronwall bounds; p > 1 with a single
// (0, kappa) term is the blow-up threshold mode.
struct IntegralInequalitySpec {
    double A = 0.0;
    std::vector<KernelTerm> terms;
    double horizon = 1.0;       // T
    double nonlinearity = 1.0;  // p
    void validate() const;
};

// Output of a bound engine. `constants` records every number used in the
// construction (eps, K_T, t_star, tau_star, envelope constants, ...);
// `window` is the interval on which the bound is asserted.
struct BoundResult {
    std::string mode;
    double bound = 0.0;
    std::map<std::string, double> constants;
    double window_begin = 0.0;
    double window_end = 0.0;  // exclusive
};

// phi <= A + B int_0^t (t-s)^(-kappa) phi ds on [0,T) implies
// phi <= K(T) A with the explicit construction
//   eps  = ((1-kappa) / (2B))^(1/(1-kappa))
//   K(T) = 2 exp(2 B eps^(-kappa) T).
BoundResult singular_gronwall_bound(double A, double B, double kappa, double T);

// Multi-kernel variant. Per term, the near-singularity mass
//   sup_t int_{t-eps}^{t} s^(-alpha) (t-s)^(-beta) ds = eps^(1-alpha-beta) Beta(1-alpha, 1-beta)
// is capped at 1/(2 n B_j), which fixes eps_j; a standard Gronwall pass then
// yields K(T) = 2 prod_j exp(2 B_j eps_j^(-beta_j) T^(1-alpha_j) / (1-alpha_j)).
// Reduces exactly to singular_gronwall_bound for a single (0, kappa) term.
BoundResult generalized_gronwall_bound(double A, const std::vector<KernelTerm>& terms, double T);

// w' <= K w^p, w(t0) = w0 > 0, p > 1: the comparison solution
//   v(t) = w0 (1 - K (p-1) w0^(p-1) (t - t0))^(-1/(p-1))
// blows up at t* = t0 + 1/(K (p-1) w0^(p-1)). If w is unbounded on [t0, Tf)
// then Tf >= t* and w(t) >= C (Tf - t)^(-1/(p-1)) with
// C = (1/(K (p-1)))^(1/(p-1)).
BoundResult ode_blowup_envelope(double w0, double K, double p, double t0 = 0.0);
// Comparison solution value at time t (throws past t*).
double ode_comparison_solution(double w0, double K, double p, double t0, double t);

// w(t) <= w(t0) + B int_{t0}^t (t-s)^(-kappa) w(s)^p ds, p > 1, kappa < 1:
// if w explodes at Tf then
//   Tf - t0 >= tau* = [ (1-kappa)(lam-1) / (lam^p B w0^(p-1)) ]^(1/(1-kappa)),
// optimal at lam = p/(p-1), and
//   w(t) > (p-1) ((1-kappa)/(B p^p))^(1/(p-1)) (Tf - t)^(-(1-kappa)/(p-1)).
BoundResult integral_blowup_threshold(double w0, double B, double p, double kappa,
                                      double t0 = 0.0);
// c(lam) from the same construction, for the lam-scan check.
double integral_threshold_c_of_lambda(double B, double p, double kappa, double lam);

struct PicardOptions {
    int grid_points = 10000;
    int max_iterations = 2000;
    double rel_tol = 1e-12;
    double divergence_cap = 1e12;
    // Grid points accumulate geometrically toward the horizon; the last node
    // sits at horizon * (1 - end_gap).
    double end_gap = 1e-6;
};

struct PicardResult {
    std::vector<double> times;
    std::vector<double> phi;
    bool converged = false;
    bool diverged = false;
    double divergence_time = 0.0;  // first grid time exceeding the cap
    int iterations = 0;
    double residual = 0.0;  // last sup change relative to A (or w0)
};

// Extremal phi for the spec via Picard iteration on a graded grid, with
// product integration of the weakly singular kernels (oracle fixture).
PicardResult picard_saturate(const IntegralInequalitySpec& spec, const PicardOptions& opt = {});

struct SaturationCheck {
    double max_ratio = 0.0;  // sup phi / bound (linear mode)
    bool pass = false;
    PicardResult picard;
    BoundResult bound;
};

// Linear mode (p = 1): verifies sup phi <= K(T) A on the grid.
// Nonlinear mode (p > 1, single kernel): verifies the Picard iterates stay
// finite until at least tau*.
SaturationCheck saturate_and_verify(const IntegralInequalitySpec& spec,
                                    const PicardOptions& opt = {});

}  // namespace nsbl
