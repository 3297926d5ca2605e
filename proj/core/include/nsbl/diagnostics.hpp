#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsbl/field.hpp"
#include "nsbl/norms.hpp"

namespace nsbl {

// Time integrand ||u||_q^r; admissible for regularity when 2/r + 3/q <= 1.
struct ProdiSerrinPair {
    double q;
    double r;
    bool admissible() const;
};

// Norm-ratio monitor ||D^a u||_p / ||D^b u||_q.
struct RatioPair {
    int num_order = 0;
    double num_q = 0.0;
    int den_order = 0;
    double den_q = 0.0;
};

struct RecordOptions {
    std::vector<int> orders{0, 1, 2, 3};
    std::vector<double> exponents{1.0, 1.5, 2.0, 3.0, 4.0, 6.0, kInfExponent};
    std::vector<ProdiSerrinPair> prodi_serrin{{kInfExponent, 2.0}, {4.0, 8.0}, {6.0, 4.0}};
    std::vector<RatioPair> ratios{{0, kInfExponent, 0, 4.0}, {0, 6.0, 0, 2.0}};
    double h_exponent = 4.0;  // the q in the h(t) monitor
};

// Everything monitored at one time sample. Accumulators integrate by the
// trapezoidal rule from the previous record; integrand_* holds the current
// integrand values so the chain can continue.
struct DiagnosticRecord {
    double time = 0.0;
    NormTable norms;  // velocity, (order, exponent) lattice

    std::array<double, 3> omega_comp_l1{};  // per-component L1 of vorticity
    double omega_l1 = 0.0;
    double omega_l2 = 0.0;
    double omega_linf = 0.0;

    double p_l2 = 0.0;
    double p_linf = 0.0;
    double pressure_ratio_r2 = 0.0;  // ||p||_2 / ||u||_4^2

    double integrand_dissipation = 0.0;  // ||Du||^2
    double integrand_bkm = 0.0;          // ||omega||_inf
    std::vector<double> integrand_ps;    // ||u||_q^r per pair
    double integrand_triple = 0.0;       // sum_i int |u_i| |grad u_i|^2 dx

    double acc_dissipation = 0.0;
    double acc_bkm = 0.0;
    std::vector<double> acc_ps;
    double acc_triple = 0.0;

    double prod_l2_h1 = 0.0;        // ||u|| ||Du||
    double h_monitor = 0.0;         // (||u||_inf^q / ||u||_q^q)(||u||_3 / ||u||_inf^2)
    double smoothing_monitor = 0.0; // t^(3/4) ||u||_inf
    std::vector<double> ratio_values;  // aligned with options.ratios; NaN when 0/0

    double divergence_sup = 0.0;  // coefficient-sum bound on sup |div u|
    bool breakdown = false;
};

DiagnosticRecord record(const VectorField& u, const ScalarField& pressure, double time,
                        const DiagnosticRecord* prev, const RecordOptions& opts);

struct Snapshot {
    double time;
    VectorField u;  // spectral
};

struct Trajectory {
    std::vector<DiagnosticRecord> records;
    std::vector<Snapshot> snapshots;
    RecordOptions options;

    bool breakdown = false;
    double breakdown_time = 0.0;
    std::string breakdown_reason;

    // Initial-state quantities the trajectory-level checks compare against.
    double initial_l2 = 0.0;        // ||f||
    double initial_h1 = 0.0;        // ||Df||
    double initial_omega_l1 = 0.0;
    double initial_omega_l2 = 0.0;
    std::array<double, 3> initial_omega_comp_l1{};
};

// ---------------------------------------------------------------------------
// Trajectory-level reports

struct EnergyBalanceReport {
    std::vector<double> residuals;   // per record, relative to E(0)
    double max_residual = 0.0;
    double dissipation_final = 0.0;  // accumulator at the last record
    double dissipation_budget = 0.0; // 0.5 ||f||^2
    bool dissipation_ok = false;
};
EnergyBalanceReport energy_balance(const Trajectory& traj);

struct EnstrophyInequalityReport {
    std::vector<double> times;       // interior records
    std::vector<double> lhs;         // centered d/dt ||Du||^2
    std::vector<double> rhs;         // K ||Du||^6 + differencing tolerance
    std::vector<bool> pass;          // with K = 1/32
    std::vector<bool> pass_sharp;    // with K = 1/(16 pi^2)
    int violations = 0;
    int violations_sharp = 0;
};
EnstrophyInequalityReport enstrophy_inequality(const Trajectory& traj);

enum class CertStatus { fired, not_fired, inapplicable };
std::string to_string(CertStatus s);

struct Certificate {
    std::string id;
    CertStatus status = CertStatus::inapplicable;
    double firing_time = 0.0;
    std::map<std::string, double> values;
    std::string detail;
};

struct CertificateReport {
    std::vector<Certificate> items;
    const Certificate* find(const std::string& id) const;
};

struct CertificateConfig {
    std::optional<double> eta3;        // small-data L3 threshold, if known
    std::map<double, double> eta_q;    // q -> eta_q thresholds, if known
};

// Contrapositives of the necessary blow-up conditions:
//  - "l2h1-product": fires at the first record with ||u|| ||Du|| < 4 pi sqrt(2)
//  - "regularity-horizon": fires once t exceeds ||f||^4 / (128 pi^2) without
//    breakdown
//  - "smooth-window": a priori interval [0, 8 pi^2 ||Df||^-4] of guaranteed
//    smoothness (always fires at t = 0, value recorded)
//  - "small-l3" / "small-lq-q*": threshold criteria, inapplicable unless the
//    corresponding eta is configured
CertificateReport certificates(const Trajectory& traj, const CertificateConfig& cfg = {});

struct BkmProdiSerrinReport {
    std::vector<double> times;
    std::vector<double> bkm;                       // running integral of ||omega||_inf
    std::vector<std::vector<double>> ps;           // [pair][record]
    std::vector<bool> admissible;                  // per pair
    std::vector<double> vorticity_bound_ratio;     // ||omega(t)|| / (||omega(0)|| e^(sqrt3 * bkm))
    bool vorticity_bound_holds = true;             // exponential bound pointwise
};
BkmProdiSerrinReport bkm_and_prodi_serrin(const Trajectory& traj);

struct VorticityL1Report {
    std::vector<double> times;
    std::array<double, 3> comp_bound{};  // ||omega_i(0)||_L1 + 0.5 ||u(0)||^2
    double total_bound = 0.0;            // ||omega(0)||_L1 + (sqrt3/2) ||u(0)||^2
    std::vector<std::array<double, 3>> comp_l1;
    std::vector<double> total_l1;
    bool all_pass = true;
};
VorticityL1Report vorticity_l1(const Trajectory& traj);

// ---------------------------------------------------------------------------
// Blow-up rate envelopes and fits

namespace rate {
// Lower-bound exponents for c (T-t)^(-exponent) envelopes.
double kappa_u(double q);         // ||u||_q: (q-3)/(2q), 1/2 at q = inf
double kappa_du_low(double q);    // ||Du||_q, 3/2 <= q < 3: (q - 3/2)/q
double kappa_du_high(double q);   // ||Du||_q, 3 < q <= inf: (5q-6)/(6q)
double kappa_d2u(double q);       // ||D^2 u||_q, 1 <= q < 3/2: (3/2)(q-1)/q
double gamma_ratio(double q, double r);  // ((r-3)/(r-2)) (r-q)/(qr)
double gamma_grad_ratio(double q);       // (6-q)/(8q)
double lambda_ratio(double q, double r); // 2 (r/q - 1)/(r-2)
double kappa_kernel(double q);           // 3/(2q) + 1/2
}  // namespace rate

struct Envelope {
    int order = 0;
    double q = 0.0;
    double exponent = 0.0;
    double constant = 1.0;
    bool constant_known = false;  // true only where an explicit value exists
    double T_candidate = 0.0;
    double operator()(double t) const;
};

// Hypothesis-mode overlay: if blow-up happened at T_candidate, the (order, q)
// norm must exceed this curve. Out-of-range (order, q) throws.
Envelope envelope_for(int order, double q, double T_candidate);

struct RateFit {
    bool accepted = false;
    std::string reject_reason;
    double kappa_hat = 0.0;
    double T_hat = 0.0;
    double residual = 0.0;
    double kappa_ref = 0.0;
};

// Least-squares fit of log(value) = -kappa log(T - t) + c over a monotone
// increasing window (>= 10 points), T fitted jointly by line search.
RateFit fit_rate(std::span<const double> times, std::span<const double> values,
                 double kappa_ref = 0.0);

struct RatioMonitorReport {
    std::vector<double> times;
    std::vector<std::vector<double>> series;  // [pair][record]; NaN for 0/0
    std::vector<double> h_series;
    std::vector<bool> growth_candidate;       // per pair, windowed max tracking
    bool h_growth_candidate = false;
};
RatioMonitorReport ratio_monitors(const Trajectory& traj);

}  // namespace nsbl
