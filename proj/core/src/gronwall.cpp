#include "nsbl/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsbl {

namespace {

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

void check_kernel(const KernelTerm& k) {
    if (!(k.B > 0.0)) throw std::invalid_argument("gronwall: kernel coefficient B must be > 0");
    if (k.alpha < 0.0 || k.beta < 0.0)
        throw std::invalid_argument("gronwall: kernel exponents must be >= 0");
    if (!(k.alpha + k.beta < 1.0)) throw std::invalid_argument("gronwall: alpha+beta>=1");
}

}  // namespace

void IntegralInequalitySpec::validate() const {
    if (A < 0.0) throw std::invalid_argument("gronwall: A must be >= 0");
    if (!(horizon > 0.0)) throw std::invalid_argument("gronwall: horizon must be > 0");
    if (terms.empty()) throw std::invalid_argument("gronwall: at least one kernel term");
    for (const KernelTerm& k : terms) check_kernel(k);
    if (nonlinearity < 1.0) throw std::invalid_argument("gronwall: nonlinearity must be >= 1");
    if (nonlinearity > 1.0 && terms.size() != 1)
        throw std::invalid_argument("gronwall: nonlinear mode takes a single kernel term");
}

BoundResult singular_gronwall_bound(double A, double B, double kappa, double T) {
    if (A < 0.0) throw std::invalid_argument("singular_gronwall_bound: A >= 0 required");
    if (!(B > 0.0)) throw std::invalid_argument("singular_gronwall_bound: B > 0 required");
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::invalid_argument("singular_gronwall_bound: 0 < kappa < 1 required");
    if (!(T > 0.0)) throw std::invalid_argument("singular_gronwall_bound: T > 0 required");
    const double eps = std::pow((1.0 - kappa) / (2.0 * B), 1.0 / (1.0 - kappa));
    const double KT = 2.0 * std::exp(2.0 * B * std::pow(eps, -kappa) * T);
    BoundResult r;
    r.mode = "singular-gronwall";
    r.bound = KT * A;
    r.constants["eps"] = eps;
    r.constants["K_T"] = KT;
    r.window_begin = 0.0;
    r.window_end = T;
    return r;
}

BoundResult generalized_gronwall_bound(double A, const std::vector<KernelTerm>& terms, double T) {
    if (A < 0.0) throw std::invalid_argument("generalized_gronwall_bound: A >= 0 required");
    if (!(T > 0.0)) throw std::invalid_argument("generalized_gronwall_bound: T > 0 required");
    if (terms.empty()) throw std::invalid_argument("generalized_gronwall_bound: no kernel terms");
    for (const KernelTerm& k : terms) check_kernel(k);

    const double n = static_cast<double>(terms.size());
    BoundResult r;
    r.mode = "generalized-gronwall";
    double log_factor = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        const KernelTerm& k = terms[j];
        const double gamma = 1.0 - k.alpha - k.beta;
        // Near-singularity mass: sup over t of the last-eps slice equals
        // eps^gamma * Beta(1-alpha, 1-beta); cap it at 1/(2 n B_j).
        const double Bfun = beta_function(1.0 - k.alpha, 1.0 - k.beta);
        const double eps = std::pow(1.0 / (2.0 * n * k.B * Bfun), 1.0 / gamma);
        const double factor =
            2.0 * k.B * std::pow(eps, -k.beta) * std::pow(T, 1.0 - k.alpha) / (1.0 - k.alpha);
        log_factor += factor;
        r.constants["eps_" + std::to_string(j)] = eps;
    }
    const double KT = 2.0 * std::exp(log_factor);
    r.bound = KT * A;
    r.constants["K_T"] = KT;
    r.window_begin = 0.0;
    r.window_end = T;
    return r;
}

double ode_comparison_solution(double w0, double K, double p, double t0, double t) {
    const double denom = 1.0 - K * (p - 1.0) * std::pow(w0, p - 1.0) * (t - t0);
    if (!(denom > 0.0)) throw std::domain_error("ode_comparison_solution: t beyond t*");
    return w0 * std::pow(denom, -1.0 / (p - 1.0));
}

BoundResult ode_blowup_envelope(double w0, double K, double p, double t0) {
    if (!(w0 > 0.0)) throw std::invalid_argument("ode_blowup_envelope: w0 > 0 required");
    if (!(K > 0.0)) throw std::invalid_argument("ode_blowup_envelope: K > 0 required");
    if (!(p > 1.0)) throw std::invalid_argument("ode_blowup_envelope: alpha > 1 required");
    const double t_star = t0 + 1.0 / (K * (p - 1.0) * std::pow(w0, p - 1.0));
    const double envelope_constant = std::pow(1.0 / (K * (p - 1.0)), 1.0 / (p - 1.0));
    BoundResult r;
    r.mode = "ode-blowup-envelope";
    r.bound = envelope_constant;
    r.constants["t_star"] = t_star;
    r.constants["envelope_constant"] = envelope_constant;
    r.constants["exponent"] = 1.0 / (p - 1.0);
    r.window_begin = t0;
    r.window_end = t_star;
    return r;
}

double integral_threshold_c_of_lambda(double B, double p, double kappa, double lam) {
    if (!(lam > 1.0)) throw std::invalid_argument("c_of_lambda: lambda > 1 required");
    return std::pow((1.0 - kappa) / B, 1.0 / (p - 1.0)) *
           std::pow((lam - 1.0) / std::pow(lam, p), 1.0 / (p - 1.0));
}

BoundResult integral_blowup_threshold(double w0, double B, double p, double kappa, double t0) {
    if (!(w0 > 0.0)) throw std::invalid_argument("integral_blowup_threshold: w0 > 0 required");
    if (!(B > 0.0)) throw std::invalid_argument("integral_blowup_threshold: B > 0 required");
    if (!(p > 1.0)) throw std::invalid_argument("integral_blowup_threshold: alpha > 1 required");
    if (!(kappa < 1.0)) throw std::invalid_argument("integral_blowup_threshold: kappa < 1 required");
    const double lam = p / (p - 1.0);  // maximizes c(lam)
    const double tau_star =
        std::pow((1.0 - kappa) * (lam - 1.0) / (std::pow(lam, p) * B * std::pow(w0, p - 1.0)),
                 1.0 / (1.0 - kappa));
    const double envelope_constant =
        (p - 1.0) * std::pow((1.0 - kappa) / (B * std::pow(p, p)), 1.0 / (p - 1.0));
    BoundResult r;
    r.mode = "integral-blowup-threshold";
    r.bound = envelope_constant;
    r.constants["lambda"] = lam;
    r.constants["tau_star"] = tau_star;
    r.constants["envelope_constant"] = envelope_constant;
    r.constants["exponent"] = (1.0 - kappa) / (p - 1.0);
    r.window_begin = t0;
    r.window_end = t0 + tau_star;
    return r;
}

namespace {

// Geometric grid: node i sits at T (1 - rho^i) with rho^N = end_gap, so
// spacing contracts toward the horizon.
std::vector<double> graded_grid(double T, int N, double end_gap) {
    std::vector<double> t(N + 1);
    const double rho = std::pow(end_gap, 1.0 / N);
    double d = T;
    t[0] = 0.0;
    for (int i = 1; i <= N; ++i) {
        d *= rho;
        t[i] = T - d;
    }
    return t;
}

// Exact integral of (t-s)^(-beta) * (linear interpolant of w) over one
// sub-interval [s0, s1] with s1 <= t.
inline double product_integral(double t, double beta, double s0, double s1, double w0, double w1) {
    // w(s) = a + b s on the interval
    const double b = (w1 - w0) / (s1 - s0);
    const double a = w0 - b * s0;
    const double tau0 = t - s1;  // smaller
    const double tau1 = t - s0;  // larger
    const double om = 1.0 - beta;
    const double p1 = (std::pow(tau1, om) - std::pow(tau0, om)) / om;
    const double p2 = (std::pow(tau1, om + 1.0) - std::pow(tau0, om + 1.0)) / (om + 1.0);
    // int (a + b s)(t-s)^(-beta) ds = (a + b t) p1 - b p2
    return (a + b * t) * p1 - b * p2;
}

// Lower-triangular weights for phi |-> int_0^{t_n} (t_n - s)^(-beta) phi ds
// with piecewise-linear phi: row n holds w[n][0..n]. Stored flat.
class VolterraWeights {
public:
    VolterraWeights(const std::vector<double>& t, double beta) : t_(t) {
        const std::size_t N = t.size();
        offs_.resize(N + 1);
        for (std::size_t n = 0; n <= N; ++n) offs_[n] = n * (n + 1) / 2;
        w_.assign(offs_[N], 0.0);
        const double om = 1.0 - beta;
        for (std::size_t n = 1; n < N; ++n) {
            const double tn = t_[n];
            // Contribution of interval [t_{i}, t_{i+1}] splits onto nodes i
            // and i+1 through the linear interpolant.
            double pow_prev = std::pow(tn - t_[0], om);
            for (std::size_t i = 0; i + 1 <= n; ++i) {
                const double s0 = t_[i], s1 = t_[i + 1];
                const double tau0 = tn - s1, tau1 = tn - s0;
                const double pow_next = std::pow(tau0, om);
                const double p1 = (pow_prev - pow_next) / om;
                const double p2 =
                    (std::pow(tau1, om + 1.0) - std::pow(tau0, om + 1.0)) / (om + 1.0);
                pow_prev = pow_next;
                // phi(s) = phi_i (s1-s)/(s1-s0) + phi_{i+1} (s-s0)/(s1-s0)
                const double ds = s1 - s0;
                // int (s1 - s)(tn-s)^(-b) = (s1 - tn) p1 + p2
                // int (s - s0)(tn-s)^(-b) = (tn - s0) p1 - p2
                w(n, i) += ((s1 - tn) * p1 + p2) / ds;
                w(n, i + 1) += ((tn - s0) * p1 - p2) / ds;
            }
        }
    }
    double& w(std::size_t n, std::size_t i) { return w_[offs_[n] + i]; }
    double row_apply(std::size_t n, const std::vector<double>& phi) const {
        const double* row = &w_[offs_[n]];
        double acc = 0.0;
        for (std::size_t i = 0; i <= n; ++i) acc += row[i] * phi[i];
        return acc;
    }

private:
    std::vector<double> t_;
    std::vector<std::size_t> offs_;
    std::vector<double> w_;
};

}  // namespace

PicardResult picard_saturate(const IntegralInequalitySpec& spec, const PicardOptions& opt) {
    spec.validate();
    PicardResult res;
    res.times = graded_grid(spec.horizon, opt.grid_points, opt.end_gap);
    const std::size_t N = res.times.size();
    const double p = spec.nonlinearity;
    const double base = (p > 1.0) ? spec.A : std::max(spec.A, 1.0);

    // Piecewise-linear product-integration weights per kernel term. For terms
    // with alpha > 0 the s^(-alpha) factor is folded into the integrand by
    // product-integrating (t-s)^(-beta) against s^(-alpha) phi(s); the value
    // at s = 0 uses the first midpoint (phi is continuous, s^(-alpha) phi is
    // integrable).
    std::vector<VolterraWeights> weights;
    weights.reserve(spec.terms.size());
    for (const KernelTerm& k : spec.terms) weights.emplace_back(res.times, k.beta);

    std::vector<double> phi(N, spec.A), next(N), g(N);
    std::size_t prev_div_node = N;
    int div_stable = 0;
    for (int it = 0; it < opt.max_iterations; ++it) {
        ++res.iterations;
        for (std::size_t n = 0; n < N; ++n) next[n] = spec.A;
        for (std::size_t j = 0; j < spec.terms.size(); ++j) {
            const KernelTerm& k = spec.terms[j];
            for (std::size_t i = 0; i < N; ++i) {
                const double ph = (p == 1.0) ? phi[i] : std::pow(phi[i], p);
                if (k.alpha == 0.0) {
                    g[i] = ph;
                } else {
                    // s^(-alpha) at the origin: evaluate at the first
                    // midpoint (phi is continuous, the product integrable).
                    const double s = (i == 0) ? 0.5 * res.times[1] : res.times[i];
                    g[i] = std::pow(s, -k.alpha) * ph;
                }
            }
            for (std::size_t n = 1; n < N; ++n) next[n] += k.B * weights[j].row_apply(n, g);
        }
        // Clamp at the cap so diverging iterates stay finite; the first
        // clamped node marks the divergence time and migrates toward the true
        // blow-up time as iterations proceed.
        std::size_t div_node = N;
        double change = 0.0;
        for (std::size_t n = 0; n < N; ++n) {
            if (!std::isfinite(next[n]) || next[n] > opt.divergence_cap) {
                next[n] = opt.divergence_cap;
                if (div_node == N) div_node = n;
            }
            change = std::max(change, std::fabs(next[n] - phi[n]));
        }
        phi.swap(next);
        res.residual = change / base;
        if (div_node < N) {
            res.diverged = true;
            res.divergence_time = res.times[div_node];
            div_stable = (div_node == prev_div_node) ? div_stable + 1 : 0;
            prev_div_node = div_node;
            if (div_stable >= 20) break;
        } else if (res.residual < opt.rel_tol) {
            res.converged = true;
            break;
        }
    }
    res.phi = phi;
    return res;
}

SaturationCheck saturate_and_verify(const IntegralInequalitySpec& spec, const PicardOptions& opt) {
    spec.validate();
    SaturationCheck out;
    out.picard = picard_saturate(spec, opt);

    if (spec.nonlinearity == 1.0) {
        out.bound = (spec.terms.size() == 1 && spec.terms[0].alpha == 0.0)
                        ? singular_gronwall_bound(std::max(spec.A, 0.0),
                                                  spec.terms[0].B, spec.terms[0].beta, spec.horizon)
                        : generalized_gronwall_bound(spec.A, spec.terms, spec.horizon);
        if (!out.picard.converged && !out.picard.diverged)
            throw std::runtime_error("saturate_and_verify: Picard iteration did not converge, residual " +
                                     std::to_string(out.picard.residual));
        double sup = 0.0;
        for (double v : out.picard.phi) sup = std::max(sup, v);
        if (spec.A == 0.0) {
            out.max_ratio = (sup == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
        } else {
            out.max_ratio = sup / out.bound.bound;
        }
        out.pass = out.max_ratio < 1.0 || (spec.A == 0.0 && sup == 0.0);
    } else {
        const KernelTerm& k = spec.terms[0];
        out.bound = integral_blowup_threshold(spec.A, k.B, spec.nonlinearity, k.beta);
        const double tau_star = out.bound.constants.at("tau_star");
        if (out.picard.diverged) {
            out.max_ratio = tau_star / out.picard.divergence_time;
            out.pass = out.picard.divergence_time >= tau_star;
        } else {
            // No divergence on the grid: blow-up, if any, is past the horizon.
            out.max_ratio = tau_star / spec.horizon;
            out.pass = spec.horizon >= tau_star;
        }
    }
    return out;
}

}  // namespace nsbl
