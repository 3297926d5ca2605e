#include "nsbl/inequalities.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "nsbl/field_ops.hpp"
#include "nsbl/norms.hpp"
#include "nsbl/reduce.hpp"

namespace nsbl {

namespace {

inline double inv(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

[[noreturn]] void range_error(IneqId id, const std::string& constraint) {
    throw std::domain_error(to_string(id) + ": requires " + constraint);
}

// Quasi-norm (sum_i int |u_i|^q)^(1/q) without the q >= 1 guard; the
// weighted_l2 identity needs exponents 4/q < 1 when q > 4.
double quasi_lq(const ScalarField& f, double q) {
    if (q >= 1.0) return lq_norm(f, q);
    const ScalarField fp = to_physical(f);
    const auto& v = fp.samples();
    const double s =
        pairwise_sum(v.size(), [&](std::size_t i) { return std::pow(std::fabs(v[i]), q); });
    return std::pow(f.grid().cell_volume() * s, 1.0 / q);
}

double quasi_lq(const VectorField& f, double q) {
    if (q >= 1.0) return lq_norm(f, q);
    double s = 0.0;
    for (int c = 0; c < 3; ++c) {
        const auto& v = to_physical(f[c]).samples();
        s += pairwise_sum(v.size(), [&](std::size_t i) { return std::pow(std::fabs(v[i]), q); });
    }
    return std::pow(f.grid().cell_volume() * s, 1.0 / q);
}

template <class Field>
double h2_norm(const Field& f) {
    const double a = lq_norm(f, 2.0);
    const double b = dn_lq_norm(f, 1, 2.0);
    const double c = dn_lq_norm(f, 2, 2.0);
    return std::sqrt(a * a + b * b + c * c);
}

template <class Field>
void evaluate(const InequalitySpec& s, const Field& f, double& lhs, double& raw) {
    switch (s.id) {
        case IneqId::lq_interpolation:
            lhs = lq_norm(f, s.q);
            raw = std::pow(lq_norm(f, 2.0), s.exponent) * std::pow(lq_norm(f, s.r), 1.0 - s.exponent);
            break;
        case IneqId::gn_l3:
            lhs = lq_norm(f, 3.0);
            raw = std::sqrt(lq_norm(f, 2.0) * dn_lq_norm(f, 1, 2.0));
            break;
        case IneqId::sup_h2:
            lhs = lq_norm(f, kInfExponent);
            raw = h2_norm(f);
            break;
        case IneqId::jn_comparison: {
            const int m = static_cast<int>(s.r);
            const double jn = (s.n == 0) ? lq_norm(f, 2.0) : dn_lq_norm(f, s.n, 2.0);
            const double jm = dn_lq_norm(f, m, 2.0);
            const double j0 = lq_norm(f, 2.0);
            lhs = jn;
            raw = std::sqrt(jm * jm + j0 * j0);
            break;
        }
        case IneqId::sobolev_lq_grad:
            lhs = lq_norm(f, s.target_q);
            raw = dn_lq_norm(f, 1, s.q);
            break;
        case IneqId::gagliardo_sup_grad:
            lhs = lq_norm(f, kInfExponent);
            raw = std::pow(lq_norm(f, 2.0), 1.0 - s.exponent) *
                  std::pow(dn_lq_norm(f, 1, s.q), s.exponent);
            break;
        case IneqId::interp_l2_grad_l3:
            lhs = lq_norm(f, s.r);
            raw = std::pow(lq_norm(f, 2.0), 2.0 / s.r) *
                  std::pow(dn_lq_norm(f, 1, 3.0), 1.0 - 2.0 / s.r);
            break;
        case IneqId::weighted_l2:
            lhs = lq_norm(f, 2.0);
            raw = std::pow(quasi_lq(f, s.target_q), 1.0 - s.exponent) *
                  std::pow(dn_lq_norm(f, 1, 2.0), s.exponent);
            break;
        case IneqId::sobolev_d2:
            lhs = lq_norm(f, s.target_q);
            raw = dn_lq_norm(f, 2, s.q);
            break;
        case IneqId::gn_l2_grad:
            lhs = lq_norm(f, s.q);
            raw = std::pow(lq_norm(f, 2.0), 1.0 - s.exponent) *
                  std::pow(dn_lq_norm(f, 1, 2.0), s.exponent);
            break;
        case IneqId::gn_dn_family:
            lhs = lq_norm(f, s.q);
            raw = std::pow(lq_norm(f, 2.0), 1.0 - s.exponent) *
                  std::pow(dn_lq_norm(f, s.n, s.r), s.exponent);
            break;
    }
}

template <class Field>
CheckResult check_impl(const InequalitySpec& s, const Field& f) {
    CheckResult r;
    double lhs = 0.0, raw = 0.0;
    evaluate(s, f, lhs, raw);
    r.lhs = lhs;
    r.rhs = (s.known_constant > 0.0) ? s.known_constant * raw : raw;
    if (lhs == 0.0 && r.rhs == 0.0) {
        r.ratio = 0.0;  // 0 <= 0
    } else {
        r.ratio = lhs / r.rhs;
    }
    r.pass = r.ratio <= 1.0 + s.tolerance;
    r.fingerprint = field_fingerprint(f);
    return r;
}

template <class Field>
ConstantSurvey survey_impl(const InequalitySpec& s, const std::vector<Field>& ensemble) {
    if (ensemble.size() < 30)
        throw std::invalid_argument("constant_survey: ensemble must contain at least 30 fields");
    ConstantSurvey out;
    out.ratios.reserve(ensemble.size());
    for (const Field& f : ensemble) {
        double lhs = 0.0, raw = 0.0;
        evaluate(s, f, lhs, raw);
        const double ratio = (lhs == 0.0 && raw == 0.0) ? 0.0 : lhs / raw;
        out.ratios.push_back(ratio);
        out.max_ratio = std::max(out.max_ratio, ratio);
    }
    return out;
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::string to_string(IneqId id) {
    switch (id) {
        case IneqId::lq_interpolation: return "lq_interpolation";
        case IneqId::gn_l3: return "gn_l3";
        case IneqId::sup_h2: return "sup_h2";
        case IneqId::jn_comparison: return "jn_comparison";
        case IneqId::sobolev_lq_grad: return "sobolev_lq_grad";
        case IneqId::gagliardo_sup_grad: return "gagliardo_sup_grad";
        case IneqId::interp_l2_grad_l3: return "interp_l2_grad_l3";
        case IneqId::weighted_l2: return "weighted_l2";
        case IneqId::sobolev_d2: return "sobolev_d2";
        case IneqId::gn_l2_grad: return "gn_l2_grad";
        case IneqId::gn_dn_family: return "gn_dn_family";
    }
    return "unknown";
}

InequalitySpec exponents_for(IneqId id, double q, double r, int n) {
    InequalitySpec s;
    s.id = id;
    s.q = q;
    s.r = r;
    s.n = n;
    switch (id) {
        case IneqId::lq_interpolation: {
            if (!(q >= 2.0)) range_error(id, "2 <= q");
            if (!(r >= q)) range_error(id, "q <= r <= inf");
            // 1/q = lam/2 + (1-lam)/r
            const double lam = (inv(q) - inv(r)) / (0.5 - inv(r));
            if (!(lam >= 0.0 && lam <= 1.0)) range_error(id, "interpolation exponent in [0,1]");
            s.exponent = lam;
            s.known_constant = 1.0;
            s.tolerance = 1e-10;
            break;
        }
        case IneqId::gn_l3:
            s.exponent = 0.5;
            s.known_constant = 0.59;
            s.tolerance = 1e-3;  // |v|^3 quadrature limited
            break;
        case IneqId::sup_h2:
            s.tolerance = 1e-3;
            break;
        case IneqId::jn_comparison:
            if (n < 0) range_error(id, "n >= 0");
            if (!(r > n && r == std::floor(r))) range_error(id, "integer m > n (passed in r)");
            s.tolerance = 1e-3;
            break;
        case IneqId::sobolev_lq_grad:
            if (!(q >= 1.5 && q < 3.0)) range_error(id, "3/2 <= q < 3");
            s.target_q = 3.0 * q / (3.0 - q);
            s.tolerance = 1e-3;
            break;
        case IneqId::gagliardo_sup_grad:
            if (!(q > 3.0)) range_error(id, "3 < q <= inf");
            s.exponent = std::isinf(q) ? 0.6 : 3.0 * q / (5.0 * q - 6.0);
            s.tolerance = 1e-3;
            break;
        case IneqId::interp_l2_grad_l3:
            if (!(r >= 3.0) || std::isinf(r)) range_error(id, "3 <= r < inf");
            s.exponent = 1.0 - 2.0 / r;  // exponent on the gradient factor
            s.tolerance = 1e-3;
            break;
        case IneqId::weighted_l2:
            if (!(q >= 2.0) || std::isinf(q)) range_error(id, "2 <= q < inf");
            s.exponent = (3.0 * q - 6.0) / (3.0 * q - 2.0);
            s.target_q = 4.0 / q;
            s.tolerance = 1e-3;
            break;
        case IneqId::sobolev_d2:
            if (!(q >= 1.0 && q < 1.5)) range_error(id, "1 <= q < 3/2");
            s.target_q = 3.0 * q / (3.0 - 2.0 * q);
            s.tolerance = 1e-3;
            break;
        case IneqId::gn_l2_grad:
            if (!(q >= 2.0 && q <= 6.0)) range_error(id, "2 <= q <= 6");
            s.exponent = 1.5 * (q - 2.0) / q;
            s.tolerance = 1e-3;
            break;
        case IneqId::gn_dn_family: {
            if (n < 2) range_error(id, "n >= 2");
            if (!(q >= 3.0)) range_error(id, "3 <= q <= inf");
            const double rmin = std::max(1.0, 3.0 / (n + 3.0 * inv(q)));
            if (!(r >= rmin)) range_error(id, "r >= max(1, 3q/(nq+3))");
            if (n == 2 && std::isinf(q) && r == 1.5)
                range_error(id, "(n,q,r) != (2,inf,3/2)");
            if (n == 3 && std::isinf(q) && r == 1.0)
                range_error(id, "(n,q,r) != (3,inf,1)");
            s.exponent = (0.5 - inv(q)) / (0.5 + n / 3.0 - inv(r));
            if (!(s.exponent > 0.0 && s.exponent <= 1.0))
                range_error(id, "theta in (0,1]");
            s.tolerance = 1e-3;
            break;
        }
    }
    return s;
}

CheckResult check(const InequalitySpec& spec, const ScalarField& f) { return check_impl(spec, f); }
CheckResult check(const InequalitySpec& spec, const VectorField& f) { return check_impl(spec, f); }

ConstantSurvey constant_survey(const InequalitySpec& spec, const std::vector<ScalarField>& ensemble) {
    return survey_impl(spec, ensemble);
}
ConstantSurvey constant_survey(const InequalitySpec& spec, const std::vector<VectorField>& ensemble) {
    return survey_impl(spec, ensemble);
}

std::uint64_t field_fingerprint(const ScalarField& f) {
    std::uint64_t h = 1469598103934665603ULL;
    const int n = f.grid().n;
    h = fnv1a(&n, sizeof(n), h);
    h = fnv1a(&f.grid().length, sizeof(double), h);
    if (f.rep() == Rep::physical) {
        h = fnv1a(f.samples().data(), f.samples().size() * sizeof(double), h);
    } else {
        h = fnv1a(f.coefs().data(), f.coefs().size() * sizeof(cplx), h);
    }
    return h;
}

std::uint64_t field_fingerprint(const VectorField& f) {
    std::uint64_t h = 1469598103934665603ULL;
    for (int c = 0; c < 3; ++c) {
        const std::uint64_t hc = field_fingerprint(f[c]);
        h = fnv1a(&hc, sizeof(hc), h);
    }
    return h;
}

}  // namespace nsbl
