#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsbl/field.hpp"

namespace nsbl {

// Functional inequalities with the exact exponent bookkeeping used by the
// monitors. Checks run on compactly supported (bump-modulated) fields so that
// whole-space constants apply on the torus.
enum class IneqId {
    lq_interpolation,    // ||u||_q <= ||u||_2^lam ||u||_r^(1-lam)      (constant-free)
    gn_l3,               // ||v||_3 <= Gamma ||v||^(1/2) ||Dv||^(1/2),  Gamma = 0.59
    sup_h2,              // ||v||_inf <= C ||v||_H2
    jn_comparison,       // J_n <= C (J_m^2 + J_0^2)^(1/2), m > n
    sobolev_lq_grad,     // ||u||_{3q/(3-q)} <= K ||grad u||_q, 3/2 <= q < 3
    gagliardo_sup_grad,  // ||u||_inf <= K ||u||_2^(1-th) ||grad u||_q^th, th = 3q/(5q-6)
    interp_l2_grad_l3,   // ||u||_r <= K ||u||_2^(2/r) ||grad u||_3^(1-2/r), 3 <= r < inf
    weighted_l2,         // ||v||_2 <= K ||v||_{4/q}^(1-del) ||grad v||_2^del, del = (3q-6)/(3q-2)
    sobolev_d2,          // ||u||_{3q/(3-2q)} <= K ||D2 u||_q, 1 <= q < 3/2
    gn_l2_grad,          // ||u||_q <= K ||u||^(1-th) ||Du||^th, th = (3/2)(q-2)/q, 2 <= q <= 6
    gn_dn_family,        // ||u||_q <= K ||u||_2^(1-th) ||D^n u||_r^th, n >= 2
};

std::string to_string(IneqId id);

struct InequalitySpec {
    IneqId id;
    double q = 0.0;
    double r = 0.0;
    int n = 0;
    double exponent = 0.0;   // the lambda / theta / delta of the identity
    double target_q = 0.0;   // lhs exponent (r(q) for the Sobolev ids)
    double known_constant = 0.0;  // 0 = measured mode
    double tolerance = 1e-10;
};

struct CheckResult {
    double lhs = 0.0;
    double rhs = 0.0;   // includes the known constant when present
    double ratio = 0.0; // lhs / rhs
    bool pass = false;  // ratio <= 1 + tolerance
    std::uint64_t fingerprint = 0;
};

// Fills the spec, validating parameters against each identity's stated range
// (named range errors on violation, std::domain_error).
InequalitySpec exponents_for(IneqId id, double q = 0.0, double r = 0.0, int n = 0);

CheckResult check(const InequalitySpec& spec, const ScalarField& f);
CheckResult check(const InequalitySpec& spec, const VectorField& f);

struct ConstantSurvey {
    double max_ratio = 0.0;
    std::vector<double> ratios;
};

// Max observed lhs/raw-rhs over an ensemble (>= 30 fields required).
ConstantSurvey constant_survey(const InequalitySpec& spec, const std::vector<ScalarField>& ensemble);
ConstantSurvey constant_survey(const InequalitySpec& spec, const std::vector<VectorField>& ensemble);

std::uint64_t field_fingerprint(const ScalarField& f);
std::uint64_t field_fingerprint(const VectorField& f);

}  // namespace nsbl
